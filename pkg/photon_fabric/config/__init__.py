"""Configuration handling for photon-fabric."""
from photon_fabric.config.settings import SystemSettings, UserSettings  # noqa: F401
