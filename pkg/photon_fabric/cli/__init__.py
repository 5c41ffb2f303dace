"""CLI handling for photon-fabric."""
from photon_fabric.cli.cli import photon_fabric  # noqa: F401
