"""Tests for photon_fabric."""
