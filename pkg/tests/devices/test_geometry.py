"""Tests for photon_fabric.devices.geometry."""
from contextlib import nullcontext as does_not_raise
from logging import WARNING
from typing import Any, ContextManager

import numpy as np
from pydantic import ValidationError
from pytest import LogCaptureFixture, approx, mark, raises

from photon_fabric.common.enums import DirectionEnum, PortRoleEnum, ScaleEnum
from photon_fabric.config.defaults import DESK_PITCH, DESK_REGION, EPS_SILICA, FULL_PITCH, FULL_REGION, LAMBDA_CENTER
from photon_fabric.devices import geometry


@mark.parametrize(
    "options, expectation",
    [
        ({}, does_not_raise()),
        ({"region": 4e-6, "rail_spacing": 2e-6, "pixel_pitch": 40e-9, "dx": 40e-9}, does_not_raise()),
        ({"region": 4e-6, "rail_spacing": 3.6e-6, "pixel_pitch": 40e-9, "dx": 40e-9}, raises(ValidationError)),
        ({"region": 4.01e-6, "rail_spacing": 2e-6, "pixel_pitch": 40e-9, "dx": 40e-9}, raises(ValidationError)),
        ({"region": 4e-6, "rail_spacing": 2e-6, "pixel_pitch": 30e-9, "dx": 20e-9}, raises(ValidationError)),
        ({"pml_cells": 4}, raises(ValidationError)),
    ],
)
def test_devicegeometry(options: dict[str, Any], expectation: ContextManager[str]) -> None:
    with expectation:
        assert geometry.DeviceGeometry(**options).cells(1e-6) > 0  # nosec: B101


def test_preset(caplog: LogCaptureFixture) -> None:
    """Tests for photon_fabric.devices.geometry.preset."""
    caplog.set_level(WARNING)
    desk = geometry.preset(ScaleEnum.DESK)
    assert (desk.region, desk.pixel_pitch, desk.dx) == (DESK_REGION, DESK_PITCH, DESK_PITCH)  # nosec: B101
    assert not caplog.records  # nosec: B101

    full = geometry.preset(ScaleEnum.FULL)
    assert (full.region, full.pixel_pitch) == (FULL_REGION, FULL_PITCH)  # nosec: B101
    assert "Full-scale" in caplog.text  # nosec: B101


@mark.parametrize(
    "low, high, expected",
    [
        (0.5, 2.25, [0.5, 1.0, 0.25, 0.0]),
        (0.0, 4.0, [1.0, 1.0, 1.0, 1.0]),
        (-1.0, 0.0, [0.0, 0.0, 0.0, 0.0]),
        (1.2, 1.7, [0.0, 0.5, 0.0, 0.0]),
    ],
)
def test_fill_fraction(low: float, high: float, expected: list[float]) -> None:
    assert geometry.fill_fraction(cells=4, dx=1.0, low=low, high=high).tolist() == approx(expected)  # nosec: B101


def test_layout_device(tiny_layout: geometry.DeviceLayout) -> None:
    """Tests for photon_fabric.devices.geometry.layout_device."""
    grid = tiny_layout.grid
    assert (grid.nx, grid.ny) == (66, 56)  # nosec: B101
    assert grid.lambda0 == LAMBDA_CENTER  # nosec: B101
    assert tiny_layout.design_origin == (23, 18)  # nosec: B101
    assert tiny_layout.design_shape == (20, 20)  # nosec: B101
    assert np.allclose(grid.eps_r[23:43, 18:38], EPS_SILICA)  # nosec: B101
    assert tiny_layout.rail_centers == approx((1.28e-6, 2.08e-6))  # nosec: B101

    assert set(tiny_layout.cuts) == set(geometry.PORT_NAMES)  # nosec: B101
    for cut in tiny_layout.cuts.values():
        assert grid.is_interior(cut.x, cut.y_start, cut.y_stop)  # nosec: B101
    assert tiny_layout.cuts["bottom_in"].x == tiny_layout.cuts["top_in"].x == 13  # nosec: B101
    assert tiny_layout.cuts["top_out"].x == 52  # nosec: B101
    assert tiny_layout.cuts["top_back"].x < tiny_layout.cuts["top_in"].x  # nosec: B101
    assert tiny_layout.cuts["bottom_in"].y_stop <= tiny_layout.cuts["top_in"].y_start  # nosec: B101

    # the leads are uniform along x outside of the design region
    assert np.array_equal(grid.eps_r[0], grid.eps_r[65])  # nosec: B101
    assert grid.eps_r[0].max() > EPS_SILICA  # nosec: B101


@mark.parametrize(
    "name, direction",
    [("top_in", DirectionEnum.FORWARD), ("bottom_out", DirectionEnum.FORWARD), ("top_back", DirectionEnum.BACKWARD)],
)
def test_devicelayout_port(tiny_layout: geometry.DeviceLayout, name: str, direction: DirectionEnum) -> None:
    port = tiny_layout.port(name=name, wavelength=1548e-9, role=PortRoleEnum.MONITOR)
    assert port.mode.cut == tiny_layout.cuts[name]  # nosec: B101
    assert port.mode.direction == direction  # nosec: B101
    assert np.linalg.norm(port.mode.amplitude) == approx(1.0)  # nosec: B101
