"""Tests for photon_fabric.devices.metrics."""
from math import log10

import numpy as np
from pytest import approx, mark

from photon_fabric.config.defaults import DB_FLOOR
from photon_fabric.devices import metrics
from photon_fabric.devices.geometry import DeviceGeometry, DeviceLayout
from photon_fabric.devices.problems import make_crossover_problem
from photon_fabric.topopt.density import density_to_permittivity


@mark.parametrize("ratio, expected", [(1.0, 0.0), (0.1, -10.0), (1e-3, -30.0), (0.0, DB_FLOOR), (1e-25, DB_FLOOR)])
def test_to_db(ratio: float, expected: float) -> None:
    assert metrics.to_db(ratio) == approx(expected)  # nosec: B101


@mark.parametrize(
    "powers, intended, injected, insertion_loss, crosstalk",
    [
        ({"top_out": 0.45, "bottom_out": 0.45}, {"top_out", "bottom_out"}, 1.0, -10 * log10(0.9), DB_FLOOR),
        ({"bottom_out": 0.9, "top_out": 0.01}, {"bottom_out"}, 1.0, -10 * log10(0.9), -20.0),
        ({"top_out": 1.8, "bottom_out": 0.02}, {"top_out"}, 2.0, -10 * log10(0.9), -20.0),
        ({"top_out": 1.2}, {"top_out"}, 1.0, 0.0, DB_FLOOR),
        ({"top_out": 1.0, "bottom_out": -1e-3}, {"top_out"}, 1.0, 0.0, DB_FLOOR),
    ],
)
def test_metrics_from_powers(
    powers: dict[str, float],
    intended: set[str],
    injected: float,
    insertion_loss: float,
    crosstalk: float,
) -> None:
    """Tests for photon_fabric.devices.metrics.metrics_from_powers."""
    result = metrics.metrics_from_powers(powers=powers, intended=intended, injected=injected, condition="test")
    assert result.insertion_loss == approx(insertion_loss, abs=1e-9)  # nosec: B101
    assert result.crosstalk == approx(crosstalk)  # nosec: B101
    assert all(ratio >= 0.0 for ratio in result.ratios.values())  # nosec: B101


@mark.parametrize(
    "powers, intended, injected, insertion_loss, crosstalk",
    [
        ({"top_out": 0.466, "bottom_out": 0.490}, {"top_out", "bottom_out"}, 1.0, 0.195, DB_FLOOR),
        ({"top_out": 0.456, "bottom_out": 0.472}, {"top_out", "bottom_out"}, 1.0, 0.325, DB_FLOOR),
        ({"top_out": 1.840, "bottom_out": 0.042}, {"top_out"}, 2.0, 0.362, -16.78),
        ({"top_out": 0.003, "bottom_out": 1.882}, {"bottom_out"}, 2.0, 0.264, -28.24),
        ({"top_out": 0.003, "bottom_out": 0.959}, {"bottom_out"}, 1.0, 0.182, -25.23),
        ({"top_out": 0.911, "bottom_out": 0.001}, {"top_out"}, 1.0, 0.405, -30.0),
    ],
)
def test_metrics_from_powers_measured_devices(
    powers: dict[str, float],
    intended: set[str],
    injected: float,
    insertion_loss: float,
    crosstalk: float,
) -> None:
    result = metrics.metrics_from_powers(powers=powers, intended=intended, injected=injected)
    assert result.insertion_loss == approx(insertion_loss, abs=1e-3)  # nosec: B101
    assert result.crosstalk == approx(crosstalk, abs=1e-2)  # nosec: B101
    assert result.return_loss is None  # nosec: B101


@mark.parametrize(
    "reflected, injected, return_loss",
    [
        (None, 1.0, None),
        (0.01, 1.0, 20.0),
        (0.002, 2.0, 30.0),
        (0.0, 1.0, -DB_FLOOR),
        (-1e-12, 1.0, -DB_FLOOR),
    ],
)
def test_metrics_from_powers_return_loss(reflected: float | None, injected: float, return_loss: float | None) -> None:
    result = metrics.metrics_from_powers(
        powers={"top_out": injected}, intended={"top_out"}, injected=injected, reflected=reflected
    )
    if return_loss is None:
        assert result.return_loss is None  # nosec: B101
    else:
        assert result.return_loss == approx(return_loss)  # nosec: B101


def test_straight_density(tiny_layout: DeviceLayout) -> None:
    rho = metrics.straight_density(tiny_layout)
    assert rho.shape == (20, 20)  # nosec: B101
    assert rho.origin == tiny_layout.design_origin  # nosec: B101
    assert np.all(rho.rho == rho.rho[0])  # nosec: B101
    assert rho.rho[0].sum() == approx(10.0)  # nosec: B101
    assert np.allclose(tiny_layout.grid.eps_r[0, 18:38], density_to_permittivity(rho.rho[0]))  # nosec: B101


def test_evaluate_device_straight(tiny_geometry: DeviceGeometry, tiny_layout: DeviceLayout) -> None:
    """Tests for photon_fabric.devices.metrics.evaluate_device."""
    problem = make_crossover_problem(geometry=tiny_geometry)
    results = metrics.evaluate_device(rho=metrics.straight_density(tiny_layout), problem=problem)
    assert [result.condition for result in results] == ["top_input", "bottom_input"]  # nosec: B101
    for result, rail in zip(results, ("top_out", "bottom_out")):
        assert result.ratios[rail] > 0.8  # nosec: B101
        assert result.crosstalk > -1.0  # nosec: B101
        assert result.insertion_loss > 3.0  # nosec: B101
        assert result.return_loss is not None and result.return_loss > 20.0  # nosec: B101


def test_combiner_response_straight(tiny_layout: DeviceLayout) -> None:
    powers = metrics.combiner_response(rho=metrics.straight_density(tiny_layout), layout=tiny_layout)
    assert set(powers) == {"top_out", "bottom_out"}  # nosec: B101
    assert sum(powers.values()) == approx(2.0, abs=0.3)  # nosec: B101


def test_reciprocity_check_straight(tiny_layout: DeviceLayout) -> None:
    """Tests for photon_fabric.devices.metrics.reciprocity_check."""
    forward, returned = metrics.reciprocity_check(rho=metrics.straight_density(tiny_layout), layout=tiny_layout)
    assert forward > 0.8  # nosec: B101
    assert abs(returned - forward) < 1e-6 * forward  # nosec: B101
