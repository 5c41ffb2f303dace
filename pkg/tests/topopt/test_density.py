"""Tests for photon_fabric.topopt.density."""
from contextlib import nullcontext as does_not_raise
from math import inf
from typing import Any, ContextManager

import numpy as np
from pydantic import ValidationError
from pytest import approx, mark, raises

from photon_fabric.config.defaults import EPS_SILICA, EPS_SILICON, INITIAL_DENSITY
from photon_fabric.topopt import density


@mark.parametrize(
    "rho, expectation",
    [
        ([[0.0, 1.0], [0.5, 0.25]], does_not_raise()),
        ([0.0, 1.0], raises(ValidationError)),
        ([[0.0, 1.5]], raises(ValidationError)),
        ([[-0.1, 0.5]], raises(ValidationError)),
        ([[np.nan, 0.5]], raises(ValidationError)),
        (np.zeros((0, 3)), raises(ValidationError)),
    ],
)
def test_densityfield(rho: Any, expectation: ContextManager[str]) -> None:
    with expectation:
        field = density.DensityField(rho=rho, pixel_pitch=40e-9)
        assert field.shape == (2, 2)  # nosec: B101
        assert field.extent() == approx((80e-9, 80e-9))  # nosec: B101
        assert not field.rho.flags.writeable  # nosec: B101


def test_densityfield_with_rho() -> None:
    """Tests for photon_fabric.topopt.density.DensityField.with_rho and binarized."""
    field = density.DensityField(rho=[[0.2, 0.6], [0.5, 0.9]], pixel_pitch=40e-9, origin=(3, 4))
    binary = field.binarized()
    assert binary.rho.tolist() == [[0.0, 1.0], [0.0, 1.0]]  # nosec: B101
    assert binary.origin == (3, 4)  # nosec: B101
    with raises(ValueError):
        field.with_rho(np.zeros((3, 2)))


@mark.parametrize("radius, shape", [(0.5, (1, 1)), (1.0, (3, 3)), (2.0, (5, 5)), (3.5, (7, 7))])
def test_conic_kernel(radius: float, shape: tuple[int, int]) -> None:
    kernel = density.conic_kernel(radius=radius)
    assert kernel.shape == shape  # nosec: B101
    assert kernel.sum() == approx(1.0)  # nosec: B101
    assert kernel[shape[0] // 2, shape[1] // 2] == kernel.max()  # nosec: B101
    assert np.allclose(kernel, kernel.T) and np.allclose(kernel, kernel[::-1, ::-1])  # nosec: B101


def test_filter_density() -> None:
    """Tests for photon_fabric.topopt.density.filter_density."""
    assert np.allclose(density.filter_density(np.full((6, 5), 0.3), radius=2.0), 0.3)  # nosec: B101

    spike = np.zeros((9, 9))
    spike[4, 4] = 1.0
    filtered = density.filter_density(spike, radius=2.0)
    assert filtered.sum() == approx(1.0)  # nosec: B101
    assert filtered.max() < 1.0  # nosec: B101
    assert np.allclose(density.filter_density(spike, radius=0.0), spike)  # nosec: B101


@mark.parametrize("beta", [1.0, 4.0, 64.0])
def test_tanh_projection(beta: float) -> None:
    x = np.linspace(0.0, 1.0, 11)
    projected = density.tanh_projection(x, beta=beta, eta=0.5)
    assert projected[0] == approx(0.0, abs=1e-12)  # nosec: B101
    assert projected[-1] == approx(1.0)  # nosec: B101
    assert projected[5] == approx(0.5)  # nosec: B101
    assert np.all(np.diff(projected) >= 0.0)  # nosec: B101

    step = 1e-6
    numeric = (density.tanh_projection(x + step, beta, 0.5) - density.tanh_projection(x - step, beta, 0.5)) / (2 * step)
    assert np.allclose(density.tanh_projection_derivative(x, beta, 0.5), numeric, rtol=1e-5, atol=1e-8)  # nosec: B101


def test_tanh_projection_hard_threshold() -> None:
    projected = density.tanh_projection(np.array([0.2, 0.5, 0.7]), beta=inf, eta=0.5)
    assert projected.tolist() == [0.0, 0.5, 1.0]  # nosec: B101
    assert np.all(density.tanh_projection_derivative(np.array([0.2, 0.7]), beta=inf, eta=0.5) == 0.0)  # nosec: B101


def test_filter_and_project_vjp() -> None:
    """Tests for photon_fabric.topopt.density.filter_and_project_vjp against central differences."""
    rng = np.random.default_rng(seed=3)
    rho = density.DensityField(rho=rng.uniform(0.2, 0.8, size=(8, 6)), pixel_pitch=40e-9)
    spec = density.FilterSpec(radius=120.0, beta=4.0, eta=0.5)
    weights = rng.normal(size=(8, 6))

    def loss(values: np.ndarray) -> float:
        return float(np.sum(weights * density.filter_and_project(rho.with_rho(values), spec).rho))

    gradient = density.filter_and_project_vjp(density=rho, spec=spec, gradient=weights)
    step = 1e-6
    for index in [(0, 0), (3, 2), (7, 5), (4, 0)]:
        plus, minus = rho.rho.copy(), rho.rho.copy()
        plus[index] += step
        minus[index] -= step
        assert gradient[index] == approx((loss(plus) - loss(minus)) / (2 * step), rel=1e-4, abs=1e-8)  # nosec: B101


def test_density_to_permittivity() -> None:
    eps = density.density_to_permittivity(np.array([0.0, 0.5, 1.0]))
    assert eps.tolist() == approx([EPS_SILICA, (EPS_SILICA + EPS_SILICON) / 2, EPS_SILICON])  # nosec: B101
    field = density.DensityField(rho=[[1.0]])
    assert density.density_to_permittivity(field)[0, 0] == approx(EPS_SILICON)  # nosec: B101


def test_upsample_block_sum() -> None:
    """Tests for photon_fabric.topopt.density.upsample and block_sum."""
    values = np.arange(6, dtype=float).reshape(2, 3)
    upsampled = density.upsample(values, factor=2)
    assert upsampled.shape == (4, 6)  # nosec: B101
    assert upsampled[1, 5] == values[0, 2]  # nosec: B101
    assert np.array_equal(density.block_sum(upsampled, factor=2), 4 * values)  # nosec: B101


@mark.parametrize("noise", [0.0, 0.1, 0.5])
def test_init_density(noise: float, default_seed: int) -> None:
    """Tests for photon_fabric.topopt.density.init_density."""
    first = density.init_density(shape=(10, 12), noise=noise, seed=default_seed)
    second = density.init_density(shape=(10, 12), noise=noise, seed=default_seed)
    assert first.shape == (10, 12)  # nosec: B101
    assert np.array_equal(first.rho, second.rho)  # nosec: B101
    assert np.all(np.abs(first.rho - INITIAL_DENSITY) <= noise)  # nosec: B101
    if noise == 0.0:
        assert np.all(first.rho == INITIAL_DENSITY)  # nosec: B101
