"""Tests for photon_fabric.devices.spectra."""
import numpy as np
from pytest import approx, mark, raises

from photon_fabric.common.models import Wavelengths
from photon_fabric.config.defaults import RESONATOR_Q
from photon_fabric.devices import spectra
from photon_fabric.devices.geometry import DeviceLayout
from photon_fabric.devices.metrics import straight_density
from photon_fabric.em.solver import SolveOptions
from photon_fabric.errors import NoResonance, ValidationError


def _lorentzian_spectrum(wavelengths: np.ndarray, peaks: list[tuple[float, float]], q: float) -> np.ndarray:
    values = np.full(wavelengths.shape, 1e-3)
    for center, height in peaks:
        values += spectra.lorentzian(wavelengths, 0.0, height, center, center / q)
    return values


def test_fit_lorentzian() -> None:
    """Tests for photon_fabric.devices.spectra.fit_lorentzian."""
    wavelengths = np.array(Wavelengths(start=1548.0, stop=1552.0, step=0.02).nm())
    assert wavelengths.size == 201  # nosec: B101

    fit = spectra.fit_lorentzian(wavelengths, _lorentzian_spectrum(wavelengths, [(1550.0, 0.9)], q=RESONATOR_Q))
    assert fit.lambda_r == approx(1550e-9, rel=1e-7)  # nosec: B101
    assert fit.Q == approx(RESONATOR_Q, rel=1e-3)  # nosec: B101
    assert fit.extinction == approx(10 * np.log10(0.901 / 0.001), abs=0.05)  # nosec: B101
    assert fit.fit_residual < 1e-3  # nosec: B101


@mark.parametrize(
    "wavelengths, spectrum, error",
    [
        (np.linspace(1548.0, 1552.0, 201), np.full(201, 0.5), NoResonance),
        (np.linspace(1548.0, 1552.0, 201), np.linspace(0.5, 0.6, 201), NoResonance),
        (np.linspace(1548.0, 1552.0, 3), np.array([0.001, 0.9, 0.001]), ValidationError),
        (np.linspace(1548.0, 1552.0, 10), np.ones(9), ValidationError),
    ],
)
def test_fit_lorentzian_errors(wavelengths: np.ndarray, spectrum: np.ndarray, error: type[Exception]) -> None:
    with raises(error):
        spectra.fit_lorentzian(wavelengths, spectrum)


def test_fit_lorentzian_undersampled() -> None:
    wavelengths = np.array(Wavelengths(start=1540.0, stop=1560.0, step=0.5).nm())
    with raises(ValidationError):
        spectra.fit_lorentzian(wavelengths, _lorentzian_spectrum(wavelengths, [(1550.0, 0.9)], q=RESONATOR_Q))


def test_find_resonances() -> None:
    """Tests for photon_fabric.devices.spectra.find_resonances."""
    wavelengths = np.array(Wavelengths(start=1540.0, stop=1560.0, step=0.02).nm())
    values = _lorentzian_spectrum(wavelengths, [(1545.0, 0.9), (1555.0, 0.6)], q=RESONATOR_Q)
    fits = spectra.find_resonances(wavelengths, values)
    assert [fit.lambda_r * 1e9 for fit in fits] == approx([1545.0, 1555.0], abs=0.01)  # nosec: B101
    assert [fit.Q for fit in fits] == approx([RESONATOR_Q, RESONATOR_Q], rel=0.05)  # nosec: B101

    assert spectra.find_resonances(wavelengths, np.full(wavelengths.shape, 0.2)) == []  # nosec: B101


def test_spectra_to_csv() -> None:
    result = spectra.Spectra(source="top_in", wavelengths_nm=[1549.0, 1550.0], through=[0.5, 0.25], drop=[0.125, 0.5])
    assert spectra.spectra_to_csv(result).splitlines() == [  # nosec: B101
        "wavelength_nm,P_through,P_drop",
        "1549,0.5,0.125",
        "1550,0.25,0.5",
    ]


@mark.parametrize(
    "band",
    [
        Wavelengths(start=1400.0, stop=1410.0, step=1.0),
        Wavelengths(start=1590.0, stop=1610.0, step=1.0),
        Wavelengths(start=1551.0, stop=1549.0, step=1.0),
        Wavelengths(start=1549.0, stop=1551.0, step=0.0),
    ],
)
def test_sweep_device_invalid_band(band: Wavelengths, tiny_layout: DeviceLayout) -> None:
    with raises(ValidationError):
        spectra.sweep_device(rho=straight_density(tiny_layout), layout=tiny_layout, band=band)


@mark.parametrize("source, jobs", [("top_in", 1), ("bottom_in", 2)])
def test_sweep_device_straight(source: str, jobs: int, tiny_layout: DeviceLayout) -> None:
    """Tests for photon_fabric.devices.spectra.sweep_device."""
    result = spectra.sweep_device(
        rho=straight_density(tiny_layout),
        layout=tiny_layout,
        band=Wavelengths(start=1549.0, stop=1551.0, step=1.0),
        source=source,
        options=SolveOptions(jobs=jobs),
    )
    assert result.source == source  # nosec: B101
    assert result.wavelengths_nm == [1549.0, 1550.0, 1551.0]  # nosec: B101
    assert all(power > 0.8 for power in result.through)  # nosec: B101
    assert all(power < 0.2 for power in result.drop)  # nosec: B101
