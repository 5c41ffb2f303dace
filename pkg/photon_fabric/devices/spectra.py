"""Wavelength sweeps of devices and Lorentzian resonance fits."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from logging import debug, info

import numpy as np
from pydantic import BaseModel, NonNegativeFloat, PositiveFloat
from scipy.optimize import curve_fit
from scipy.signal import find_peaks

from photon_fabric.common.enums import PortRoleEnum
from photon_fabric.common.models import ArtifactHeader, Wavelengths
from photon_fabric.common.tables import render_table
from photon_fabric.config.defaults import LORENTZIAN_MIN_PROMINENCE_DB, LORENTZIAN_MIN_SAMPLES, SWEEP_BAND
from photon_fabric.devices.geometry import DeviceLayout
from photon_fabric.devices.metrics import _device_grid
from photon_fabric.em.solver import SolveOptions, mode_overlap, solve_fields
from photon_fabric.errors import NoResonance, ValidationError
from photon_fabric.topopt.density import DensityField


class Spectra(BaseModel):
    """Transmission spectra of a device for one input port.

    Attributes
    ----------
    source: str
        The input port
    wavelengths_nm: list[float]
        The sampled wavelengths (nm)
    through: list[float]
        The power at the output on the rail of the input
    drop: list[float]
        The power at the output on the other rail
    """

    source: str
    wavelengths_nm: list[float]
    through: list[NonNegativeFloat]
    drop: list[NonNegativeFloat]


class ResonanceFit(BaseModel):
    """A Lorentzian fitted to a resonance peak.

    Attributes
    ----------
    lambda_r: float
        The resonance wavelength (m)
    Q: float
        The quality factor lambda_r / FWHM
    extinction: float
        The peak over the fitted floor (dB)
    fit_residual: float
        The root mean square residual relative to the peak height
    """

    lambda_r: PositiveFloat
    Q: PositiveFloat
    extinction: float
    fit_residual: NonNegativeFloat


def _validate_band(band: Wavelengths) -> None:
    low, high = (value * 1e9 for value in SWEEP_BAND)
    if band.step <= 0:
        raise ValidationError(f"The sweep step must be positive, but is {band.step} nm!")
    if band.start < low - 1e-9 or band.stop > high + 1e-9 or band.stop < band.start:
        raise ValidationError(f"The sweep {band.start}-{band.stop} nm is not inside of {low:.0f}-{high:.0f} nm!")


def sweep_device(
    rho: DensityField,
    layout: DeviceLayout,
    band: Wavelengths,
    source: str = "top_in",
    options: SolveOptions | None = None,
) -> Spectra:
    """Sweep the transmission of a device over a wavelength band.

    Every wavelength takes one solve; up to options.jobs wavelengths are solved concurrently.

    Parameters
    ----------
    rho: DensityField
        The densities, used as material directly
    layout: DeviceLayout
        The layout of the device
    band: Wavelengths
        The band in nm (inside of SWEEP_BAND)
    source: str
        The input port, "top_in" or "bottom_in" (defaults to "top_in")
    options: SolveOptions | None
        Optional solve options

    Raises
    ------
    ValidationError
        If the band is invalid
    SolverFailure
        If a solve fails

    Returns
    -------
    Spectra
        The through and drop spectra
    """
    _validate_band(band)
    options = options or SolveOptions()
    side = source.split("_")[0]
    other = "bottom" if side == "top" else "top"

    def powers(wavelength: float) -> tuple[float, float]:
        field = solve_fields(
            grid=_device_grid(rho=rho, layout=layout, wavelength=wavelength),
            sources=[layout.port(name=source, wavelength=wavelength, role=PortRoleEnum.SOURCE)],
            options=options,
        )
        return tuple(  # type: ignore[return-value]
            abs(mode_overlap(field, layout.port(name=f"{name}_out", wavelength=wavelength, role=PortRoleEnum.MONITOR)))
            ** 2
            for name in (side, other)
        )

    wavelengths = band.meters()
    info(f"Sweeping {len(wavelengths)} wavelengths from {band.start} nm to {band.stop} nm")
    if options.jobs > 1:
        with ThreadPoolExecutor(max_workers=options.jobs) as executor:
            results = list(executor.map(powers, wavelengths))
    else:
        results = [powers(wavelength) for wavelength in wavelengths]

    return Spectra(
        source=source,
        wavelengths_nm=band.nm(),
        through=[through for through, _ in results],
        drop=[drop for _, drop in results],
    )


def lorentzian(wavelength: np.ndarray, floor: float, height: float, center: float, fwhm: float) -> np.ndarray:
    """Evaluate a Lorentzian peak on a constant floor.

    Parameters
    ----------
    wavelength: np.ndarray
        The wavelengths
    floor: float
        The constant background
    height: float
        The peak height above the floor
    center: float
        The peak wavelength
    fwhm: float
        The full width at half maximum

    Returns
    -------
    np.ndarray
        floor + height / (1 + (2 * (wavelength - center) / fwhm)^2)
    """
    return floor + height / (1.0 + (2.0 * (wavelength - center) / fwhm) ** 2)


def _prominence_db(spectrum: np.ndarray) -> float:
    floor = max(float(np.min(spectrum)), 1e-300)
    peak = float(np.max(spectrum))
    return 10 * np.log10(peak / floor) if peak > 0 else 0.0


def fit_lorentzian(
    wavelengths_nm: np.ndarray | list[float],
    spectrum: np.ndarray | list[float],
    min_prominence_db: float = LORENTZIAN_MIN_PROMINENCE_DB,
) -> ResonanceFit:
    """Fit a Lorentzian to the single resonance of a drop spectrum by least squares.

    Parameters
    ----------
    wavelengths_nm: np.ndarray | list[float]
        The sampled wavelengths (nm)
    spectrum: np.ndarray | list[float]
        The drop power at each wavelength
    min_prominence_db: float
        The smallest peak over the band floor that counts as a resonance (dB)

    Raises
    ------
    NoResonance
        If the peak is less prominent than min_prominence_db or the fit fails
    ValidationError
        If fewer than LORENTZIAN_MIN_SAMPLES samples lie within the fitted linewidth

    Returns
    -------
    ResonanceFit
        The fitted resonance
    """
    wavelengths = np.asarray(wavelengths_nm, dtype=float)
    values = np.asarray(spectrum, dtype=float)
    if wavelengths.size != values.size or wavelengths.size < 4:
        raise ValidationError("A spectrum needs at least 4 samples with one wavelength each!")
    prominence = _prominence_db(values)
    if prominence < min_prominence_db:
        raise NoResonance(f"The spectrum peaks only {prominence:.2f} dB above its floor!")

    peak = int(np.argmax(values))
    floor = float(np.min(values))
    height = float(values[peak] - floor)
    above = wavelengths[values >= floor + height / 2]
    fwhm_guess = max(float(above.max() - above.min()), float(np.min(np.diff(wavelengths))))
    try:
        parameters, _ = curve_fit(
            lorentzian,
            wavelengths,
            values,
            p0=(floor, height, wavelengths[peak], fwhm_guess),
            maxfev=20000,
        )
    except (RuntimeError, ValueError) as e:
        raise NoResonance(f"The Lorentzian fit did not converge!\n{e}")

    fit_floor, fit_height, center, fwhm = (float(value) for value in parameters)
    fwhm = abs(fwhm)
    if fit_height <= 0 or not wavelengths.min() <= center <= wavelengths.max():
        raise NoResonance(f"The Lorentzian fit placed no peak inside the band (center {center} nm)!")
    inside = int(np.count_nonzero(np.abs(wavelengths - center) <= fwhm / 2))
    if inside < LORENTZIAN_MIN_SAMPLES:
        raise ValidationError(
            f"Only {inside} samples lie within the {fwhm:.4f} nm linewidth, "
            f"at least {LORENTZIAN_MIN_SAMPLES} are needed!"
        )

    residual = values - lorentzian(wavelengths, *parameters)
    fit = ResonanceFit(
        lambda_r=center * 1e-9,
        Q=center / fwhm,
        extinction=float(10 * np.log10((fit_floor + fit_height) / max(fit_floor, 1e-300))),
        fit_residual=float(np.sqrt(np.mean(residual**2)) / fit_height),
    )
    debug(f"Fitted resonance: {fit}")
    return fit


def find_resonances(
    wavelengths_nm: np.ndarray | list[float],
    spectrum: np.ndarray | list[float],
    min_prominence_db: float = LORENTZIAN_MIN_PROMINENCE_DB,
) -> list[ResonanceFit]:
    """Find and fit every resonance of a drop spectrum.

    Each peak that rises min_prominence_db above the band floor is fitted on the samples between its neighbouring
    minima.

    Parameters
    ----------
    wavelengths_nm: np.ndarray | list[float]
        The sampled wavelengths (nm)
    spectrum: np.ndarray | list[float]
        The drop power at each wavelength
    min_prominence_db: float
        The smallest peak over the band floor that counts as a resonance (dB)

    Returns
    -------
    list[ResonanceFit]
        The fits in order of wavelength
    """
    wavelengths = np.asarray(wavelengths_nm, dtype=float)
    values = np.asarray(spectrum, dtype=float)
    floor = max(float(np.min(values)), 1e-300)
    peaks, _ = find_peaks(values, height=floor * 10 ** (min_prominence_db / 10), prominence=floor)
    bounds = [0, *(int(peak) for peak in peaks), values.size - 1]
    fits: list[ResonanceFit] = []
    for previous, peak, following in zip(bounds, bounds[1:], bounds[2:]):
        left = previous + int(np.argmin(values[previous : peak + 1]))
        right = peak + int(np.argmin(values[peak : following + 1]))
        window = slice(left, right + 1)
        try:
            fits.append(fit_lorentzian(wavelengths[window], values[window], min_prominence_db=min_prominence_db))
        except (NoResonance, ValidationError) as e:
            debug(f"Skipping the peak at {wavelengths[peak]} nm: {e}")
    return fits


SPECTRA_COLUMNS = ["wavelength_nm", "P_through", "P_drop"]


def spectra_to_csv(spectra: Spectra, header: ArtifactHeader | None = None) -> str:
    """Render spectra as CSV text.

    Parameters
    ----------
    spectra: Spectra
        The spectra
    header: ArtifactHeader | None
        An optional self-description

    Returns
    -------
    str
        The CSV text with one row per wavelength
    """
    rows = np.array([spectra.wavelengths_nm, spectra.through, spectra.drop], dtype=float).T
    return render_table(rows=rows.reshape(len(spectra.wavelengths_nm), 3), columns=SPECTRA_COLUMNS, header=header)
