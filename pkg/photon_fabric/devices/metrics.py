"""Power ratios, insertion loss and crosstalk of devices."""
from __future__ import annotations

from math import log10, pi

import numpy as np
from pydantic import BaseModel, NonNegativeFloat, PositiveFloat

from photon_fabric.common.enums import DirectionEnum, PortRoleEnum
from photon_fabric.config.defaults import DB_FLOOR, LAMBDA_CENTER
from photon_fabric.devices.geometry import DeviceLayout, fill_fraction
from photon_fabric.em.grid import SimulationGrid
from photon_fabric.em.solver import PortSpec, SolveOptions, mode_overlap, solve_fields
from photon_fabric.topopt.density import DensityField, density_to_permittivity, upsample
from photon_fabric.topopt.problem import DesignProblem, solve_conditions


class DeviceMetrics(BaseModel):
    """Metrics of a device for one excitation.

    Attributes
    ----------
    condition: str
        The name of the excitation
    wavelength: float
        The free-space wavelength (m)
    ratios: dict[str, float]
        The power at each monitored port relative to the injected power
    insertion_loss: float
        -10 * log10 of the summed ratios of the intended ports (dB, >= 0)
    crosstalk: float
        10 * log10 of the largest ratio of an unintended port (dB), DB_FLOOR if there is none
    return_loss: float | None
        -10 * log10 of the power reflected towards the source relative to the injected power (dB), unset if the
        reflection was not monitored
    """

    condition: str
    wavelength: PositiveFloat
    ratios: dict[str, NonNegativeFloat]
    insertion_loss: NonNegativeFloat
    crosstalk: float
    return_loss: float | None = None


def to_db(ratio: float) -> float:
    """Convert a power ratio to dB, bounded below by DB_FLOOR.

    Parameters
    ----------
    ratio: float
        A power ratio

    Returns
    -------
    float
        10 * log10(ratio) or DB_FLOOR
    """
    return DB_FLOOR if ratio <= 10 ** (DB_FLOOR / 10) else 10 * log10(ratio)


def metrics_from_powers(
    powers: dict[str, float],
    intended: set[str],
    injected: float = 1.0,
    condition: str = "",
    wavelength: float = LAMBDA_CENTER,
    reflected: float | None = None,
) -> DeviceMetrics:
    """Derive device metrics from port powers.

    Both insertion loss and crosstalk are taken relative to the injected power.

    Parameters
    ----------
    powers: dict[str, float]
        The power at each monitored port
    intended: set[str]
        The names of the ports power is intended for
    injected: float
        The total injected power (defaults to 1.0)
    condition: str
        The name of the excitation
    wavelength: float
        The free-space wavelength (m)
    reflected: float | None
        The power returning towards the source, if it was monitored

    Returns
    -------
    DeviceMetrics
        The metrics
    """
    ratios = {port: max(0.0, float(power)) / injected for port, power in powers.items()}
    through = sum(ratio for port, ratio in ratios.items() if port in intended)
    leaks = [ratio for port, ratio in ratios.items() if port not in intended]
    return DeviceMetrics(
        condition=condition,
        wavelength=wavelength,
        ratios=ratios,
        insertion_loss=max(0.0, -to_db(through)),
        crosstalk=to_db(max(leaks)) if leaks else DB_FLOOR,
        return_loss=None if reflected is None else -to_db(max(0.0, float(reflected)) / injected),
    )


def evaluate_device(
    rho: DensityField,
    problem: DesignProblem,
    options: SolveOptions | None = None,
) -> list[DeviceMetrics]:
    """Evaluate a design on every condition of a problem.

    The densities are used as material directly, without filter and projection.

    Parameters
    ----------
    rho: DensityField
        The densities (binary or gray)
    problem: DesignProblem
        The problem
    options: SolveOptions | None
        Optional solve options

    Raises
    ------
    ValidationError
        If rho does not fit the design region
    SolverFailure
        If a solve fails

    Returns
    -------
    list[DeviceMetrics]
        The metrics in the order of the problem's conditions
    """
    problem.check_density(rho)
    results = solve_conditions(problem=problem, eps_r=problem.permittivity(rho.rho), options=options)
    return [
        metrics_from_powers(
            powers={target.name: power for target, power in zip(condition.targets, result.powers)},
            intended={target.name for target in condition.targets if target.intended},
            injected=condition.injected_power(),
            condition=condition.name,
            wavelength=condition.wavelength,
            reflected=result.reflected,
        )
        for condition, result in zip(problem.conditions, results)
    ]


def combiner_response(
    rho: DensityField,
    layout: DeviceLayout,
    phase: float = pi / 2,
    wavelength: float = LAMBDA_CENTER,
    options: SolveOptions | None = None,
) -> dict[str, float]:
    """Inject both inputs of a device with a phase difference and return the output powers.

    Parameters
    ----------
    rho: DensityField
        The densities, used as material directly
    layout: DeviceLayout
        The layout of the device
    phase: float
        The phase of the bottom input relative to the top input (rad)
    wavelength: float
        The free-space wavelength (m)
    options: SolveOptions | None
        Optional solve options

    Returns
    -------
    dict[str, float]
        The power at "top_out" and "bottom_out" for a total injected power of 2
    """
    grid = _device_grid(rho=rho, layout=layout, wavelength=wavelength)
    sources = [
        layout.port(name="top_in", wavelength=wavelength, role=PortRoleEnum.SOURCE),
        layout.port(name="bottom_in", wavelength=wavelength, role=PortRoleEnum.SOURCE, phase=phase),
    ]
    field = solve_fields(grid=grid, sources=sources, options=options)
    return {
        name: abs(mode_overlap(field, layout.port(name=name, wavelength=wavelength, role=PortRoleEnum.MONITOR))) ** 2
        for name in ("top_out", "bottom_out")
    }


def reciprocity_check(
    rho: DensityField,
    layout: DeviceLayout,
    source: str = "top_in",
    wavelength: float = LAMBDA_CENTER,
    options: SolveOptions | None = None,
) -> tuple[float, complex]:
    """Send the phase-conjugated output amplitudes of a device back through it.

    For a reciprocal device the amplitude returning to the source port equals the total forward output power.

    Parameters
    ----------
    rho: DensityField
        The densities, used as material directly
    layout: DeviceLayout
        The layout of the device
    source: str
        The input port of the forward excitation (defaults to "top_in")
    wavelength: float
        The free-space wavelength (m)
    options: SolveOptions | None
        Optional solve options

    Returns
    -------
    tuple[float, complex]
        The forward output power and the amplitude returning to the source port
    """
    grid = _device_grid(rho=rho, layout=layout, wavelength=wavelength)
    forward = solve_fields(
        grid=grid,
        sources=[layout.port(name=source, wavelength=wavelength, role=PortRoleEnum.SOURCE)],
        options=options,
    )
    outputs = {
        name: mode_overlap(forward, layout.port(name=name, wavelength=wavelength, role=PortRoleEnum.MONITOR))
        for name in ("top_out", "bottom_out")
    }
    backward_sources: list[PortSpec] = []
    for name, amplitude in outputs.items():
        mode = layout.port(name=name, wavelength=wavelength, role=PortRoleEnum.SOURCE).mode
        backward_sources.append(
            PortSpec(
                role=PortRoleEnum.SOURCE,
                mode=mode.placed(cut=mode.cut, direction=DirectionEnum.BACKWARD),  # type: ignore[arg-type]
                phase=float(np.angle(np.conj(amplitude))),
                weight=abs(amplitude) ** 2,
            )
        )
    backward = solve_fields(grid=grid, sources=backward_sources, options=options)
    monitor = layout.port(name=source, wavelength=wavelength, role=PortRoleEnum.MONITOR)
    returning = PortSpec(
        role=PortRoleEnum.MONITOR,
        mode=monitor.mode.placed(cut=monitor.mode.cut, direction=DirectionEnum.BACKWARD),  # type: ignore[arg-type]
    )
    return float(sum(abs(amplitude) ** 2 for amplitude in outputs.values())), mode_overlap(backward, returning)


def _device_grid(rho: DensityField, layout: DeviceLayout, wavelength: float) -> SimulationGrid:
    factor = layout.geometry.cells(layout.geometry.pixel_pitch)
    eps = np.array(layout.grid.eps_r)
    x0, y0 = layout.design_origin
    patch = upsample(density_to_permittivity(rho), factor)
    eps[x0 : x0 + patch.shape[0], y0 : y0 + patch.shape[1]] = patch
    return layout.grid.with_wavelength(wavelength).with_eps(eps)


def straight_density(layout: DeviceLayout) -> DensityField:
    """Return densities that continue both leads straight through the design region.

    Parameters
    ----------
    layout: DeviceLayout
        The layout of the device

    Returns
    -------
    DensityField
        The densities, with fractional values at pixels partially covered by a rail
    """
    geometry = layout.geometry
    pixels = layout.design_shape[1]
    y_offset = layout.design_origin[1] * geometry.dx
    column = np.zeros(pixels)
    for rail in layout.rail_centers:
        low = rail - geometry.wg_width / 2 - y_offset
        high = rail + geometry.wg_width / 2 - y_offset
        column += fill_fraction(pixels, geometry.pixel_pitch, low, high)
    rho = np.tile(np.clip(column, 0.0, 1.0), (layout.design_shape[0], 1))
    return DensityField(rho=rho, pixel_pitch=geometry.pixel_pitch, origin=layout.design_origin)
