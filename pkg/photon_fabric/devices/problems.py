"""The design problems of the splitter, the crossover and the all-forward add-drop resonator."""
from __future__ import annotations

from logging import debug

from photon_fabric.common.enums import DeviceKindEnum, PortRoleEnum
from photon_fabric.config.defaults import LAMBDA_CENTER, RESONATOR_SIDEBANDS
from photon_fabric.devices.geometry import DeviceGeometry, DeviceLayout, layout_device
from photon_fabric.topopt.density import FilterSpec
from photon_fabric.topopt.problem import DesignProblem, ExcitationCondition, Target


def _condition(
    layout: DeviceLayout,
    name: str,
    wavelength: float,
    source: str,
    goals: dict[str, float],
    intended: set[str],
) -> ExcitationCondition:
    return ExcitationCondition(
        name=name,
        wavelength=wavelength,
        sources=[layout.port(name=source, wavelength=wavelength, role=PortRoleEnum.SOURCE)],
        targets=[
            Target(
                name=port,
                monitor=layout.port(name=port, wavelength=wavelength, role=PortRoleEnum.MONITOR),
                goal=goal,
                intended=port in intended,
            )
            for port, goal in goals.items()
        ],
        reflection=Target(
            name=source.replace("_in", "_back"),
            monitor=layout.port(name=source.replace("_in", "_back"), wavelength=wavelength, role=PortRoleEnum.MONITOR),
            goal=0.0,
            weight=0.0,
            intended=False,
        ),
    )


def _problem(name: str, layout: DeviceLayout, conditions: list[ExcitationCondition]) -> DesignProblem:
    debug(f"Created the {name} problem with conditions {[condition.name for condition in conditions]}")
    return DesignProblem(
        name=name,
        grid=layout.grid,
        design_origin=layout.design_origin,
        design_shape=layout.design_shape,
        pixel_pitch=layout.geometry.pixel_pitch,
        conditions=conditions,
        filter=FilterSpec(),
    )


def make_splitter_problem(geometry: DeviceGeometry) -> DesignProblem:
    """Create the problem of a 50:50 splitter.

    Each of the two conditions injects the fundamental mode at one input and asks for half of the power at both
    outputs at 1550 nm. Combiner operation follows from reciprocity and is not optimized.

    Parameters
    ----------
    geometry: DeviceGeometry
        The geometry

    Returns
    -------
    DesignProblem
        The problem with conditions "top_input" and "bottom_input"
    """
    layout = layout_device(geometry=geometry)
    outputs = {"top_out": 0.5, "bottom_out": 0.5}
    return _problem(
        name=DeviceKindEnum.SPLITTER.value,
        layout=layout,
        conditions=[
            _condition(layout, "top_input", LAMBDA_CENTER, "top_in", outputs, intended=set(outputs)),
            _condition(layout, "bottom_input", LAMBDA_CENTER, "bottom_in", outputs, intended=set(outputs)),
        ],
    )


def make_crossover_problem(geometry: DeviceGeometry) -> DesignProblem:
    """Create the problem of a crossover, routing each input to the diagonally opposite output at 1550 nm.

    Parameters
    ----------
    geometry: DeviceGeometry
        The geometry

    Returns
    -------
    DesignProblem
        The problem with conditions "top_input" and "bottom_input"
    """
    layout = layout_device(geometry=geometry)
    return _problem(
        name=DeviceKindEnum.CROSSOVER.value,
        layout=layout,
        conditions=[
            _condition(
                layout, "top_input", LAMBDA_CENTER, "top_in", {"bottom_out": 1.0, "top_out": 0.0}, {"bottom_out"}
            ),
            _condition(
                layout, "bottom_input", LAMBDA_CENTER, "bottom_in", {"top_out": 1.0, "bottom_out": 0.0}, {"top_out"}
            ),
        ],
    )


def make_resonator_problem(geometry: DeviceGeometry) -> DesignProblem:
    """Create the problem of an all-forward add-drop resonator.

    All conditions inject at the top input. At 1550 nm the power should leave at the drop port (bottom output), at
    1548 nm and 1552 nm at the through port (top output).

    Parameters
    ----------
    geometry: DeviceGeometry
        The geometry

    Returns
    -------
    DesignProblem
        The problem with conditions "drop_1550", "through_1548" and "through_1552"
    """
    layout = layout_device(geometry=geometry)
    conditions = [
        _condition(
            layout,
            f"drop_{LAMBDA_CENTER * 1e9:.0f}",
            LAMBDA_CENTER,
            "top_in",
            {"bottom_out": 1.0, "top_out": 0.0},
            {"bottom_out"},
        )
    ]
    for sideband in RESONATOR_SIDEBANDS:
        conditions.append(
            _condition(
                layout,
                f"through_{sideband * 1e9:.0f}",
                sideband,
                "top_in",
                {"top_out": 1.0, "bottom_out": 0.0},
                {"top_out"},
            )
        )
    return _problem(name=DeviceKindEnum.RESONATOR.value, layout=layout, conditions=conditions)


def make_problem(kind: DeviceKindEnum, geometry: DeviceGeometry) -> DesignProblem:
    """Create the problem of a device kind.

    Parameters
    ----------
    kind: DeviceKindEnum
        The device kind
    geometry: DeviceGeometry
        The geometry

    Returns
    -------
    DesignProblem
        The problem
    """
    match kind:
        case DeviceKindEnum.SPLITTER:
            return make_splitter_problem(geometry=geometry)
        case DeviceKindEnum.CROSSOVER:
            return make_crossover_problem(geometry=geometry)
        case DeviceKindEnum.RESONATOR:
            return make_resonator_problem(geometry=geometry)
