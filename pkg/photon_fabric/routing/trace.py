"""Topological path tracing, the oracle that every switch state is verified against."""
from __future__ import annotations

from pydantic import BaseModel, NonNegativeInt

from photon_fabric.common.enums import ActuationEnum, PlacementKindEnum
from photon_fabric.config.defaults import RESONATOR_Q
from photon_fabric.errors import UnresolvedControl, ValidationError
from photon_fabric.fabric.colors import at_color
from photon_fabric.fabric.layout import CircuitLayout, Placement
from photon_fabric.routing.models import SwitchState


class TracedPath(BaseModel):
    """The path of one input through a layout.

    Attributes
    ----------
    input: int
        The input port
    rail: int | None
        The rail the light leaves on, None if it was absorbed
    output: int | None
        The output port the light reaches, None if it was absorbed or its rail is no output
    elements: list[tuple[int, int]]
        The column and lower rail of every element passed
    switches: int
        The number of actuated elements passed
    crossovers: int
        The number of crossovers passed
    """

    input: NonNegativeInt
    rail: NonNegativeInt | None
    output: NonNegativeInt | None
    elements: list[tuple[int, int]] = []
    switches: NonNegativeInt = 0
    crossovers: NonNegativeInt = 0


def check_state(layout: CircuitLayout, state: SwitchState) -> None:
    """Check that a state resolves exactly the controls of a layout.

    Parameters
    ----------
    layout: CircuitLayout
        The layout
    state: SwitchState
        The state

    Raises
    ------
    UnresolvedControl
        If a control of the layout has no state
    ValidationError
        If the state names controls the layout does not have
    """
    controls = set(layout.controls())
    missing = sorted(controls - set(state.actuations))
    if missing:
        raise UnresolvedControl(f"The controls {missing} have no state!")
    unknown = sorted(set(state.actuations) - controls)
    if unknown:
        raise ValidationError(f"The controls {unknown} do not exist in the layout!")


def crosses(placement: Placement, state: SwitchState, color_nm: float | None, q: float = RESONATOR_Q) -> bool:
    """Return whether an element exchanges its rails.

    Crossovers always exchange, switches according to their state. A wavelength-dedicated element exchanges only at
    its color: a passive add-drop always, an actuated one when in cross state.

    Parameters
    ----------
    placement: Placement
        The element
    state: SwitchState
        The state of the controls
    color_nm: float | None
        The traced color (nm), None for broadband traces
    q: float
        The quality factor setting the color tolerance of wavelength-dedicated elements

    Raises
    ------
    ValidationError
        If a wavelength-dedicated element is traced without a color
    UnresolvedControl
        If the control of the element has no state

    Returns
    -------
    bool
        True if the element is in cross state for the traced light, False otherwise
    """
    match placement.kind:
        case PlacementKindEnum.CROSSOVER:
            return True
        case PlacementKindEnum.SWITCH:
            return state.actuation(placement.control) == ActuationEnum.CROSS  # type: ignore[arg-type]
    if color_nm is None:
        raise ValidationError(f"The {placement.kind.value} element on rail {placement.rail} requires a traced color!")
    if not at_color(placement.color_nm, color_nm, q=q):  # type: ignore[arg-type]
        return False
    return placement.kind == PlacementKindEnum.ADD_DROP or (
        state.actuation(placement.control) == ActuationEnum.CROSS  # type: ignore[arg-type]
    )


class Tracer:
    """A reusable index of a layout for tracing many states.

    Attributes
    ----------
    layout: CircuitLayout
        The layout
    elements: list[dict[int, Placement]]
        The elements of every column, keyed by both of their rails
    absorbed: set[tuple[int, int]]
        The (rail, column) of every terminator
    """

    def __init__(self, layout: CircuitLayout):
        """Index the elements of a layout by rail."""
        self.layout = layout
        self.elements: list[dict[int, Placement]] = []
        for column in layout.columns:
            index: dict[int, Placement] = {}
            for placement in column.placements:
                index[placement.rail] = placement
                index[placement.rail + 1] = placement
            self.elements.append(index)
        self.absorbed = {(terminator.rail, terminator.column) for terminator in layout.terminators}

    def trace(self, state: SwitchState, port: int, color_nm: float | None = None, q: float = RESONATOR_Q) -> TracedPath:
        """Trace the light of one input port.

        Parameters
        ----------
        state: SwitchState
            The state of the controls
        port: int
            The input port
        color_nm: float | None
            The traced color (nm), None for broadband traces
        q: float
            The quality factor setting the color tolerance of wavelength-dedicated elements

        Raises
        ------
        ValidationError
            If the port does not exist
        UnresolvedControl
            If a control on the path has no state

        Returns
        -------
        TracedPath
            The path
        """
        if not 0 <= port < len(self.layout.inputs):
            raise ValidationError(f"The layout has no input port {port}!")
        rail = self.layout.inputs[port]
        elements: list[tuple[int, int]] = []
        switches = crossovers = 0
        for index, column in enumerate(self.layout.columns):
            if (rail, index) in self.absorbed:
                return TracedPath(input=port, rail=None, output=None, elements=elements)
            if column.permutation is not None:
                rail = column.permutation[rail]
                continue
            placement = self.elements[index].get(rail)
            if placement is None:
                continue
            elements.append((index, placement.rail))
            if placement.kind == PlacementKindEnum.CROSSOVER:
                crossovers += 1
            elif placement.kind.is_active():
                switches += 1
            if crosses(placement, state, color_nm, q=q):
                rail = placement.rail + 1 if rail == placement.rail else placement.rail
        if (rail, len(self.layout.columns)) in self.absorbed:
            return TracedPath(input=port, rail=None, output=None, elements=elements)
        return TracedPath(
            input=port,
            rail=rail,
            output=self.layout.output_port(rail),
            elements=elements,
            switches=switches,
            crossovers=crossovers,
        )

    def paths(self, state: SwitchState, color_nm: float | None = None, q: float = RESONATOR_Q) -> list[TracedPath]:
        """Trace every input port of the layout in a state."""
        check_state(self.layout, state)
        return [self.trace(state, port, color_nm, q=q) for port in range(len(self.layout.inputs))]


def trace_paths(
    layout: CircuitLayout,
    state: SwitchState,
    color_nm: float | None = None,
    q: float = RESONATOR_Q,
) -> dict[int, int | None]:
    """Trace every input of a layout for a state.

    At every element, cross exchanges the two rails and bar passes straight through; terminators absorb.

    Parameters
    ----------
    layout: CircuitLayout
        The layout
    state: SwitchState
        The state, resolving every control of the layout
    color_nm: float | None
        The traced color (nm), required for layouts with wavelength-dedicated elements
    q: float
        The quality factor setting the color tolerance of wavelength-dedicated elements

    Raises
    ------
    UnresolvedControl
        If a control of the layout has no state
    ValidationError
        If the state names unknown controls or a color is required but missing

    Returns
    -------
    dict[int, int | None]
        The output port each input port reaches, None if absorbed or leaving on a rail that is no output
    """
    return {path.input: path.output for path in Tracer(layout).paths(state, color_nm, q=q)}
