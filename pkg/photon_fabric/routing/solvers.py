"""Switch state solvers for the generated architectures and the verification of states against requests."""
from __future__ import annotations

from collections.abc import Callable
from logging import debug, info

from photon_fabric.common.enums import ActuationEnum, ArchitectureKindEnum
from photon_fabric.config.defaults import RESONATOR_Q
from photon_fabric.errors import Unroutable, ValidationError
from photon_fabric.fabric.colors import at_color
from photon_fabric.fabric.generators import SELECT_SIZE, shuffle, site_control
from photon_fabric.fabric.layout import CircuitLayout
from photon_fabric.routing.models import (
    Permutation,
    RouteRecord,
    SwitchState,
    TracedRoute,
    WavelengthRequest,
)
from photon_fabric.routing.trace import Tracer

Sites = dict[tuple[int, int], ActuationEnum]
Middle = Callable[[list[int], int, int], Sites]

BAR, CROSS = ActuationEnum.BAR, ActuationEnum.CROSS


def _site(cross: bool) -> ActuationEnum:
    return CROSS if cross else BAR


def loop_split(sigma: list[int]) -> tuple[list[int], list[list[int]]]:
    """Split the connections of a permutation onto two halves with the looping algorithm.

    The two connections of every input pair (2k, 2k + 1) and the two connections ending at every output pair use
    different halves. Cycles are started at the lowest-index unassigned input, which uses the upper half (0).

    Parameters
    ----------
    sigma: list[int]
        The output of every input, a bijection of even size

    Returns
    -------
    tuple[list[int], list[list[int]]]
        The half of every connection and the connections of every cycle, whose halves may be flipped together
    """
    inverse = {output: port for port, output in enumerate(sigma)}
    halves = [-1] * len(sigma)
    cycles: list[list[int]] = []
    for start in range(len(sigma)):
        if halves[start] >= 0:
            continue
        cycle: list[int] = []
        connection = start
        while halves[connection] < 0:
            partner = inverse[sigma[connection] ^ 1]
            halves[connection], halves[partner] = 0, 1
            cycle.extend([connection, partner])
            connection = partner ^ 1
        cycles.append(cycle)
    return halves, cycles


def route_two_level(
    sigma: list[int],
    offset: int,
    stage: int,
    last_stage: int,
    middle: Middle,
) -> Sites:
    """Route a permutation over an input stage, two middle networks and an output stage.

    Input site k on rails (2k, 2k + 1) feeds input k of both halves, output k of both halves feeds output site k. All
    splits of the looping algorithm are tried, starting with the unflipped one, until both halves are routable.

    Parameters
    ----------
    sigma: list[int]
        The local output of every local input
    offset: int
        The first rail of the network
    stage: int
        The stage of the input sites
    last_stage: int
        The stage of the output sites
    middle: Middle
        The router of the halves, called with the local permutation, the first rail and the first stage

    Raises
    ------
    Unroutable
        If no split yields routable halves

    Returns
    -------
    Sites
        The state of every site, keyed by stage and lower rail
    """
    half = len(sigma) // 2
    base, cycles = loop_split(sigma)
    for mask in range(2 ** len(cycles)):
        halves = list(base)
        for bit, cycle in enumerate(cycles):
            if mask >> bit & 1:
                for connection in cycle:
                    halves[connection] ^= 1
        inner: list[list[int]] = [[0] * half, [0] * half]
        for port, output in enumerate(sigma):
            inner[halves[port]][port // 2] = output // 2
        try:
            sites = middle(inner[0], offset, stage + 1) | middle(inner[1], offset + half, stage + 1)
        except Unroutable:
            continue
        for pair in range(half):
            sites[(stage, offset + 2 * pair)] = _site(halves[2 * pair] == 1)
        for port, output in enumerate(sigma):
            if halves[port] == 0:
                sites[(last_stage, offset + 2 * (output // 2))] = _site(output % 2 == 1)
        if mask:
            debug(f"Routed {sigma} after flipping cycles {mask:b}")
        return sites
    raise Unroutable(f"The permutation {sigma} can not be split onto two routable halves!")


def route_benes(sigma: list[int], offset: int = 0, stage: int = 0) -> Sites:
    """Route a permutation on a Benes network of 2 x 2 sites.

    Parameters
    ----------
    sigma: list[int]
        The local output of every local input (a power of two in size)
    offset: int
        The first rail of the network
    stage: int
        The stage of the input sites

    Returns
    -------
    Sites
        The state of every site
    """
    if len(sigma) == 2:
        return {(stage, offset): _site(sigma[0] == 1)}
    depth = 2 * (len(sigma).bit_length() - 1) - 1
    return route_two_level(sigma, offset, stage, stage + depth - 1, middle=route_benes)


def route_baseline(sigma: list[int], offset: int = 0, stage: int = 0) -> Sites:
    """Route a permutation on a baseline network by destination tags.

    Parameters
    ----------
    sigma: list[int]
        The local output of every local input (a power of two in size)
    offset: int
        The first rail of the network
    stage: int
        The stage of the first sites

    Raises
    ------
    Unroutable
        If two inputs of a site need the same output

    Returns
    -------
    Sites
        The state of every site
    """
    if len(sigma) == 2:
        return {(stage, offset): _site(sigma[0] == 1)}
    half = len(sigma) // 2
    sites: Sites = {}
    upper, lower = [0] * half, [0] * half
    for pair in range(half):
        first, second = sigma[2 * pair], sigma[2 * pair + 1]
        if (first < half) == (second < half):
            raise Unroutable(f"Outputs {first} and {second} block each other in the baseline network!")
        cross = first >= half
        sites[(stage, offset + 2 * pair)] = _site(cross)
        top, bottom = (second, first) if cross else (first, second)
        upper[pair], lower[pair] = top, bottom - half
    return sites | route_baseline(upper, offset, stage + 1) | route_baseline(lower, offset + half, stage + 1)


def route_odd_even(sigma: list[int], offset: int = 0, stage: int = 0) -> Sites:
    """Route a permutation on a planar network of len(sigma) columns of alternating pair parity.

    Every site acts as a comparator that crosses when its lower rail carries the larger destination.

    Parameters
    ----------
    sigma: list[int]
        The local output of every local input
    offset: int
        The first rail of the network
    stage: int
        The stage of the first column

    Returns
    -------
    Sites
        The state of every site
    """
    order = list(sigma)
    sites: Sites = {}
    for step in range(len(order)):
        for rail in range(step % 2, len(order) - 1, 2):
            cross = order[rail] > order[rail + 1]
            sites[(stage + step, offset + rail)] = _site(cross)
            if cross:
                order[rail], order[rail + 1] = order[rail + 1], order[rail]
    return sites


def _check_ports(layout: CircuitLayout, sigma: dict[int, int]) -> None:
    n_inputs, n_outputs = len(layout.inputs), len(layout.outputs)
    for port, output in sigma.items():
        if port >= n_inputs or output >= n_outputs:
            raise ValidationError(f"The connection {port} -> {output} exceeds the {n_inputs} x {n_outputs} ports!")


def comparator_states(
    layout: CircuitLayout,
    signals: dict[int, int],
    start_column: int = 0,
) -> dict[str, ActuationEnum]:
    """Set every broadband switch of a layout as a comparator of the signals it meets.

    Signals move through crossovers and permutation blocks; a switch crosses when its lower rail carries the larger
    destination and otherwise (also when it meets fewer than two signals) stays in bar state.

    Parameters
    ----------
    layout: CircuitLayout
        The layout
    signals: dict[int, int]
        The destination rail of the signal on every occupied rail, in front of start_column
    start_column: int
        The first column to process

    Returns
    -------
    dict[str, ActuationEnum]
        The state of every switch from start_column on
    """
    current = dict(signals)
    actuations: dict[str, ActuationEnum] = {}
    for column in layout.columns[start_column:]:
        if column.permutation is not None:
            current = {column.permutation[rail]: target for rail, target in current.items()}
            continue
        for placement in column.placements:
            low, high = placement.rail, placement.rail + 1
            if placement.control is None:
                cross = True
            else:
                first, second = current.get(low), current.get(high)
                cross = first is not None and second is not None and first > second
                actuations[placement.control] = _site(cross)
            if cross:
                moved = {rail: current.pop(rail) for rail in (low, high) if rail in current}
                for rail, target in moved.items():
                    current[high if rail == low else low] = target
    return actuations


def _output_rails(layout: CircuitLayout, sigma: list[int]) -> dict[int, int]:
    return {layout.inputs[port]: layout.outputs[output][0] for port, output in enumerate(sigma)}


def _solve_crosspoint(layout: CircuitLayout, request: Permutation) -> SwitchState:
    n = len(layout.inputs)
    return SwitchState(
        actuations={
            f"x{port}.{output}": _site(request.sigma.get(port) != output) for port in range(n) for output in range(n)
        }
    )


def _solve_select(layout: CircuitLayout, request: Permutation) -> SwitchState:
    if len(request.sigma) > 1:
        raise ValidationError(f"A selector connects at most one path, not {request.sigma}!")
    actuations = {control: layout.ambient for control in layout.controls()}
    actuations["gate"] = CROSS
    for port, output in request.sigma.items():
        actuations["gate"] = BAR
        if layout.kind == ArchitectureKindEnum.SELECT_8TO1:
            chosen = SELECT_SIZE - 2 - port
            for stage in range(max(chosen, 0), SELECT_SIZE - 1):
                actuations[site_control(stage, SELECT_SIZE - 2 - stage)] = _site(stage != chosen)
        else:
            for stage in range(1, SELECT_SIZE):
                if stage <= output:
                    actuations[site_control(stage, stage - 1)] = CROSS
                elif stage == output + 1:
                    actuations[site_control(stage, stage - 1)] = BAR
    return SwitchState(actuations=actuations)


def _sites_to_state(sites: Sites, color: int | None = None) -> dict[str, ActuationEnum]:
    return {site_control(stage, rail, color): actuation for (stage, rail), actuation in sites.items()}


def _route_sites(kind: ArchitectureKindEnum, sigma: list[int]) -> Sites:
    match kind:
        case ArchitectureKindEnum.CLOS_BENES_16:
            return route_two_level(sigma, 0, 0, 4, middle=route_baseline)
        case ArchitectureKindEnum.MULTICROSSBAR | ArchitectureKindEnum.WSS_8X8X3:
            return route_benes(sigma)
        case ArchitectureKindEnum.WSS_6X6X4:
            interleave = shuffle(len(sigma), len(sigma))
            rails = [0] * len(sigma)
            for port, output in enumerate(sigma):
                rails[interleave[port]] = output
            return route_two_level(rails, 0, 0, 4, middle=route_odd_even)
    raise ValidationError(f"There is no site router for {kind}!")


def solve_state(layout: CircuitLayout, request: Permutation | WavelengthRequest) -> SwitchState:
    """Find a switch state that realizes a request on a generated layout.

    Inputs not named by a permutation are connected to the unused outputs in ascending order where the architecture
    needs a bijection, and are left unconnected otherwise.

    Parameters
    ----------
    layout: CircuitLayout
        The layout, generated for a supported architecture
    request: Permutation | WavelengthRequest
        The request

    Raises
    ------
    ValidationError
        If the architecture has no solver or the request names ports the layout does not have
    Unroutable
        If the request can not be realized

    Returns
    -------
    SwitchState
        The state, resolving every control of the layout
    """
    if isinstance(request, WavelengthRequest):
        return solve_wavelength_routing(layout, request)
    _check_ports(layout, request.sigma)
    match layout.kind:
        case ArchitectureKindEnum.CROSSPOINT:
            state = _solve_crosspoint(layout, request)
        case ArchitectureKindEnum.SPANKE_BENES | ArchitectureKindEnum.PILOSS:
            sigma = request.completed(len(layout.inputs))
            state = SwitchState(actuations=comparator_states(layout, _output_rails(layout, sigma)))
        case ArchitectureKindEnum.CLOS_BENES_16:
            sigma = request.completed(len(layout.inputs))
            state = SwitchState(actuations=_sites_to_state(_route_sites(layout.kind, sigma)))
        case ArchitectureKindEnum.SELECT_8TO1 | ArchitectureKindEnum.SELECT_1TO8:
            state = _solve_select(layout, request)
        case _:
            raise ValidationError(f"There is no permutation solver for layouts of kind {layout.kind}!")
    debug(f"Solved {request.sigma} on {layout.kind.value} with {state.crosses()} crosses")  # type: ignore[union-attr]
    return state


def _palette_index(layout: CircuitLayout, color_nm: float) -> int:
    for index, color in enumerate(layout.palette):
        if at_color(color, color_nm, q=RESONATOR_Q):
            return index
    raise Unroutable(f"No element of the layout is dedicated to {color_nm} nm!")


def _color_sigma(layout: CircuitLayout, request: WavelengthRequest) -> list[list[int]]:
    n = len(layout.inputs)
    sigmas = []
    for index, color in enumerate(layout.palette):
        routes = [route for route in request.routes if _palette_index(layout, route.color_nm) == index]
        connections = {route.input: route.output for route in routes}
        _check_ports(layout, connections)
        if len(set(connections.values())) != len(connections):
            raise Unroutable(f"Two inputs request the same output at {color} nm!")
        sigmas.append(Permutation(sigma=connections).completed(n))
    return sigmas


def solve_wavelength_routing(layout: CircuitLayout, request: WavelengthRequest) -> SwitchState:
    """Find a switch state that realizes a colored request on a wavelength-routing layout.

    Colors without requested routes are routed straight through.

    Parameters
    ----------
    layout: CircuitLayout
        The layout of a multicrossbar, wavelength-selective switch, cross-connect, multiplexer or demultiplexer
    request: WavelengthRequest
        The request

    Raises
    ------
    ValidationError
        If the layout kind does not route colors or the request names ports the layout does not have
    Unroutable
        If the request uses a color the layout has no elements for, two routes collide on an output and color, or the
        passive routes of a multiplexer or demultiplexer differ from the request

    Returns
    -------
    SwitchState
        The state, resolving every control of the layout
    """
    for route in request.routes:
        _palette_index(layout, route.color_nm)
    match layout.kind:
        case ArchitectureKindEnum.MULTICROSSBAR | ArchitectureKindEnum.WSS_6X6X4 | ArchitectureKindEnum.WSS_8X8X3:
            actuations: dict[str, ActuationEnum] = {}
            for index, sigma in enumerate(_color_sigma(layout, request)):
                actuations |= _sites_to_state(_route_sites(layout.kind, sigma), color=index)
            state = SwitchState(actuations=actuations)
        case ArchitectureKindEnum.WCC_4X4X4:
            block = next(index for index, column in enumerate(layout.columns) if column.permutation is not None)
            signals: dict[int, int] = {}
            for index, sigma in enumerate(_color_sigma(layout, request)):
                for port, output in enumerate(sigma):
                    signals[layout.outputs[port][index]] = layout.outputs[output][index]
            state = SwitchState(actuations=comparator_states(layout, signals, start_column=block + 1))
        case ArchitectureKindEnum.MUX8 | ArchitectureKindEnum.DEMUX8:
            state = SwitchState(actuations={})
            if not verify(layout, state, request).verified:
                raise Unroutable(f"The passive routes of {layout.kind.value} do not realize the request!")
        case _:
            raise ValidationError(f"There is no wavelength routing solver for layouts of kind {layout.kind}!")
    debug(f"Solved {len(request.routes)} colored routes on {layout.kind.value}")  # type: ignore[union-attr]
    return state


def _verified(requested: dict[int, int], traced: dict[int, int | None]) -> bool:
    used = set(requested.values())
    for port, output in traced.items():
        if port in requested:
            if output != requested[port]:
                return False
        elif output in used:
            return False
    return True


def verify(
    layout: CircuitLayout,
    state: SwitchState,
    request: Permutation | WavelengthRequest,
    request_id: int = 0,
) -> RouteRecord:
    """Verify a switch state against a request with the path-trace oracle.

    A state is verified if every requested input reaches its output and no other input reaches a requested output
    (for every requested color).

    Parameters
    ----------
    layout: CircuitLayout
        The layout
    state: SwitchState
        The state
    request: Permutation | WavelengthRequest
        The request
    request_id: int
        The index of the request in a batch

    Raises
    ------
    UnresolvedControl
        If a control of the layout has no state

    Returns
    -------
    RouteRecord
        The verification record
    """
    tracer = Tracer(layout)
    traced: list[TracedRoute] = []
    verified = True
    if isinstance(request, Permutation):
        paths = {path.input: path.output for path in tracer.paths(state)}
        verified = _verified(request.sigma, paths)
        traced = [TracedRoute(input=port, output=output) for port, output in paths.items()]
    else:
        for color in request.colors():
            paths = {path.input: path.output for path in tracer.paths(state, color_nm=color)}
            requested = {route.input: route.output for route in request.for_color(color)}
            verified = verified and _verified(requested, paths)
            traced.extend(TracedRoute(input=port, color_nm=color, output=output) for port, output in paths.items())
    return RouteRecord(
        request_id=request_id,
        verified=verified,
        non_ambient=state.non_ambient(layout.ambient),
        crosses=state.crosses(),
        traced=traced,
    )


def verify_batch(layout: CircuitLayout, requests: list[Permutation] | list[WavelengthRequest]) -> list[RouteRecord]:
    """Solve and verify a batch of requests.

    Parameters
    ----------
    layout: CircuitLayout
        The layout
    requests: list[Permutation] | list[WavelengthRequest]
        The requests

    Returns
    -------
    list[RouteRecord]
        One record per request, unverified (without traced routes) if the request is unroutable
    """
    records = []
    for request_id, request in enumerate(requests):
        try:
            state = solve_state(layout, request)
        except Unroutable as e:
            debug(f"Request {request_id} is unroutable: {e}")
            records.append(RouteRecord(request_id=request_id, verified=False, non_ambient=0, crosses=0))
            continue
        records.append(verify(layout, state, request, request_id=request_id))
    info(f"Verified {sum(record.verified for record in records)} of {len(records)} requests")
    return records
