"""Tests for photon_fabric.routing.solvers."""
from itertools import permutations
from typing import ContextManager

from pytest import mark, raises

from photon_fabric.common.enums import ActuationEnum, ArchitectureKindEnum
from photon_fabric.config.defaults import MUX_PALETTE_NM, WCC_PALETTE_NM, WSS_6X6X4_PALETTE_NM
from photon_fabric.errors import Unroutable, ValidationError
from photon_fabric.fabric.generators import generate
from photon_fabric.fabric.layout import ArchitectureSpec, CircuitLayout
from photon_fabric.routing import solvers
from photon_fabric.routing.models import Permutation, WavelengthRequest, WavelengthRoute

BIT_REVERSAL_8 = [0, 4, 2, 6, 1, 5, 3, 7]


def _clos_request(swapped: bool) -> Permutation:
    outputs = []
    for site in BIT_REVERSAL_8:
        pair = [2 * site + 1, 2 * site] if swapped else [2 * site, 2 * site + 1]
        outputs.extend(pair)
    return Permutation.from_list(outputs)


def _colored(routes: list[tuple[int, float, int]]) -> WavelengthRequest:
    return WavelengthRequest(
        routes=[WavelengthRoute(input=port, color_nm=color, output=output) for port, color, output in routes]
    )


def test_loop_split() -> None:
    """Tests for photon_fabric.routing.solvers.loop_split."""
    assert solvers.loop_split([0, 1, 2, 3]) == ([0, 1, 0, 1], [[0, 1], [2, 3]])  # nosec: B101

    sigma = [3, 0, 1, 2, 5, 4]
    halves, cycles = solvers.loop_split(sigma)
    for pair in range(3):
        assert halves[2 * pair] != halves[2 * pair + 1]  # nosec: B101
    by_output = {output: halves[port] for port, output in enumerate(sigma)}
    for pair in range(3):
        assert by_output[2 * pair] != by_output[2 * pair + 1]  # nosec: B101
    assert sorted(port for cycle in cycles for port in cycle) == list(range(6))  # nosec: B101


def test_route_small_networks() -> None:
    assert solvers.route_benes([1, 0]) == {(0, 0): ActuationEnum.CROSS}  # nosec: B101
    assert solvers.route_odd_even([1, 0], offset=4, stage=2) == {(2, 4): ActuationEnum.CROSS}  # nosec: B101
    assert solvers.route_baseline([0, 2, 1, 3]) == {  # nosec: B101
        (0, 0): ActuationEnum.BAR,
        (0, 2): ActuationEnum.BAR,
        (1, 0): ActuationEnum.BAR,
        (1, 2): ActuationEnum.BAR,
    }
    with raises(Unroutable):
        solvers.route_baseline([0, 1, 2, 3])


def test_route_benes_size() -> None:
    sites = solvers.route_benes(BIT_REVERSAL_8)
    assert len(sites) == 20  # nosec: B101
    assert {stage for stage, _ in sites} == set(range(5))  # nosec: B101


def test_solve_state_crosspoint_reversal(crosspoint_8: CircuitLayout, reversal_8: Permutation) -> None:
    state = solvers.solve_state(crosspoint_8, reversal_8)
    record = solvers.verify(crosspoint_8, state, reversal_8)
    assert record.verified  # nosec: B101
    assert record.non_ambient == 8  # nosec: B101
    assert record.crosses == 56  # nosec: B101


def test_solve_state_identity(spanke_benes_8: CircuitLayout, identity_8: Permutation) -> None:
    state = solvers.solve_state(spanke_benes_8, identity_8)
    assert state.crosses() == 0  # nosec: B101
    assert solvers.verify(spanke_benes_8, state, identity_8).verified  # nosec: B101


@mark.parametrize(
    "kind",
    [ArchitectureKindEnum.CROSSPOINT, ArchitectureKindEnum.SPANKE_BENES, ArchitectureKindEnum.PILOSS],
)
def test_solve_state_random_permutations(kind: ArchitectureKindEnum, random_permutations_8: list[Permutation]) -> None:
    layout = generate(ArchitectureSpec(kind=kind, n=8))
    for permutation in random_permutations_8:
        state = solvers.solve_state(layout, permutation)
        assert solvers.verify(layout, state, permutation).verified  # nosec: B101


@mark.parametrize("kind", [ArchitectureKindEnum.SPANKE_BENES, ArchitectureKindEnum.PILOSS])
def test_solve_state_partial_permutation(kind: ArchitectureKindEnum) -> None:
    layout = generate(ArchitectureSpec(kind=kind, n=5))
    request = Permutation(sigma={1: 4, 3: 0})
    record = solvers.verify(layout, solvers.solve_state(layout, request), request)
    assert record.verified  # nosec: B101
    assert {route.input: route.output for route in record.traced}[1] == 4  # nosec: B101


@mark.parametrize("swapped", [False, True])
def test_solve_state_clos(swapped: bool) -> None:
    layout = generate(ArchitectureSpec(kind=ArchitectureKindEnum.CLOS_BENES_16))
    request = _clos_request(swapped)
    state = solvers.solve_state(layout, request)
    assert len(state.actuations) == 40  # nosec: B101
    assert solvers.verify(layout, state, request).verified  # nosec: B101


def test_solve_state_clos_blocking() -> None:
    layout = generate(ArchitectureSpec(kind=ArchitectureKindEnum.CLOS_BENES_16))
    with raises(Unroutable):
        solvers.solve_state(layout, Permutation.from_list(list(range(16))))


@mark.parametrize(
    "kind, sigma, outputs",
    [
        (ArchitectureKindEnum.SELECT_8TO1, {3: 0}, {3: 0}),
        (ArchitectureKindEnum.SELECT_8TO1, {0: 0}, {0: 0}),
        (ArchitectureKindEnum.SELECT_8TO1, {7: 0}, {7: 0}),
        (ArchitectureKindEnum.SELECT_1TO8, {0: 5}, {0: 5}),
        (ArchitectureKindEnum.SELECT_1TO8, {0: 0}, {0: 0}),
        (ArchitectureKindEnum.SELECT_1TO8, {0: 7}, {0: 7}),
    ],
)
def test_solve_state_select(kind: ArchitectureKindEnum, sigma: dict[int, int], outputs: dict[int, int]) -> None:
    layout = generate(ArchitectureSpec(kind=kind))
    request = Permutation(sigma=sigma)
    record = solvers.verify(layout, solvers.solve_state(layout, request), request)
    assert record.verified  # nosec: B101
    traced = {route.input: route.output for route in record.traced if route.output is not None}
    assert traced == outputs  # nosec: B101


def test_solve_state_select_blocked() -> None:
    layout = generate(ArchitectureSpec(kind=ArchitectureKindEnum.SELECT_8TO1))
    state = solvers.solve_state(layout, Permutation(sigma={}))
    assert state.actuation("gate") == ActuationEnum.CROSS  # nosec: B101
    with raises(ValidationError):
        solvers.solve_state(layout, Permutation(sigma={0: 0, 1: 1}))


def test_solve_state_errors(spanke_benes_8: CircuitLayout) -> None:
    with raises(ValidationError):
        solvers.solve_state(spanke_benes_8, Permutation(sigma={8: 0}))
    with raises(ValidationError):
        solvers.solve_state(generate(ArchitectureSpec(kind=ArchitectureKindEnum.MULTICROSSBAR)), Permutation(sigma={}))


def test_solve_wavelength_routing_multicrossbar() -> None:
    layout = generate(ArchitectureSpec(kind=ArchitectureKindEnum.MULTICROSSBAR))
    request = _colored([(0, 1548.0, 1), (0, 1550.0, 0), (1, 1552.0, 0)])
    state = solvers.solve_state(layout, request)
    assert state.actuations == {  # nosec: B101
        "s0.0@0": ActuationEnum.CROSS,
        "s0.0@1": ActuationEnum.BAR,
        "s0.0@2": ActuationEnum.CROSS,
    }
    assert solvers.verify(layout, state, request).verified  # nosec: B101


def test_solve_wavelength_routing_wss_8x8x3(wss_8x8x3: CircuitLayout, three_color_request: WavelengthRequest) -> None:
    state = solvers.solve_wavelength_routing(wss_8x8x3, three_color_request)
    assert len(state.actuations) == 60  # nosec: B101
    record = solvers.verify(wss_8x8x3, state, three_color_request, request_id=3)
    assert record.verified  # nosec: B101
    assert record.request_id == 3  # nosec: B101
    assert len(record.traced) == 24  # nosec: B101


def test_solve_wavelength_routing_wss_6x6x4() -> None:
    layout = generate(ArchitectureSpec(kind=ArchitectureKindEnum.WSS_6X6X4))
    outputs = [[5, 4, 3, 2, 1, 0], [1, 0, 3, 2, 5, 4], [0, 1, 2, 3, 4, 5], [2, 5, 0, 4, 1, 3]]
    request = _colored(
        [
            (port, color, output)
            for color, sigma in zip(WSS_6X6X4_PALETTE_NM, outputs)
            for port, output in enumerate(sigma)
        ]
    )
    assert solvers.verify(layout, solvers.solve_state(layout, request), request).verified  # nosec: B101


def test_solve_wavelength_routing_wcc_4x4x4() -> None:
    layout = generate(ArchitectureSpec(kind=ArchitectureKindEnum.WCC_4X4X4))
    request = _colored([(0, WCC_PALETTE_NM[0], 2), (3, WCC_PALETTE_NM[2], 0), (1, WCC_PALETTE_NM[3], 1)])
    state = solvers.solve_state(layout, request)
    assert len(state.actuations) == 48  # nosec: B101
    assert solvers.verify(layout, state, request).verified  # nosec: B101


def test_solve_wavelength_routing_demux8() -> None:
    layout = generate(ArchitectureSpec(kind=ArchitectureKindEnum.DEMUX8))
    request = _colored([(0, color, index) for index, color in enumerate(MUX_PALETTE_NM)])
    assert solvers.solve_state(layout, request).actuations == {}  # nosec: B101
    with raises(Unroutable):
        solvers.solve_state(layout, _colored([(0, MUX_PALETTE_NM[0], 3)]))


@mark.parametrize(
    "routes, expectation",
    [
        ([(0, 1548.0, 1), (1, 1548.0, 1)], raises(Unroutable)),
        ([(0, 1600.0, 1)], raises(Unroutable)),
    ],
)
def test_solve_wavelength_routing_unroutable(
    routes: list[tuple[int, float, int]],
    expectation: ContextManager[str],
) -> None:
    layout = generate(ArchitectureSpec(kind=ArchitectureKindEnum.MULTICROSSBAR))
    with expectation:
        solvers.solve_wavelength_routing(layout, _colored(routes))


def test_verify_wrong_state(spanke_benes_8: CircuitLayout, identity_8: Permutation, reversal_8: Permutation) -> None:
    state = solvers.solve_state(spanke_benes_8, identity_8)
    record = solvers.verify(spanke_benes_8, state, reversal_8)
    assert not record.verified  # nosec: B101
    assert record.non_ambient == 28  # nosec: B101


def test_verify_batch() -> None:
    """Tests for photon_fabric.routing.solvers.verify_batch."""
    layout = generate(ArchitectureSpec(kind=ArchitectureKindEnum.CLOS_BENES_16))
    records = solvers.verify_batch(layout, [_clos_request(False), Permutation.from_list(list(range(16)))])
    assert [record.verified for record in records] == [True, False]  # nosec: B101
    assert [record.request_id for record in records] == [0, 1]  # nosec: B101
    assert records[1].traced == []  # nosec: B101


def test_comparator_states_idle(straight_4: CircuitLayout) -> None:
    assert solvers.comparator_states(straight_4, {0: 3}) == {}  # nosec: B101


@mark.integration
def test_solve_state_all_permutations_8(spanke_benes_8: CircuitLayout) -> None:
    for outputs in permutations(range(8)):
        permutation = Permutation.from_list(list(outputs))
        assert solvers.verify(  # nosec: B101
            spanke_benes_8, solvers.solve_state(spanke_benes_8, permutation), permutation
        ).verified


@mark.integration
def test_solve_state_crosspoint_all_permutations_8(crosspoint_8: CircuitLayout) -> None:
    for outputs in permutations(range(8)):
        permutation = Permutation.from_list(list(outputs))
        record = solvers.verify(crosspoint_8, solvers.solve_state(crosspoint_8, permutation), permutation)
        assert record.verified  # nosec: B101
        # one switch per input leaves its ambient state
        assert record.non_ambient == 8  # nosec: B101
