"""Tests for photon_fabric.netsim.circuit."""
import numpy as np
from pytest import approx, mark, raises

from photon_fabric.common.enums import ActuationEnum, ArchitectureKindEnum, PlacementKindEnum, SwitchModelEnum
from photon_fabric.common.models import Wavelengths
from photon_fabric.config.defaults import CROSSOVER_CROSSTALK, DB_FLOOR, LAMBDA_CENTER, WCC_PALETTE_NM
from photon_fabric.errors import UnresolvedControl
from photon_fabric.fabric.generators import generate
from photon_fabric.fabric.layout import ArchitectureSpec, CircuitLayout, Column, Placement, Terminator
from photon_fabric.netsim import circuit
from photon_fabric.netsim.models import CrossoverParams, DeviceParameterSet, PermutationBlockParams
from photon_fabric.routing.models import Permutation, SwitchState, WavelengthRequest, WavelengthRoute
from photon_fabric.routing.solvers import solve_state


def _crossovers(count: int) -> CircuitLayout:
    return CircuitLayout(
        n_rails=2,
        columns=[Column(placements=[Placement(rail=0, kind=PlacementKindEnum.CROSSOVER)]) for _ in range(count)],
        inputs=[0, 1],
        outputs=[[0], [1]],
    )


def test_circuit_response_empty_layout(straight_4: CircuitLayout, ideal_params: DeviceParameterSet) -> None:
    responses = circuit.circuit_response(straight_4, SwitchState(actuations={}), [LAMBDA_CENTER], ideal_params)
    assert np.allclose(responses[0].matrix, np.eye(4))  # nosec: B101

    metrics = circuit.path_metrics(responses[0], {rail: rail for rail in range(4)})
    assert [entry.insertion_loss_db for entry in metrics] == [0.0] * 4  # nosec: B101
    assert [entry.crosstalk_db for entry in metrics] == [DB_FLOOR] * 4  # nosec: B101


def test_circuit_response_unitary(
    spanke_benes_8: CircuitLayout,
    reversal_8: Permutation,
    ideal_params: DeviceParameterSet,
    c_band: Wavelengths,
) -> None:
    state = solve_state(spanke_benes_8, reversal_8)
    for response in circuit.circuit_response(spanke_benes_8, state, c_band.meters(), ideal_params):
        assert circuit.is_unitary(response.matrix, tol=1e-9)  # nosec: B101



@mark.parametrize("count", [1, 2, 3, 5])
def test_insertion_loss_is_additive(count: int) -> None:
    params = DeviceParameterSet(name="lossy", crossover=CrossoverParams(crosstalk=DB_FLOOR, rolloff=0.0))
    response = circuit.circuit_response(_crossovers(count), SwitchState(actuations={}), [LAMBDA_CENTER], params)[0]
    output = count % 2
    metrics = circuit.path_metrics(response, {0: output})
    assert metrics[0].insertion_loss_db == approx(count * params.crossover.insertion_loss)  # nosec: B101


def test_crossover_crosstalk(nominal_params: DeviceParameterSet) -> None:
    response = circuit.circuit_response(_crossovers(1), SwitchState(actuations={}), [LAMBDA_CENTER], nominal_params)[0]
    metrics = circuit.path_metrics(response, {0: 1, 1: 0})
    assert metrics[0].insertion_loss_db == approx(nominal_params.crossover.insertion_loss)  # nosec: B101
    assert metrics[0].crosstalk_db == approx(CROSSOVER_CROSSTALK)  # nosec: B101
    assert circuit.path_metrics(response, {0: 1}, output_rails=[1])[0].crosstalk_db == DB_FLOOR  # nosec: B101


def test_terminators_absorb(ideal_params: DeviceParameterSet) -> None:
    layout = CircuitLayout(
        n_rails=2,
        columns=[Column(placements=[Placement(rail=0, kind=PlacementKindEnum.CROSSOVER)])],
        terminators=[Terminator(rail=1, column=0)],
        inputs=[0, 1],
        outputs=[[0], [1]],
    )
    response = circuit.circuit_response(layout, SwitchState(actuations={}), [LAMBDA_CENTER], ideal_params)[0]
    assert np.allclose(response.power()[:, 1], 0.0)  # nosec: B101
    assert response.power()[1, 0] == approx(1.0)  # nosec: B101
    assert not circuit.is_unitary(response.matrix)  # nosec: B101


def test_circuit_response_jobs(
    crosspoint_8: CircuitLayout,
    reversal_8: Permutation,
    nominal_params: DeviceParameterSet,
    c_band: Wavelengths,
) -> None:
    state = solve_state(crosspoint_8, reversal_8)
    serial = circuit.circuit_response(crosspoint_8, state, c_band.meters(), nominal_params, jobs=1)
    parallel = circuit.circuit_response(crosspoint_8, state, c_band.meters(), nominal_params, jobs=3)
    assert [response.wavelength for response in parallel] == c_band.meters()  # nosec: B101
    for first, second in zip(serial, parallel):
        assert np.allclose(first.matrix, second.matrix)  # nosec: B101


def test_circuit_response_unresolved(spanke_benes_8: CircuitLayout, ideal_params: DeviceParameterSet) -> None:
    with raises(UnresolvedControl):
        circuit.circuit_response(spanke_benes_8, SwitchState(actuations={}), [LAMBDA_CENTER], ideal_params)


@mark.parametrize("actuation, rail", [(ActuationEnum.BAR, 0), (ActuationEnum.CROSS, 1)])
def test_switch_matrix(actuation: ActuationEnum, rail: int, ideal_params: DeviceParameterSet) -> None:
    """Tests for photon_fabric.netsim.circuit.switch_matrix."""
    state = SwitchState(actuations={"s": actuation})
    switch = Placement(rail=0, kind=PlacementKindEnum.SWITCH, control="s")
    colored = Placement(rail=0, kind=PlacementKindEnum.COLORED_SWITCH, control="s", color_nm=1548.0)
    mzi = ideal_params.copy(update={"switch_model": SwitchModelEnum.MZI})

    def power(placement: Placement, params: DeviceParameterSet, wavelength: float, row: int) -> float:
        return float(np.abs(circuit.switch_matrix(placement, state, params, wavelength)[row, 0]) ** 2)

    assert power(switch, ideal_params, LAMBDA_CENTER, rail) > 0.9  # nosec: B101
    assert power(switch, mzi, LAMBDA_CENTER, rail) == approx(1.0)  # nosec: B101
    assert power(colored, ideal_params, 1548e-9, rail) > 0.9  # nosec: B101
    assert power(colored, ideal_params, LAMBDA_CENTER, 0) > 0.9  # nosec: B101


def test_switch_matrix_delta_n(ideal_params: DeviceParameterSet) -> None:
    switch = Placement(rail=0, kind=PlacementKindEnum.SWITCH, control="s")
    weak = SwitchState(actuations={"s": ActuationEnum.BAR}, delta_n={"s": 1e-5})
    strong = SwitchState(actuations={"s": ActuationEnum.BAR}, delta_n={"s": 1e-2})
    weak_drop = np.abs(circuit.switch_matrix(switch, weak, ideal_params, LAMBDA_CENTER)[1, 0])
    strong_drop = np.abs(circuit.switch_matrix(switch, strong, ideal_params, LAMBDA_CENTER)[1, 0])
    assert strong_drop < weak_drop  # nosec: B101


def test_permutation_block_matrix() -> None:
    """Tests for photon_fabric.netsim.circuit.permutation_block_matrix."""
    ideal = circuit.permutation_block_matrix([1, 2, 0], PermutationBlockParams(insertion_loss=0.0, crosstalk=DB_FLOOR))
    assert np.allclose(np.abs(ideal), [[0, 0, 1], [1, 0, 0], [0, 1, 0]])  # nosec: B101

    lossy = np.abs(circuit.permutation_block_matrix([1, 2, 0], PermutationBlockParams())) ** 2
    assert lossy[1, 0] == approx(10 ** (-PermutationBlockParams().insertion_loss / 10))  # nosec: B101
    assert lossy[2, 0] == approx(10 ** (PermutationBlockParams().crosstalk / 10))  # nosec: B101
    assert lossy[0, 0] == 0.0  # nosec: B101


def test_cascade_ranges(
    crosspoint_8: CircuitLayout,
    reversal_8: Permutation,
    nominal_params: DeviceParameterSet,
) -> None:
    """Tests for photon_fabric.netsim.circuit.cascade."""
    state = solve_state(crosspoint_8, reversal_8)
    middle = len(crosspoint_8.columns) // 2
    whole = circuit.cascade(crosspoint_8, state, nominal_params, LAMBDA_CENTER)
    first = circuit.cascade(crosspoint_8, state, nominal_params, LAMBDA_CENTER, stop=middle)
    second = circuit.cascade(crosspoint_8, state, nominal_params, LAMBDA_CENTER, start=middle)
    assert np.allclose(second @ first, whole)  # nosec: B101
    empty = circuit.cascade(crosspoint_8, state, nominal_params, LAMBDA_CENTER, stop=0)
    assert np.allclose(empty, np.eye(16))  # nosec: B101


def test_intended_rails(crosspoint_8: CircuitLayout) -> None:
    """Tests for photon_fabric.netsim.circuit.intended_rails."""
    assert circuit.intended_rails(crosspoint_8, Permutation(sigma={0: 7, 2: 1})) == {0: 7, 2: 1}  # nosec: B101

    wcc = generate(ArchitectureSpec(kind=ArchitectureKindEnum.WCC_4X4X4))
    request = WavelengthRequest(
        routes=[
            WavelengthRoute(input=0, color_nm=WCC_PALETTE_NM[2], output=1),
            WavelengthRoute(input=2, color_nm=WCC_PALETTE_NM[0], output=3),
        ]
    )
    assert circuit.intended_rails(wcc, request) == {1: 9, 9: 3}  # nosec: B101
    assert circuit.intended_rails(wcc, request, color_nm=WCC_PALETTE_NM[0]) == {9: 3}  # nosec: B101


def test_path_metrics() -> None:
    """Tests for photon_fabric.netsim.circuit.path_metrics."""
    matrix = np.array([[0.1, 0.0], [0.9, 1.0]], dtype=complex)
    response = circuit.TransferMatrix(wavelength=LAMBDA_CENTER, matrix=matrix)
    metrics = circuit.path_metrics(response, {1: 1, 0: 1})
    assert [entry.input_rail for entry in metrics] == [0, 1]  # nosec: B101
    assert metrics[0].insertion_loss_db == approx(-20 * np.log10(0.9))  # nosec: B101
    assert metrics[0].crosstalk_db == approx(-20.0)  # nosec: B101
    assert metrics[1].insertion_loss_db == 0.0  # nosec: B101
    assert metrics[1].crosstalk_db == DB_FLOOR  # nosec: B101


@mark.parametrize(
    "matrix, result",
    [
        (np.eye(3), True),
        (np.array([[0, 1j], [1j, 0]]), True),
        (np.array([[1, 0], [0, 0.5]]), False),
        (np.ones((2, 2)) / np.sqrt(2), False),
    ],
)
def test_is_unitary(matrix: np.ndarray, result: bool) -> None:
    assert circuit.is_unitary(matrix) is result  # nosec: B101
