"""Feed-forward transfer-matrix engine for circuit layouts."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from logging import debug
from math import pi

import numpy as np
from pydantic import BaseModel, NonNegativeInt, PositiveFloat

from photon_fabric.common.enums import ActuationEnum, PlacementKindEnum, SwitchModelEnum
from photon_fabric.common.models import ArrayModel
from photon_fabric.config.defaults import DB_FLOOR, RESONATOR_BAR_SHIFT
from photon_fabric.fabric.layout import CircuitLayout, Column, Placement
from photon_fabric.netsim.models import (
    DeviceParameterSet,
    PermutationBlockParams,
    crossover_matrix,
    mzi_matrix,
    resonator_matrix,
)
from photon_fabric.routing.models import Permutation, SwitchState, WavelengthRequest
from photon_fabric.routing.trace import check_state


class TransferMatrix(ArrayModel):
    """The field transmission of a circuit at one wavelength.

    Attributes
    ----------
    wavelength: float
        The free-space wavelength (m)
    matrix: np.ndarray
        The n_rails x n_rails complex amplitudes, entry (j, i) for input rail i to output rail j
    """

    wavelength: PositiveFloat
    matrix: np.ndarray

    def power(self) -> np.ndarray:
        """Return the power transmission of every matrix entry."""
        return np.abs(self.matrix) ** 2


class PathMetrics(BaseModel):
    """The insertion loss and worst-case crosstalk of one intended path at one wavelength.

    Attributes
    ----------
    wavelength: float
        The free-space wavelength (m)
    input_rail: int
        The rail the path starts on
    output_rail: int
        The rail the path is intended to end on
    insertion_loss_db: float
        -20 log10 of the intended amplitude
    crosstalk_db: float
        20 log10 of the largest amplitude reaching any other considered output rail, at least DB_FLOOR
    """

    wavelength: PositiveFloat
    input_rail: NonNegativeInt
    output_rail: NonNegativeInt
    insertion_loss_db: float
    crosstalk_db: float


def _db(amplitude: float) -> float:
    if amplitude <= 0.0:
        return DB_FLOOR
    return max(float(20 * np.log10(amplitude)), DB_FLOOR)


def switch_matrix(
    placement: Placement,
    state: SwitchState,
    params: DeviceParameterSet,
    wavelength: float,
) -> np.ndarray:
    """Return the scattering matrix of an actuated element in its state.

    Resonator-based elements are in cross (drop) state at their untuned resonance and are shifted by the state's index
    shift, or by RESONATOR_BAR_SHIFT, into bar state. Broadband switches of the MZI model take a phase of 0 for bar
    and pi for cross.

    Parameters
    ----------
    placement: Placement
        The actuated element
    state: SwitchState
        The state of the controls
    params: DeviceParameterSet
        The behavioral parameters
    wavelength: float
        The free-space wavelength (m)

    Raises
    ------
    UnresolvedControl
        If the control of the element has no state

    Returns
    -------
    np.ndarray
        The 2x2 matrix
    """
    control: str = placement.control  # type: ignore[assignment]
    bar = state.actuation(control) == ActuationEnum.BAR
    if placement.kind == PlacementKindEnum.SWITCH and params.switch_model == SwitchModelEnum.MZI:
        return mzi_matrix(params.coupler, phase=0.0 if bar else pi, wavelength=wavelength)
    delta_n = state.delta_n.get(control, RESONATOR_BAR_SHIFT) if bar else 0.0
    lambda_r0 = placement.color_nm * 1e-9 if placement.color_nm is not None else params.resonator.lambda_r0
    return resonator_matrix(params.resonator.tuned(lambda_r0=lambda_r0, delta_n=delta_n), wavelength)


def element_matrix(
    placement: Placement,
    state: SwitchState,
    params: DeviceParameterSet,
    wavelength: float,
) -> np.ndarray:
    """Return the scattering matrix of any element.

    Parameters
    ----------
    placement: Placement
        The element
    state: SwitchState
        The state of the controls
    params: DeviceParameterSet
        The behavioral parameters
    wavelength: float
        The free-space wavelength (m)

    Returns
    -------
    np.ndarray
        The 2x2 matrix
    """
    match placement.kind:
        case PlacementKindEnum.CROSSOVER:
            return crossover_matrix(params.crossover, wavelength)
        case PlacementKindEnum.ADD_DROP:
            color = placement.color_nm * 1e-9  # type: ignore[operator]
            return resonator_matrix(params.resonator.tuned(lambda_r0=color, delta_n=0.0), wavelength)
    return switch_matrix(placement, state, params, wavelength)


def permutation_block_matrix(destinations: list[int], p: PermutationBlockParams) -> np.ndarray:
    """Return the matrix of an abstract permutation block.

    Every rail is routed to its destination with the block's insertion loss and leaks into the destinations of its
    neighboring rails.

    Parameters
    ----------
    destinations: list[int]
        The destination rail of every rail
    p: PermutationBlockParams
        The block

    Returns
    -------
    np.ndarray
        The n_rails x n_rails matrix
    """
    n = len(destinations)
    leak = 10 ** (p.crosstalk / 10)
    neighbors = [[other for other in (rail - 1, rail + 1) if 0 <= other < n] for rail in range(n)]
    matrix = np.zeros((n, n), dtype=complex)
    for rail, destination in enumerate(destinations):
        through = min(10 ** (-p.insertion_loss / 10), 1.0 - len(neighbors[rail]) * leak)
        matrix[destination, rail] = np.sqrt(max(through, 0.0))
        for other in neighbors[rail]:
            matrix[destinations[other], rail] = 1j * np.sqrt(leak)
    return matrix


def _absorbers(layout: CircuitLayout, column: int) -> np.ndarray:
    diagonal = np.ones(layout.n_rails)
    for terminator in layout.terminators:
        if terminator.column == column:
            diagonal[terminator.rail] = 0.0
    return np.diag(diagonal).astype(complex)


def column_matrix(
    layout: CircuitLayout,
    index: int,
    state: SwitchState,
    params: DeviceParameterSet,
    wavelength: float,
) -> np.ndarray:
    """Return the matrix of one column, including the terminators in front of it.

    Parameters
    ----------
    layout: CircuitLayout
        The layout
    index: int
        The index of the column (the number of columns for the terminators at the end of the layout)
    state: SwitchState
        The state of the controls
    params: DeviceParameterSet
        The behavioral parameters
    wavelength: float
        The free-space wavelength (m)

    Returns
    -------
    np.ndarray
        The n_rails x n_rails matrix
    """
    absorbers = _absorbers(layout, index)
    if index == len(layout.columns):
        return absorbers
    column: Column = layout.columns[index]
    if column.permutation is not None:
        return permutation_block_matrix(column.permutation, params.permutation_block) @ absorbers
    block = np.eye(layout.n_rails, dtype=complex)
    for placement in column.placements:
        rails = slice(placement.rail, placement.rail + 2)
        block[rails, rails] = element_matrix(placement, state, params, wavelength)
    return block @ absorbers


def cascade(
    layout: CircuitLayout,
    state: SwitchState,
    params: DeviceParameterSet,
    wavelength: float,
    start: int = 0,
    stop: int | None = None,
) -> np.ndarray:
    """Return the product of the matrices of a range of columns.

    Parameters
    ----------
    layout: CircuitLayout
        The layout
    state: SwitchState
        The state of the controls
    params: DeviceParameterSet
        The behavioral parameters
    wavelength: float
        The free-space wavelength (m)
    start: int
        The first column
    stop: int | None
        The column after the last one, None for the whole layout including its end terminators

    Returns
    -------
    np.ndarray
        The matrix of the columns start to stop - 1, applied in order of propagation
    """
    stop = len(layout.columns) + 1 if stop is None else stop
    total = np.eye(layout.n_rails, dtype=complex)
    for index in range(start, stop):
        total = column_matrix(layout, index, state, params, wavelength) @ total
    return total


def circuit_response(
    layout: CircuitLayout,
    state: SwitchState,
    wavelengths: list[float],
    params: DeviceParameterSet,
    jobs: int = 1,
) -> list[TransferMatrix]:
    """Compute the transmission of a circuit at several wavelengths.

    Parameters
    ----------
    layout: CircuitLayout
        The layout
    state: SwitchState
        The state, resolving every control of the layout
    wavelengths: list[float]
        The free-space wavelengths (m)
    params: DeviceParameterSet
        The behavioral parameters
    jobs: int
        The number of wavelengths computed concurrently

    Raises
    ------
    UnresolvedControl
        If a control of the layout has no state

    Returns
    -------
    list[TransferMatrix]
        One transfer matrix per wavelength
    """
    check_state(layout, state)

    def response(wavelength: float) -> TransferMatrix:
        return TransferMatrix(wavelength=wavelength, matrix=cascade(layout, state, params, wavelength))

    debug(f"Computing {len(wavelengths)} responses of {len(layout.columns)} columns with '{params.name}'")
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            return list(executor.map(response, wavelengths))
    return [response(wavelength) for wavelength in wavelengths]


def intended_rails(
    layout: CircuitLayout,
    request: Permutation | WavelengthRequest,
    color_nm: float | None = None,
) -> dict[int, int]:
    """Translate a request into the intended output rail of every connected input rail.

    Parameters
    ----------
    layout: CircuitLayout
        The layout
    request: Permutation | WavelengthRequest
        The request
    color_nm: float | None
        The color (nm) to select the routes of a wavelength request by

    Returns
    -------
    dict[int, int]
        The intended output rail of every connected input rail
    """
    if isinstance(request, Permutation):
        return {layout.inputs[port]: layout.outputs[output][0] for port, output in request.sigma.items()}
    routes = request.routes if color_nm is None else request.for_color(color_nm)
    rails: dict[int, int] = {}
    for route in routes:
        group = layout.outputs[route.output]
        index = layout.palette.index(route.color_nm) if len(group) > 1 and route.color_nm in layout.palette else 0
        rails[layout.inputs[route.input]] = group[index]
    return rails


def path_metrics(
    response: TransferMatrix,
    intended: dict[int, int],
    output_rails: list[int] | None = None,
) -> list[PathMetrics]:
    """Compute insertion loss and worst-case crosstalk of the intended paths of a response.

    Parameters
    ----------
    response: TransferMatrix
        The response
    intended: dict[int, int]
        The intended output rail of every connected input rail
    output_rails: list[int] | None
        The rails considered for crosstalk, None for all rails

    Returns
    -------
    list[PathMetrics]
        The metrics of every intended path, ordered by input rail
    """
    amplitudes = np.abs(response.matrix)
    rails = list(range(amplitudes.shape[0])) if output_rails is None else output_rails
    metrics = []
    for input_rail, output_rail in sorted(intended.items()):
        others = [amplitudes[rail, input_rail] for rail in rails if rail != output_rail]
        metrics.append(
            PathMetrics(
                wavelength=response.wavelength,
                input_rail=input_rail,
                output_rail=output_rail,
                insertion_loss_db=-_db(float(amplitudes[output_rail, input_rail])),
                crosstalk_db=_db(float(max(others, default=0.0))),
            )
        )
    return metrics


def is_unitary(matrix: np.ndarray, tol: float = 1e-9) -> bool:
    """Return whether a matrix is unitary within a tolerance.

    Parameters
    ----------
    matrix: np.ndarray
        A square complex matrix
    tol: float
        The largest tolerated entry of |M^H M - I|

    Returns
    -------
    bool
        True if the matrix is unitary, False otherwise
    """
    deviation = matrix.conj().T @ matrix - np.eye(matrix.shape[0])
    return bool(np.max(np.abs(deviation), initial=0.0) < tol)
