"""Frequency-domain solver for the scalar Helmholtz equation with stretched-coordinate absorbing layers.

The out-of-plane field E of a time-harmonic exp(-i*omega*t) problem satisfies

    (1/sx) d/dx (1/sx dE/dx) + (1/sy) d/dy (1/sy dE/dy) + k0^2 eps E = b

which, multiplied by sx * sy, is discretized into a complex-symmetric sparse system A E = sx * sy * b. The symmetric
form lets the adjoint problem reuse the factorization of A through a transposed solve.
"""
from __future__ import annotations

from hashlib import sha256
from logging import debug
from math import sqrt
from pathlib import Path
from threading import Lock
from time import perf_counter

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, NonNegativeFloat, PositiveInt, validator
from scipy.sparse.linalg import splu

from photon_fabric.common.enums import PortRoleEnum
from photon_fabric.common.models import ArrayModel
from photon_fabric.em.grid import SimulationGrid
from photon_fabric.em.modes import ModeProfile
from photon_fabric.errors import SolverFailure, ValidationError


class PortSpec(ArrayModel):
    """A mode placed on a grid, acting as source or monitor.

    Attributes
    ----------
    role: PortRoleEnum
        Whether the port injects (source) or measures (monitor) the mode
    mode: ModeProfile
        The placed mode (its cut must be set)
    phase: float
        The phase of the injected mode (rad)
    weight: float
        The injected power of a source (the modal amplitude is sqrt(weight))
    """

    role: PortRoleEnum
    mode: ModeProfile
    phase: float = 0.0
    weight: NonNegativeFloat = 1.0

    @validator("mode")
    def validate_mode(cls, mode: ModeProfile) -> ModeProfile:
        """Validate that the mode of a port is placed on a cut."""
        if mode.cut is None:
            raise ValueError("A port requires a mode that is placed on a cut!")
        return mode

    @property
    def amplitude(self) -> complex:
        """The complex modal amplitude of a source."""
        return complex(sqrt(self.weight) * np.exp(1j * self.phase))


class ComplexField(ArrayModel):
    """The complex out-of-plane field of a solve.

    Attributes
    ----------
    values: np.ndarray
        The nx x ny complex field
    """

    values: np.ndarray

    @validator("values", pre=True)
    def validate_values(cls, values: np.ndarray) -> np.ndarray:
        """Validate that a field is 2D and freeze it."""
        field = np.array(values, dtype=complex)
        if field.ndim != 2:
            raise ValueError(f"A field must be 2D, but has shape {field.shape}!")
        field.setflags(write=False)
        return field


class SolveOptions(BaseModel):
    """Options of field solves.

    Attributes
    ----------
    jobs: int
        The maximum number of concurrent solves (defaults to 1)
    cache_dir: Path | None
        An optional directory in which solutions are cached by content hash
    """

    jobs: PositiveInt = 1
    cache_dir: Path | None = None


class SolveCounter:
    """A thread-safe counter of linear solves."""

    def __init__(self) -> None:
        """Initialize a counter at zero."""
        self._lock = Lock()
        self._count = 0

    def increment(self, by: int = 1) -> None:
        """Add to the counter."""
        with self._lock:
            self._count += by

    def reset(self) -> None:
        """Set the counter back to zero."""
        with self._lock:
            self._count = 0

    @property
    def count(self) -> int:
        """Return the number of solves so far."""
        with self._lock:
            return self._count


solve_counter = SolveCounter()


def _second_difference(cells: int, stretch_half: np.ndarray) -> sp.csr_matrix:
    forward = sp.diags([-np.ones(cells), np.ones(cells - 1)], [0, 1], format="csr")
    return -(forward.T @ sp.diags(1.0 / stretch_half) @ forward)


def system_matrix(grid: SimulationGrid) -> sp.csc_matrix:
    """Assemble the complex-symmetric system matrix of a grid.

    Parameters
    ----------
    grid: SimulationGrid
        The grid to assemble the matrix for

    Returns
    -------
    sp.csc_matrix
        The (nx * ny) x (nx * ny) matrix acting on fields flattened with index i * ny + j
    """
    sx, sy = grid.stretch(grid.nx), grid.stretch(grid.ny)
    dxx = _second_difference(grid.nx, grid.stretch(grid.nx, half=True))
    dyy = _second_difference(grid.ny, grid.stretch(grid.ny, half=True))
    laplacian = (sp.kron(dxx, sp.diags(sy)) + sp.kron(sp.diags(sx), dyy)) / grid.dx**2
    mass = grid.k0**2 * np.outer(sx, sy).ravel() * grid.eps_r.ravel()
    return sp.csc_matrix(laplacian + sp.diags(mass))


def permittivity_derivative(grid: SimulationGrid) -> np.ndarray:
    """Return the derivative of the diagonal of the system matrix with respect to each permittivity entry.

    Parameters
    ----------
    grid: SimulationGrid
        The grid

    Returns
    -------
    np.ndarray
        The nx x ny array k0^2 * sx * sy
    """
    return grid.k0**2 * np.outer(grid.stretch(grid.nx), grid.stretch(grid.ny))


def _check_interior(grid: SimulationGrid, port: PortSpec, offset: int = 0) -> None:
    cut = port.mode.cut
    assert cut is not None  # nosec: B101
    if not grid.is_interior(cut.x + offset, cut.y_start, cut.y_stop):
        raise ValidationError(
            f"The {port.role.value} cut at x={cut.x + offset}, y={cut.y_start}:{cut.y_stop} is not inside the "
            f"interior of a {grid.nx} x {grid.ny} grid with {grid.pml_cells} absorbing cells!"
        )


def _delay(mode: ModeProfile) -> complex:
    return complex(np.exp(-1j * mode.beta_discrete * mode.dx))


def source_vector(grid: SimulationGrid, sources: list[PortSpec]) -> np.ndarray:
    """Return the right hand side b of a set of directional mode sources.

    Each source is a pair of lines at the cut and one cell further along its direction. The second line carries the
    first line's amplitude, negated and delayed by one cell of propagation, so that the pair radiates only along its
    direction. The launched mode has the amplitude of the source on the second line.

    The monitor of overlap_vector is the transpose of this pair, so that port-to-port coefficients of the symmetric
    system are reciprocal.

    Parameters
    ----------
    grid: SimulationGrid
        The grid
    sources: list[PortSpec]
        The sources

    Raises
    ------
    ValidationError
        If a source line is not inside the interior of the grid

    Returns
    -------
    np.ndarray
        The nx x ny complex source term
    """
    b = np.zeros((grid.nx, grid.ny), dtype=complex)
    for source in sources:
        _check_interior(grid=grid, port=source)
        _check_interior(grid=grid, port=source, offset=int(source.mode.direction))
        cut = source.mode.cut
        assert cut is not None  # nosec: B101
        if not np.isclose(source.mode.dx, grid.dx):
            raise ValidationError(
                f"A mode solved with dx={source.mode.dx} can not be injected on a grid with dx={grid.dx}!"
            )
        # modes must be solved at the wavelength of the grid
        line = source.amplitude / grid.dx**2 * source.mode.amplitude
        b[cut.x, cut.y_start : cut.y_stop] += line
        b[cut.x + int(source.mode.direction), cut.y_start : cut.y_stop] -= line * _delay(source.mode)
    return b


def overlap_vector(grid: SimulationGrid, monitor: PortSpec) -> np.ndarray:
    """Return the vector v with mode_overlap(E, monitor) == v @ E.ravel().

    The monitor reads the lines at its cut and one cell against its direction. It is the source pair of a mode
    launched against the monitor's direction from the same cut, scaled to return the amplitude of the monitored mode
    at the cut. Modes travelling against the monitor's direction do not contribute.

    Parameters
    ----------
    grid: SimulationGrid
        The grid
    monitor: PortSpec
        The monitor

    Raises
    ------
    ValidationError
        If the monitor is not inside the interior of the grid

    Returns
    -------
    np.ndarray
        The flattened complex overlap vector
    """
    _check_interior(grid=grid, port=monitor)
    _check_interior(grid=grid, port=monitor, offset=-int(monitor.mode.direction))
    cut = monitor.mode.cut
    assert cut is not None  # nosec: B101
    near, far = _monitor_weights(monitor.mode)
    vector = np.zeros((grid.nx, grid.ny), dtype=complex)
    vector[cut.x, cut.y_start : cut.y_stop] = near
    vector[cut.x - int(monitor.mode.direction), cut.y_start : cut.y_stop] = far
    return vector.ravel()


def _monitor_weights(mode: ModeProfile) -> tuple[np.ndarray, np.ndarray]:
    delay = _delay(mode)
    scale = 1.0 / (1.0 - delay**2)
    return scale * mode.amplitude, -scale * delay * mode.amplitude


class Factorization:
    """A sparse LU factorization of the system matrix of a grid.

    Every call to solve or solve_transpose counts as one solve per right hand side in solve_counter.
    """

    def __init__(self, grid: SimulationGrid) -> None:
        """Factorize the system matrix of a grid."""
        self.grid = grid
        start = perf_counter()
        matrix = system_matrix(grid)
        try:
            self._lu = splu(matrix)
        except (RuntimeError, MemoryError) as e:
            raise SolverFailure(f"The system matrix of a {grid.nx} x {grid.ny} grid could not be factorized!\n{e}")
        debug(
            f"Factorized {matrix.shape[0]} unknowns ({self._lu.L.nnz + self._lu.U.nnz} factor entries) in "
            f"{perf_counter() - start:.3f} s"
        )

    def _solve(self, rhs: np.ndarray, trans: str) -> np.ndarray:
        columns = 1 if rhs.ndim == 1 else rhs.shape[1]
        solution = self._lu.solve(np.ascontiguousarray(rhs, dtype=complex), trans=trans)
        if not np.all(np.isfinite(solution)):
            raise SolverFailure("The sparse solve returned non-finite values!")
        solve_counter.increment(by=columns)
        return solution

    def solve(self, b: np.ndarray) -> np.ndarray:
        """Solve A E = sx * sy * b.

        Parameters
        ----------
        b: np.ndarray
            A nx x ny source term

        Raises
        ------
        SolverFailure
            If the solution is not finite

        Returns
        -------
        np.ndarray
            The nx x ny field
        """
        scale = np.outer(self.grid.stretch(self.grid.nx), self.grid.stretch(self.grid.ny)).ravel()
        return self._solve(scale * b.ravel(), trans="N").reshape(b.shape)

    def solve_transpose(self, rhs: np.ndarray) -> np.ndarray:
        """Solve the adjoint system A^T x = rhs.

        Parameters
        ----------
        rhs: np.ndarray
            A flattened right hand side

        Raises
        ------
        SolverFailure
            If the solution is not finite

        Returns
        -------
        np.ndarray
            The flattened solution
        """
        return self._solve(rhs, trans="T")


def _cache_key(grid: SimulationGrid, b: np.ndarray) -> str:
    digest = sha256()
    digest.update(np.ascontiguousarray(grid.eps_r).tobytes())
    digest.update(
        np.array([grid.dx, grid.lambda0, grid.pml_cells, grid.pml_order, grid.sigma_max], dtype=float).tobytes()
    )
    digest.update(np.ascontiguousarray(b).tobytes())
    return digest.hexdigest()


def solve_many(
    grid: SimulationGrid,
    source_sets: list[list[PortSpec]],
    options: SolveOptions | None = None,
) -> list[ComplexField]:
    """Solve several source sets on one grid with a single factorization.

    Parameters
    ----------
    grid: SimulationGrid
        The grid
    source_sets: list[list[PortSpec]]
        One list of sources per requested field
    options: SolveOptions | None
        Optional solve options (a cache directory is used if it is set)

    Raises
    ------
    ValidationError
        If a source is outside of the interior of the grid
    SolverFailure
        If the factorization or a solve fails

    Returns
    -------
    list[ComplexField]
        The fields in the order of source_sets
    """
    options = options or SolveOptions()
    terms = [source_vector(grid=grid, sources=sources) for sources in source_sets]
    fields: list[np.ndarray | None] = [None] * len(terms)
    keys = [_cache_key(grid=grid, b=b) for b in terms] if options.cache_dir else []

    if options.cache_dir:
        for index, key in enumerate(keys):
            path = options.cache_dir / f"{key}.npy"
            if path.exists():
                debug(f"Field cache hit: {path}")
                fields[index] = np.load(path)
            else:
                debug(f"Field cache miss: {path}")

    missing = [index for index, field in enumerate(fields) if field is None]
    if missing:
        factorization = Factorization(grid=grid)
        for index in missing:
            fields[index] = factorization.solve(terms[index])
            if options.cache_dir:
                np.save(options.cache_dir / f"{keys[index]}.npy", fields[index])

    return [ComplexField(values=field) for field in fields]


def solve_fields(
    grid: SimulationGrid,
    sources: list[PortSpec],
    options: SolveOptions | None = None,
) -> ComplexField:
    """Solve for the field excited by a set of sources.

    Parameters
    ----------
    grid: SimulationGrid
        The grid
    sources: list[PortSpec]
        The sources (an empty list yields a zero field)
    options: SolveOptions | None
        Optional solve options

    Raises
    ------
    ValidationError
        If a source is outside of the interior of the grid
    SolverFailure
        If the factorization or the solve fails

    Returns
    -------
    ComplexField
        The field on the grid
    """
    return solve_many(grid=grid, source_sets=[sources], options=options)[0]


def mode_overlap(field: ComplexField, monitor: PortSpec) -> complex:
    """Return the amplitude of the mode travelling in the direction of a monitor at its cut.

    The lines at the cut and one cell behind it are read, see overlap_vector.

    Parameters
    ----------
    field: ComplexField
        The field
    monitor: PortSpec
        The monitor, whose mode is normalized to unit self-overlap

    Raises
    ------
    ValueError
        If the monitor lines do not fit on the field

    Returns
    -------
    complex
        The coupling coefficient a with transmitted power |a|^2
    """
    cut = monitor.mode.cut
    assert cut is not None  # nosec: B101
    nx, ny = field.values.shape
    behind = cut.x - int(monitor.mode.direction)
    if not (0 <= min(cut.x, behind) and max(cut.x, behind) < nx and cut.y_stop <= ny):
        raise ValueError(
            f"The monitor cut at x={cut.x}, y={cut.y_start}:{cut.y_stop} does not fit a {nx} x {ny} field!"
        )
    near, far = _monitor_weights(monitor.mode)
    lines = field.values[:, cut.y_start : cut.y_stop]
    return complex(near @ lines[cut.x] + far @ lines[behind])


def transmission(
    grid: SimulationGrid,
    source: PortSpec,
    monitor: PortSpec,
    options: SolveOptions | None = None,
) -> complex:
    """Return the complex port-to-port coefficient of a grid.

    Parameters
    ----------
    grid: SimulationGrid
        The grid
    source: PortSpec
        The source port
    monitor: PortSpec
        The monitor port
    options: SolveOptions | None
        Optional solve options

    Returns
    -------
    complex
        The modal amplitude at monitor for a unit source
    """
    unit = PortSpec(role=PortRoleEnum.SOURCE, mode=source.mode)
    return mode_overlap(field=solve_fields(grid=grid, sources=[unit], options=options), monitor=monitor)
