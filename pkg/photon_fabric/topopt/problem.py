"""Design problems, their objective and its adjoint gradient.

Every condition contributes F_c = 1 - sum_t w_t * (P_t - G_t)^2 with port powers P_t = |a_t|^2 of the modal amplitudes
a_t = v_t . E. The gradient with respect to the permittivity follows from one forward solve A E = b and one adjoint
solve A^T lambda = sum_t -4 * w_t * (P_t - G_t) * conj(a_t) * v_t per condition:

    dF_c / d eps_k = Re(-lambda_k * k0^2 * sx_k * sy_k * E_k)
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from itertools import groupby
from logging import debug

import numpy as np
from pydantic import BaseModel, NonNegativeFloat, PositiveFloat, validator

from photon_fabric.common.models import ArrayModel
from photon_fabric.config.defaults import EPS_SILICA, EPS_SILICON
from photon_fabric.em.grid import SimulationGrid
from photon_fabric.em.solver import (
    Factorization,
    PortSpec,
    SolveOptions,
    overlap_vector,
    permittivity_derivative,
    source_vector,
)
from photon_fabric.errors import ValidationError
from photon_fabric.topopt.density import (
    DensityField,
    FilterSpec,
    block_sum,
    density_to_permittivity,
    filter_and_project,
    filter_and_project_vjp,
    upsample,
)


class Target(ArrayModel):
    """A monitored port with its goal power.

    Attributes
    ----------
    name: str
        The name of the port (e.g. "top_out")
    monitor: PortSpec
        The monitor
    goal: float
        The goal power
    weight: float
        The weight of the squared deviation from goal
    intended: bool
        Whether power at the port is wanted (True) or leakage (False)
    """

    name: str
    monitor: PortSpec
    goal: NonNegativeFloat
    weight: NonNegativeFloat = 1.0
    intended: bool = True


class ExcitationCondition(ArrayModel):
    """A set of sources at one wavelength with the goal powers they should produce.

    Attributes
    ----------
    name: str
        The name of the condition
    wavelength: float
        The free-space wavelength (m)
    sources: list[PortSpec]
        The sources, with modes solved at wavelength
    targets: list[Target]
        The monitored ports
    weight: float
        The weight of the condition in the objective
    reflection: Target | None
        An optional monitor of the power returning towards the sources, reported but not part of the objective
    """

    name: str
    wavelength: PositiveFloat
    sources: list[PortSpec]
    targets: list[Target]
    weight: NonNegativeFloat = 1.0
    reflection: Target | None = None

    @validator("targets")
    def validate_goals(cls, targets: list[Target], values: dict[str, object]) -> list[Target]:
        """Validate that no goal power exceeds the injected power.

        Parameters
        ----------
        targets: list[Target]
            The targets
        values: dict[str, object]
            The fields validated so far

        Raises
        ------
        ValueError
            If a goal exceeds the total injected power

        Returns
        -------
        list[Target]
            The validated targets
        """
        sources: list[PortSpec] = values.get("sources", [])  # type: ignore[assignment]
        injected = sum(source.weight for source in sources)
        for target in targets:
            if target.goal > injected + 1e-12:
                raise ValueError(f"The goal {target.goal} of port {target.name} exceeds the injected power {injected}!")
        return targets

    def injected_power(self) -> float:
        """Return the total injected power."""
        return float(sum(source.weight for source in self.sources))


class DesignProblem(ArrayModel):
    """The geometry, excitations and goals of one device.

    Attributes
    ----------
    name: str
        The name of the problem
    grid: SimulationGrid
        The background grid (leads and cladding); the design region is overwritten by the densities
    design_origin: tuple[int, int]
        The grid cell of the lower left corner of the design region
    design_shape: tuple[int, int]
        The number of design pixels along x and y
    pixel_pitch: float
        The edge length of a design pixel (m), an integer multiple of the grid's dx
    conditions: list[ExcitationCondition]
        The excitation conditions
    filter: FilterSpec
        The filter and projection applied to densities before they become material
    """

    name: str
    grid: SimulationGrid
    design_origin: tuple[int, int]
    design_shape: tuple[int, int]
    pixel_pitch: PositiveFloat
    conditions: list[ExcitationCondition]
    filter: FilterSpec = FilterSpec()

    @validator("pixel_pitch")
    def validate_pixel_pitch(cls, pixel_pitch: float, values: dict[str, object]) -> float:
        """Validate that a pixel spans a whole number of grid cells."""
        grid: SimulationGrid | None = values.get("grid")  # type: ignore[assignment]
        if grid is not None:
            ratio = pixel_pitch / grid.dx
            if abs(ratio - round(ratio)) > 1e-6 or round(ratio) < 1:
                raise ValueError(f"The pixel pitch {pixel_pitch} is not a multiple of the cell size {grid.dx}!")
        return pixel_pitch

    @property
    def cells_per_pixel(self) -> int:
        """Return the number of grid cells along one pixel edge."""
        return int(round(self.pixel_pitch / self.grid.dx))

    def design_slices(self) -> tuple[slice, slice]:
        """Return the grid cells covered by the design region.

        Returns
        -------
        tuple[slice, slice]
            The slices along x and y
        """
        factor = self.cells_per_pixel
        x0, y0 = self.design_origin
        return (
            slice(x0, x0 + self.design_shape[0] * factor),
            slice(y0, y0 + self.design_shape[1] * factor),
        )

    def with_filter(self, spec: FilterSpec) -> DesignProblem:
        """Return a copy of the problem with another filter.

        Parameters
        ----------
        spec: FilterSpec
            The new filter

        Returns
        -------
        DesignProblem
            The problem with spec as filter
        """
        return self.copy(update={"filter": spec})

    def with_conditions(self, conditions: list[ExcitationCondition]) -> DesignProblem:
        """Return a copy of the problem with other conditions.

        Parameters
        ----------
        conditions: list[ExcitationCondition]
            The new conditions

        Returns
        -------
        DesignProblem
            The problem with conditions replaced
        """
        return self.copy(update={"conditions": conditions})

    def empty_density(self, value: float = 0.0) -> DensityField:
        """Return a uniform density field placed on the design region.

        Parameters
        ----------
        value: float
            The uniform density (defaults to 0.0)

        Returns
        -------
        DensityField
            The density field
        """
        return DensityField(
            rho=np.full(self.design_shape, value),
            pixel_pitch=self.pixel_pitch,
            origin=self.design_origin,
        )

    def permittivity(self, rho_tilde: np.ndarray) -> np.ndarray:
        """Return the permittivity map of the grid with the design region set from projected densities.

        Parameters
        ----------
        rho_tilde: np.ndarray
            The projected densities

        Returns
        -------
        np.ndarray
            The nx x ny permittivity map
        """
        eps = np.array(self.grid.eps_r)
        eps[self.design_slices()] = upsample(density_to_permittivity(rho_tilde), self.cells_per_pixel)
        return eps

    def check_density(self, rho: DensityField) -> None:
        """Validate that a density field fits the design region.

        Parameters
        ----------
        rho: DensityField
            The density field

        Raises
        ------
        ValidationError
            If its shape or pitch do not match the design region, or the region does not fit inside the grid
        """
        if rho.shape != tuple(self.design_shape) or not np.isclose(rho.pixel_pitch, self.pixel_pitch):
            raise ValidationError(
                f"A density of shape {rho.shape} and pitch {rho.pixel_pitch} does not fit the design region of "
                f"'{self.name}' (shape {self.design_shape}, pitch {self.pixel_pitch})!"
            )
        x_slice, y_slice = self.design_slices()
        if x_slice.stop > self.grid.nx or y_slice.stop > self.grid.ny:
            raise ValidationError(f"The design region of '{self.name}' does not fit inside its grid!")


class ConditionResult(ArrayModel):
    """The outcome of the solves of one condition.

    Attributes
    ----------
    objective: float
        F_c (unweighted)
    powers: list[float]
        The port powers in the order of the targets
    amplitudes: list[complex]
        The modal amplitudes in the order of the targets
    gradient: np.ndarray | None
        dF_c / d eps on the grid, unset if no gradient was requested
    reflected: float | None
        The power at the reflection monitor, unset if the condition has none
    """

    objective: float
    powers: list[float]
    amplitudes: list[complex]
    gradient: np.ndarray | None = None
    reflected: float | None = None


def _solve_group(
    grid: SimulationGrid,
    conditions: list[ExcitationCondition],
    with_gradient: bool,
) -> list[ConditionResult]:
    factorization = Factorization(grid=grid)
    results: list[ConditionResult] = []
    for condition in conditions:
        field = factorization.solve(source_vector(grid=grid, sources=condition.sources)).ravel()
        vectors = [overlap_vector(grid=grid, monitor=target.monitor) for target in condition.targets]
        amplitudes = [complex(vector @ field) for vector in vectors]
        powers = [abs(amplitude) ** 2 for amplitude in amplitudes]
        deviation = [power - target.goal for power, target in zip(powers, condition.targets)]
        objective = 1.0 - sum(target.weight * delta**2 for target, delta in zip(condition.targets, deviation))

        gradient = None
        if with_gradient:
            rhs = np.zeros(field.size, dtype=complex)
            for target, delta, amplitude, vector in zip(condition.targets, deviation, amplitudes, vectors):
                rhs += -4.0 * target.weight * delta * np.conj(amplitude) * vector
            adjoint = factorization.solve_transpose(rhs)
            gradient = np.real(-adjoint * permittivity_derivative(grid).ravel() * field).reshape(grid.nx, grid.ny)

        reflected = None
        if condition.reflection is not None:
            reflected = abs(complex(overlap_vector(grid=grid, monitor=condition.reflection.monitor) @ field)) ** 2

        results.append(
            ConditionResult(
                objective=objective,
                powers=powers,
                amplitudes=amplitudes,
                gradient=gradient,
                reflected=reflected,
            )
        )
    return results


def solve_conditions(
    problem: DesignProblem,
    eps_r: np.ndarray,
    with_gradient: bool = False,
    options: SolveOptions | None = None,
) -> list[ConditionResult]:
    """Solve all conditions of a problem on a permittivity map.

    Conditions sharing a wavelength share one factorization. Every condition takes one forward solve and, if a
    gradient is requested, one adjoint solve.

    Parameters
    ----------
    problem: DesignProblem
        The problem
    eps_r: np.ndarray
        The permittivity map of the grid
    with_gradient: bool
        Whether to compute dF_c / d eps (defaults to False)
    options: SolveOptions | None
        Optional solve options (jobs caps the number of concurrent wavelength groups)

    Raises
    ------
    SolverFailure
        If a factorization or a solve fails

    Returns
    -------
    list[ConditionResult]
        The results in the order of the problem's conditions
    """
    options = options or SolveOptions()
    grid = problem.grid.with_eps(eps_r)
    indexed = sorted(enumerate(problem.conditions), key=lambda item: item[1].wavelength)
    groups = [(wavelength, list(group)) for wavelength, group in groupby(indexed, key=lambda i: i[1].wavelength)]
    debug(f"Solving {len(problem.conditions)} conditions of '{problem.name}' in {len(groups)} wavelength groups")

    def run(group: tuple[float, list[tuple[int, ExcitationCondition]]]) -> list[ConditionResult]:
        wavelength, members = group
        return _solve_group(
            grid=grid.with_wavelength(wavelength),
            conditions=[condition for _, condition in members],
            with_gradient=with_gradient,
        )

    if options.jobs > 1 and len(groups) > 1:
        with ThreadPoolExecutor(max_workers=options.jobs) as executor:
            group_results = list(executor.map(run, groups))
    else:
        group_results = [run(group) for group in groups]

    results: list[ConditionResult | None] = [None] * len(problem.conditions)
    for (_, members), member_results in zip(groups, group_results):
        for (index, _), result in zip(members, member_results):
            results[index] = result
    return [result for result in results if result is not None]


def evaluate_objective(
    problem: DesignProblem,
    rho: DensityField,
    options: SolveOptions | None = None,
) -> tuple[float, list[list[float]]]:
    """Evaluate the objective of a problem for raw densities.

    Parameters
    ----------
    problem: DesignProblem
        The problem
    rho: DensityField
        The raw densities, filtered and projected with problem.filter
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
    tuple[float, list[list[float]]]
        F = sum_c weight_c * F_c and the port powers per condition
    """
    problem.check_density(rho)
    rho_tilde = filter_and_project(density=rho, spec=problem.filter)
    results = solve_conditions(problem=problem, eps_r=problem.permittivity(rho_tilde.rho), options=options)
    objective = sum(condition.weight * result.objective for condition, result in zip(problem.conditions, results))
    return float(objective), [result.powers for result in results]


def objective_and_gradient(
    problem: DesignProblem,
    rho: DensityField,
    options: SolveOptions | None = None,
) -> tuple[float, list[list[float]], np.ndarray]:
    """Evaluate the objective of a problem and its gradient with respect to the raw densities.

    Parameters
    ----------
    problem: DesignProblem
        The problem
    rho: DensityField
        The raw densities
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
    tuple[float, list[list[float]], np.ndarray]
        F, the port powers per condition and dF / d rho
    """
    problem.check_density(rho)
    rho_tilde = filter_and_project(density=rho, spec=problem.filter)
    results = solve_conditions(
        problem=problem,
        eps_r=problem.permittivity(rho_tilde.rho),
        with_gradient=True,
        options=options,
    )

    eps_gradient = np.zeros((problem.grid.nx, problem.grid.ny))
    for condition, result in zip(problem.conditions, results):
        assert result.gradient is not None  # nosec: B101
        eps_gradient += condition.weight * result.gradient
    design_gradient = (EPS_SILICON - EPS_SILICA) * block_sum(
        eps_gradient[problem.design_slices()], problem.cells_per_pixel
    )
    gradient = filter_and_project_vjp(density=rho, spec=problem.filter, gradient=design_gradient)

    objective = sum(condition.weight * result.objective for condition, result in zip(problem.conditions, results))
    return float(objective), [result.powers for result in results], gradient


def adjoint_gradient(problem: DesignProblem, rho: DensityField, options: SolveOptions | None = None) -> np.ndarray:
    """Return the gradient of the objective with respect to the raw densities.

    One forward and one adjoint solve are made per condition.

    Parameters
    ----------
    problem: DesignProblem
        The problem
    rho: DensityField
        The raw densities
    options: SolveOptions | None
        Optional solve options

    Returns
    -------
    np.ndarray
        dF / d rho with the shape of rho
    """
    return objective_and_gradient(problem=problem, rho=rho, options=options)[2]


class ProblemSummary(BaseModel):
    """A serializable summary of a design problem.

    Attributes
    ----------
    name: str
        The name of the problem
    conditions: list[str]
        The condition names
    wavelengths_nm: list[float]
        The condition wavelengths (nm)
    targets: list[list[str]]
        The target port names per condition
    goals: list[list[float]]
        The goal powers per condition
    """

    name: str
    conditions: list[str]
    wavelengths_nm: list[float]
    targets: list[list[str]]
    goals: list[list[float]]

    @classmethod
    def from_problem(cls, problem: DesignProblem) -> ProblemSummary:
        """Summarize a problem."""
        return cls(
            name=problem.name,
            conditions=[condition.name for condition in problem.conditions],
            wavelengths_nm=[round(condition.wavelength * 1e9, 6) for condition in problem.conditions],
            targets=[[target.name for target in condition.targets] for condition in problem.conditions],
            goals=[[target.goal for target in condition.targets] for condition in problem.conditions],
        )
