"""The topology optimization loop."""
from __future__ import annotations

from logging import debug, info

import numpy as np
from pydantic import BaseModel, Field, PositiveInt, validator

from photon_fabric.config.defaults import (
    BETA_SCHEDULE,
    BINARIZE_THRESHOLD,
    FILTER_RADIUS_NM,
    LOG_EVERY,
    OPTIMIZER_MOMENTUM,
    OPTIMIZER_SECOND_MOMENT,
    OPTIMIZER_STEP,
    PROJECTION_ETA,
)
from photon_fabric.em.solver import SolveOptions
from photon_fabric.errors import Diverged
from photon_fabric.topopt.density import DensityField, FilterSpec, filter_and_project
from photon_fabric.topopt.problem import DesignProblem, evaluate_objective, objective_and_gradient


class Schedule(BaseModel):
    """The iteration budget, projection continuation and update rule of an optimization.

    Attributes
    ----------
    iterations: int
        The number of gradient steps (at least 1)
    betas: list[float]
        The projection sharpness continuation, each used for an equal share of the iterations
    radius: float
        The filter radius (nm)
    eta: float
        The projection threshold
    step: float
        The per-pixel step size in density units
    momentum: float
        The decay of the first moment of the adaptive update
    second_moment: float
        The decay of the second moment of the adaptive update
    log_every: int
        The number of iterations between progress messages
    """

    iterations: PositiveInt
    betas: list[float] = list(BETA_SCHEDULE)
    radius: float = Field(FILTER_RADIUS_NM, ge=0.0)
    eta: float = Field(PROJECTION_ETA, gt=0.0, lt=1.0)
    step: float = Field(OPTIMIZER_STEP, gt=0.0)
    momentum: float = Field(OPTIMIZER_MOMENTUM, ge=0.0, lt=1.0)
    second_moment: float = Field(OPTIMIZER_SECOND_MOMENT, ge=0.0, lt=1.0)
    log_every: PositiveInt = LOG_EVERY

    @validator("betas")
    def validate_betas(cls, betas: list[float]) -> list[float]:
        """Validate that the continuation is non-empty and that every beta is at least one."""
        if not betas or any(beta < 1.0 for beta in betas):
            raise ValueError(f"The beta continuation must be non-empty with every beta >= 1, but is {betas}!")
        return betas

    def beta_at(self, iteration: int) -> float:
        """Return the projection sharpness in effect at an iteration.

        Parameters
        ----------
        iteration: int
            The zero-based iteration

        Returns
        -------
        float
            The beta of the share of the budget the iteration falls into
        """
        stage = min(iteration * len(self.betas) // self.iterations, len(self.betas) - 1)
        return self.betas[stage]

    def filter_spec(self, beta: float) -> FilterSpec:
        """Return the filter and projection parameters at a sharpness."""
        return FilterSpec(radius=self.radius, beta=beta, eta=self.eta)


class HistoryRecord(BaseModel):
    """The state of one optimization iteration before its update.

    Attributes
    ----------
    iteration: int
        The zero-based iteration
    objective: float
        The objective value
    beta: float
        The projection sharpness in effect
    powers: list[list[float]]
        The port powers per condition
    """

    iteration: int
    objective: float
    beta: float
    powers: list[list[float]]


class OptimizationHistory(BaseModel):
    """The progress of an optimization.

    Attributes
    ----------
    records: list[HistoryRecord]
        One record per executed iteration
    final_objective: float | None
        The objective of the binarized final design
    final_powers: list[list[float]] | None
        The port powers of the binarized final design per condition
    """

    records: list[HistoryRecord] = []
    final_objective: float | None = None
    final_powers: list[list[float]] | None = None

    def objectives(self) -> list[float]:
        """Return the objective of every recorded iteration."""
        return [record.objective for record in self.records]


def optimize(
    problem: DesignProblem,
    init: DensityField,
    schedule: Schedule,
    options: SolveOptions | None = None,
) -> tuple[DensityField, OptimizationHistory]:
    """Maximize the objective of a problem by adaptive gradient ascent on the raw densities.

    The update keeps exponential averages m and v of the gradient and its square and moves every pixel by
    step * m_hat / (sqrt(v_hat) + 1e-12), clipped to [0, 1]. After the last iteration the projected design is
    binarized at BINARIZE_THRESHOLD and evaluated without filter.

    Parameters
    ----------
    problem: DesignProblem
        The problem (its filter is replaced according to schedule)
    init: DensityField
        The initial raw densities
    schedule: Schedule
        The iteration budget, continuation and update rule
    options: SolveOptions | None
        Optional solve options

    Raises
    ------
    Diverged
        If the objective or the gradient becomes non-finite
    SolverFailure
        If a solve fails

    Returns
    -------
    tuple[DensityField, OptimizationHistory]
        The binarized final densities and the history
    """
    rho = init.rho.copy()
    first_moment = np.zeros_like(rho)
    second_moment = np.zeros_like(rho)
    history = OptimizationHistory()
    beta: float | None = None

    for iteration in range(schedule.iterations):
        if schedule.beta_at(iteration) != beta:
            beta = schedule.beta_at(iteration)
            info(f"Optimizing '{problem.name}' with projection beta {beta} from iteration {iteration}")
        staged = problem.with_filter(schedule.filter_spec(beta=beta))

        objective, powers, gradient = objective_and_gradient(problem=staged, rho=init.with_rho(rho), options=options)
        if not np.isfinite(objective) or not np.all(np.isfinite(gradient)):
            raise Diverged(f"The objective of '{problem.name}' became non-finite in iteration {iteration}!")
        history.records.append(HistoryRecord(iteration=iteration, objective=objective, beta=beta, powers=powers))
        if iteration % schedule.log_every == 0 or iteration == schedule.iterations - 1:
            info(f"Iteration {iteration}: F = {objective:.6f}, powers = {np.round(powers, 4).tolist()}")

        first_moment = schedule.momentum * first_moment + (1 - schedule.momentum) * gradient
        second_moment = schedule.second_moment * second_moment + (1 - schedule.second_moment) * gradient**2
        first_unbiased = first_moment / (1 - schedule.momentum ** (iteration + 1))
        second_unbiased = second_moment / (1 - schedule.second_moment ** (iteration + 1))
        rho = np.clip(rho + schedule.step * first_unbiased / (np.sqrt(second_unbiased) + 1e-12), 0.0, 1.0)
        debug(f"Iteration {iteration}: mean density {rho.mean():.4f}, gray fraction {_gray_fraction(rho):.4f}")

    assert beta is not None  # nosec: B101
    projected = problem.with_filter(schedule.filter_spec(beta=beta))
    final = projected_design(problem=projected, rho=init.with_rho(rho)).binarized(threshold=BINARIZE_THRESHOLD)
    final_objective, final_powers = evaluate_objective(
        problem=problem.with_filter(FilterSpec(radius=0.0, beta=1.0, eta=schedule.eta)),
        rho=final,
        options=options,
    )
    history.final_objective = final_objective
    history.final_powers = final_powers
    info(f"Binarized design of '{problem.name}': F = {final_objective:.6f}")
    return final, history


def projected_design(problem: DesignProblem, rho: DensityField) -> DensityField:
    """Return the material densities a problem's filter produces from raw densities.

    Parameters
    ----------
    problem: DesignProblem
        The problem
    rho: DensityField
        The raw densities

    Returns
    -------
    DensityField
        The filtered and projected densities
    """
    return filter_and_project(density=rho, spec=problem.filter)


def _gray_fraction(rho: np.ndarray) -> float:
    return float(np.mean((rho > 0.05) & (rho < 0.95)))
