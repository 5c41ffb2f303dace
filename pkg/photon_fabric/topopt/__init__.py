"""Adjoint-method topology optimization."""
from photon_fabric.topopt.density import (  # noqa: F401
    DensityField,
    FilterSpec,
    density_to_permittivity,
    filter_and_project,
    filter_and_project_vjp,
    init_density,
)
from photon_fabric.topopt.optimizer import OptimizationHistory, Schedule, optimize  # noqa: F401
from photon_fabric.topopt.problem import (  # noqa: F401
    DesignProblem,
    ExcitationCondition,
    Target,
    adjoint_gradient,
    evaluate_objective,
    objective_and_gradient,
)
