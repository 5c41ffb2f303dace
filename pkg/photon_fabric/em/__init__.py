"""Frequency-domain electromagnetic simulation."""
from photon_fabric.em.grid import SimulationGrid  # noqa: F401
from photon_fabric.em.modes import ModeCut, ModeProfile, solve_slab_mode  # noqa: F401
from photon_fabric.em.solver import (  # noqa: F401
    ComplexField,
    Factorization,
    PortSpec,
    SolveOptions,
    mode_overlap,
    solve_counter,
    solve_fields,
    solve_many,
    transmission,
)
