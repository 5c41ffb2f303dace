"""The discretized simulation domain of the frequency-domain solver."""
from __future__ import annotations

from math import log, pi

import numpy as np
from pydantic import Field, PositiveFloat, PositiveInt, root_validator, validator

from photon_fabric.common.models import ArrayModel
from photon_fabric.config.defaults import PML_CELLS, PML_MIN_CELLS, PML_ORDER, PML_REFLECTION


class SimulationGrid(ArrayModel):
    """A 2D domain on a square grid with a relative permittivity map and absorbing layers.

    The first axis of eps_r is the propagation axis x, the second the transverse axis y. The absorbing layer is
    pml_cells thick on all four sides.

    Attributes
    ----------
    dx: float
        The cell size (m)
    lambda0: float
        The free-space wavelength (m)
    eps_r: np.ndarray
        The nx x ny real relative permittivity map, every entry >= 1
    pml_cells: int
        The absorbing layer thickness per side (cells)
    pml_order: int
        The polynomial grading order of the absorbing layer
    pml_reflection: float
        The theoretical reflection used to derive pml_sigma_max if it is not set
    pml_sigma_max: float | None
        The maximum (dimensionless) coordinate stretch of the absorbing layer
    """

    dx: PositiveFloat
    lambda0: PositiveFloat
    eps_r: np.ndarray
    pml_cells: int = Field(PML_CELLS, ge=PML_MIN_CELLS)
    pml_order: PositiveInt = PML_ORDER
    pml_reflection: float = Field(PML_REFLECTION, gt=0.0, lt=1.0)
    pml_sigma_max: PositiveFloat | None = None

    @validator("eps_r", pre=True)
    def validate_eps_r(cls, eps_r: np.ndarray) -> np.ndarray:
        """Validate that the permittivity map is a finite 2D array with entries of at least 1.

        Parameters
        ----------
        eps_r: np.ndarray
            An array-like permittivity map

        Raises
        ------
        ValueError
            If the map is not 2D, not finite or has an entry below 1.0

        Returns
        -------
        np.ndarray
            A read-only float copy of the map
        """
        eps = np.array(eps_r, dtype=float)
        if eps.ndim != 2:
            raise ValueError(f"The permittivity map must be 2D, but has shape {eps.shape}!")
        if not np.all(np.isfinite(eps)):
            raise ValueError("The permittivity map contains non-finite values!")
        if eps.min() < 1.0:
            raise ValueError(f"The permittivity map contains a value below 1.0: {eps.min()}")
        eps.setflags(write=False)
        return eps

    @root_validator(skip_on_failure=True)
    def validate_extent(cls, values: dict[str, object]) -> dict[str, object]:
        """Validate that the domain leaves an interior between its absorbing layers.

        Parameters
        ----------
        values: dict[str, object]
            The validated fields

        Raises
        ------
        ValueError
            If nx or ny is below 3 + 2 * pml_cells

        Returns
        -------
        dict[str, object]
            The unchanged fields
        """
        eps = values["eps_r"]
        minimum = 3 + 2 * int(values["pml_cells"])  # type: ignore[call-overload]
        if min(eps.shape) < minimum:  # type: ignore[attr-defined]
            raise ValueError(
                f"A grid with {values['pml_cells']} absorbing cells needs at least {minimum} cells per axis, "
                f"but has shape {eps.shape}!"  # type: ignore[attr-defined]
            )
        return values

    @property
    def nx(self) -> int:
        """Return the number of cells along x."""
        return int(self.eps_r.shape[0])

    @property
    def ny(self) -> int:
        """Return the number of cells along y."""
        return int(self.eps_r.shape[1])

    @property
    def k0(self) -> float:
        """The free-space wavenumber (1/m)."""
        return 2 * pi / self.lambda0

    @property
    def sigma_max(self) -> float:
        """The maximum stretch of the absorbing layer.

        Unless set explicitly, it yields pml_reflection as the round-trip amplitude reflection of a normally incident
        plane wave in vacuum for the graded layer.
        """
        if self.pml_sigma_max is not None:
            return self.pml_sigma_max
        thickness = self.pml_cells * self.dx
        return (self.pml_order + 1) * log(1 / self.pml_reflection) / (2 * self.k0 * thickness)

    def stretch(self, cells: int, half: bool = False) -> np.ndarray:
        """Return the complex coordinate stretch along an axis.

        Parameters
        ----------
        cells: int
            The number of cells along the axis
        half: bool
            Whether to evaluate at the cell faces i + 1/2 instead of the cell centers (defaults to False)

        Returns
        -------
        np.ndarray
            The stretch factors s = 1 + i * sigma_max * (d / L)^m, with d the depth into the layer
        """
        position = np.arange(cells, dtype=float) + (0.5 if half else 0.0)
        depth = np.maximum.reduce(
            [
                self.pml_cells - position,
                position - (cells - 1 - self.pml_cells),
                np.zeros(cells),
            ]
        )
        return 1.0 + 1j * self.sigma_max * (depth / self.pml_cells) ** self.pml_order

    def is_interior(self, x: int, y_start: int, y_stop: int) -> bool:
        """Return whether a transverse line of cells lies in the non-absorbing interior.

        Parameters
        ----------
        x: int
            The index along the propagation axis
        y_start: int
            The first transverse index
        y_stop: int
            The transverse index after the last one

        Returns
        -------
        bool
            True if the line does not touch the absorbing layer, False otherwise
        """
        return (
            self.pml_cells <= x < self.nx - self.pml_cells
            and self.pml_cells <= y_start < y_stop <= self.ny - self.pml_cells
        )

    def with_eps(self, eps_r: np.ndarray) -> SimulationGrid:
        """Return a copy of the grid with another permittivity map.

        Parameters
        ----------
        eps_r: np.ndarray
            The new permittivity map

        Returns
        -------
        SimulationGrid
            A validated grid sharing all other fields
        """
        return SimulationGrid(**(self.dict(exclude={"eps_r"}) | {"eps_r": eps_r}))

    def with_wavelength(self, lambda0: float) -> SimulationGrid:
        """Return a copy of the grid at another wavelength.

        Parameters
        ----------
        lambda0: float
            The new free-space wavelength (m)

        Returns
        -------
        SimulationGrid
            A validated grid sharing all other fields
        """
        return SimulationGrid(**(self.dict(exclude={"lambda0"}) | {"lambda0": lambda0}))
