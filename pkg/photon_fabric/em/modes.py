"""Guided slab modes of a transverse permittivity line."""
from __future__ import annotations

from logging import debug
from math import acos, pi

import numpy as np
from pydantic import BaseModel, NonNegativeInt, root_validator, validator
from scipy.linalg import eigh_tridiagonal

from photon_fabric.common.enums import DirectionEnum
from photon_fabric.common.models import ArrayModel
from photon_fabric.errors import NoGuidedMode


class ModeCut(BaseModel):
    """A model describing a transverse line of cells at a fixed position along the propagation axis.

    Attributes
    ----------
    x: int
        The index along the propagation axis
    y_start: int
        The first transverse index
    y_stop: int
        The transverse index after the last one
    """

    x: NonNegativeInt
    y_start: NonNegativeInt
    y_stop: NonNegativeInt

    @root_validator(skip_on_failure=True)
    def validate_length(cls, values: dict[str, int]) -> dict[str, int]:
        """Validate that a cut spans at least three cells."""
        if values["y_stop"] - values["y_start"] < 3:
            raise ValueError(f"A mode cut needs at least 3 cells, but spans {values['y_start']}:{values['y_stop']}!")
        return values

    @property
    def length(self) -> int:
        """Return the number of cells of the cut."""
        return self.y_stop - self.y_start

    def shifted(self, offset: int) -> ModeCut:
        """Return the cut moved along the propagation axis.

        Parameters
        ----------
        offset: int
            The number of cells to move by

        Returns
        -------
        ModeCut
            The moved cut
        """
        return ModeCut(x=self.x + offset, y_start=self.y_start, y_stop=self.y_stop)


class ModeProfile(ArrayModel):
    """A guided mode on a transverse line of cells.

    Attributes
    ----------
    amplitude: np.ndarray
        The complex profile along the cut, normalized to unit self-overlap
    n_eff: float
        The modal effective index
    beta: float
        The propagation constant of the continuous-x problem (1/m)
    dx: float
        The cell size the profile was solved on (m)
    direction: DirectionEnum
        The propagation sign
    cut: ModeCut | None
        The placement of the profile on a grid, unset for a bare line solve
    """

    amplitude: np.ndarray
    n_eff: float
    beta: float
    dx: float
    direction: DirectionEnum = DirectionEnum.FORWARD
    cut: ModeCut | None = None

    @validator("amplitude", pre=True)
    def validate_amplitude(cls, amplitude: np.ndarray) -> np.ndarray:
        """Validate that a profile is 1D and freeze it."""
        profile = np.array(amplitude, dtype=complex)
        if profile.ndim != 1:
            raise ValueError(f"A mode profile must be 1D, but has shape {profile.shape}!")
        profile.setflags(write=False)
        return profile

    @property
    def beta_discrete(self) -> float:
        """The propagation constant of the mode on the discrete propagation axis (1/m).

        It solves 2 * (1 - cos(beta_d * dx)) = (beta * dx)^2, so that exp(i * beta_d * dx * k) is an exact solution of
        the discrete wave equation along x.
        """
        argument = 1.0 - (self.beta * self.dx) ** 2 / 2.0
        return acos(max(-1.0, min(1.0, argument))) / self.dx

    def placed(self, cut: ModeCut, direction: DirectionEnum | None = None) -> ModeProfile:
        """Return the profile placed on a cut of a grid.

        Parameters
        ----------
        cut: ModeCut
            The cut to place the profile on (its length must match the profile)
        direction: DirectionEnum | None
            An optional propagation direction overriding the current one

        Raises
        ------
        ValueError
            If the cut length does not match the profile

        Returns
        -------
        ModeProfile
            A copy of the profile with cut (and direction) set
        """
        if cut.length != self.amplitude.size:
            raise ValueError(f"A cut of {cut.length} cells can not carry a profile of {self.amplitude.size} cells!")
        return ModeProfile(
            amplitude=self.amplitude,
            n_eff=self.n_eff,
            beta=self.beta,
            dx=self.dx,
            direction=direction or self.direction,
            cut=cut,
        )


def solve_slab_mode(
    eps_line: np.ndarray,
    dx: float,
    lambda0: float,
    mode_index: int = 0,
    direction: DirectionEnum = DirectionEnum.FORWARD,
) -> ModeProfile:
    """Solve for a guided eigenmode of the discrete 1D transverse Helmholtz operator.

    The line is closed by zero-field conditions at both ends. A mode is guided, if its squared effective index lies
    strictly between the permittivity at the ends of the line and the maximum permittivity on the line.

    Parameters
    ----------
    eps_line: np.ndarray
        The relative permittivity on the line (at least 3 cells)
    dx: float
        The cell size (m)
    lambda0: float
        The free-space wavelength (m)
    mode_index: int
        The order of the mode, 0 being the fundamental mode (defaults to 0)
    direction: DirectionEnum
        The propagation sign of the returned profile (defaults to DirectionEnum.FORWARD)

    Raises
    ------
    ValueError
        If the line has less than 3 cells or mode_index is negative
    NoGuidedMode
        If the line supports fewer than mode_index + 1 guided modes

    Returns
    -------
    ModeProfile
        The mode with its amplitude normalized to unit self-overlap and its largest entry real and positive
    """
    eps = np.asarray(eps_line, dtype=float)
    if eps.ndim != 1 or eps.size < 3:
        raise ValueError(f"A permittivity line needs at least 3 cells, but has shape {eps.shape}!")
    if mode_index < 0:
        raise ValueError(f"The mode index must not be negative, but is {mode_index}!")
    if mode_index >= eps.size:
        raise NoGuidedMode(f"A line of {eps.size} cells has no mode of order {mode_index}!")

    k0 = 2 * pi / lambda0
    diagonal = -2.0 / dx**2 + k0**2 * eps
    off_diagonal = np.full(eps.size - 1, 1.0 / dx**2)
    eigenvalues, eigenvectors = eigh_tridiagonal(
        diagonal,
        off_diagonal,
        select="i",
        select_range=(eps.size - 1 - mode_index, eps.size - 1),
    )
    # descending propagation constants
    eigenvalues = eigenvalues[::-1]
    eigenvectors = eigenvectors[:, ::-1]
    n_eff_squared = eigenvalues / k0**2
    lower = max(eps[0], eps[-1])
    upper = eps.max()
    guided = int(np.count_nonzero((n_eff_squared > lower) & (n_eff_squared < upper)))
    debug(f"Found {guided} guided modes among {mode_index + 1} candidates (n_eff^2: {n_eff_squared})")
    if guided < mode_index + 1 or not lower < n_eff_squared[mode_index] < upper:
        raise NoGuidedMode(
            f"The permittivity line (cladding {lower}, core {upper}) does not guide a mode of order {mode_index} "
            f"at {lambda0 * 1e9:.3f} nm!"
        )

    profile = eigenvectors[:, mode_index]
    profile = profile / np.linalg.norm(profile)
    if profile[np.argmax(np.abs(profile))] < 0:
        profile = -profile

    return ModeProfile(
        amplitude=profile,
        n_eff=float(np.sqrt(n_eff_squared[mode_index])),
        beta=float(np.sqrt(eigenvalues[mode_index])),
        dx=dx,
        direction=direction,
    )
