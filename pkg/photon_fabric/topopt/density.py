"""Design densities, their conic filter and tanh projection, and the map to permittivity."""
from __future__ import annotations

from math import floor, isinf

import numpy as np
from pydantic import BaseModel, Field, NonNegativeInt, PositiveFloat, validator
from scipy.signal import convolve2d

from photon_fabric.common.models import ArrayModel
from photon_fabric.config.defaults import (
    DESK_PITCH,
    EPS_SILICA,
    EPS_SILICON,
    FILTER_RADIUS_NM,
    INITIAL_DENSITY,
    PROJECTION_ETA,
)


class DensityField(ArrayModel):
    """The design variables of a rectangular design region.

    Attributes
    ----------
    rho: np.ndarray
        The px x py matrix of densities in [0, 1]
    pixel_pitch: float
        The edge length of a pixel (m)
    origin: tuple[int, int]
        The grid cell of the lower left corner of the design region
    """

    rho: np.ndarray
    pixel_pitch: PositiveFloat = DESK_PITCH
    origin: tuple[NonNegativeInt, NonNegativeInt] = (0, 0)

    @validator("rho", pre=True)
    def validate_rho(cls, rho: np.ndarray) -> np.ndarray:
        """Validate that the densities form a 2D matrix with entries in [0, 1].

        Parameters
        ----------
        rho: np.ndarray
            An array-like matrix of densities

        Raises
        ------
        ValueError
            If the matrix is not 2D or has an entry outside of [0, 1]

        Returns
        -------
        np.ndarray
            A read-only float copy of the matrix
        """
        densities = np.array(rho, dtype=float)
        if densities.ndim != 2 or densities.size == 0:
            raise ValueError(f"Densities must form a non-empty 2D matrix, but have shape {densities.shape}!")
        if not np.all(np.isfinite(densities)) or densities.min() < 0.0 or densities.max() > 1.0:
            raise ValueError("Densities must be finite and inside of [0, 1]!")
        densities.setflags(write=False)
        return densities

    @property
    def shape(self) -> tuple[int, int]:
        """Return the number of pixels along x and y."""
        return (int(self.rho.shape[0]), int(self.rho.shape[1]))

    def extent(self) -> tuple[float, float]:
        """Return the size of the design region.

        Returns
        -------
        tuple[float, float]
            The edge lengths along x and y (m)
        """
        return (self.shape[0] * self.pixel_pitch, self.shape[1] * self.pixel_pitch)

    def with_rho(self, rho: np.ndarray) -> DensityField:
        """Return a density field with other densities at the same placement.

        Parameters
        ----------
        rho: np.ndarray
            The new densities (must have the same shape)

        Raises
        ------
        ValueError
            If the shape differs

        Returns
        -------
        DensityField
            The new density field
        """
        if np.shape(rho) != self.rho.shape:
            raise ValueError(f"Densities of shape {np.shape(rho)} do not fit a design region of shape {self.shape}!")
        return DensityField(rho=rho, pixel_pitch=self.pixel_pitch, origin=self.origin)

    def binarized(self, threshold: float = 0.5) -> DensityField:
        """Return the density field thresholded to 0 and 1.

        Parameters
        ----------
        threshold: float
            Densities strictly above the threshold become 1 (defaults to 0.5)

        Returns
        -------
        DensityField
            The binary density field
        """
        return self.with_rho((self.rho > threshold).astype(float))


class FilterSpec(BaseModel):
    """The smoothing and thresholding applied to densities before they become material.

    Attributes
    ----------
    radius: float
        The radius of the conic filter (nm), 0 disables filtering
    beta: float
        The projection sharpness (math.inf for a hard threshold)
    eta: float
        The projection threshold
    """

    radius: float = Field(FILTER_RADIUS_NM, ge=0.0)
    beta: float = Field(1.0, ge=1.0)
    eta: float = Field(PROJECTION_ETA, gt=0.0, lt=1.0)


def conic_kernel(radius: float) -> np.ndarray:
    """Return a normalized conic filter kernel.

    Parameters
    ----------
    radius: float
        The radius of the cone in pixels

    Returns
    -------
    np.ndarray
        An odd-sized square kernel with weights max(0, 1 - r / radius), summing to 1 (a 1 x 1 identity kernel if the
        radius is below one pixel)
    """
    if radius < 1.0:
        return np.ones((1, 1))
    half = int(floor(radius))
    offsets = np.arange(-half, half + 1, dtype=float)
    distance = np.hypot(*np.meshgrid(offsets, offsets, indexing="ij"))
    kernel = np.maximum(0.0, 1.0 - distance / radius)
    return kernel / kernel.sum()


def _radius_in_pixels(spec: FilterSpec, pixel_pitch: float) -> float:
    return spec.radius * 1e-9 / pixel_pitch


def _convolve(values: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    return convolve2d(values, kernel, mode="same", boundary="fill", fillvalue=0.0)


def filter_density(rho: np.ndarray, radius: float) -> np.ndarray:
    """Smooth densities with a conic kernel, renormalized at the borders of the design region.

    Parameters
    ----------
    rho: np.ndarray
        The densities
    radius: float
        The filter radius in pixels

    Returns
    -------
    np.ndarray
        The filtered densities; a constant matrix is returned unchanged
    """
    kernel = conic_kernel(radius=radius)
    return _convolve(rho, kernel) / _convolve(np.ones_like(rho), kernel)


def tanh_projection(x: np.ndarray, beta: float, eta: float) -> np.ndarray:
    """Project densities towards 0 and 1 with a smoothed step at eta.

    Parameters
    ----------
    x: np.ndarray
        The densities
    beta: float
        The sharpness, math.inf yields a hard threshold (0.5 at exactly eta)
    eta: float
        The threshold

    Returns
    -------
    np.ndarray
        The projected densities in [0, 1]
    """
    if isinf(beta):
        return np.where(x > eta, 1.0, np.where(x < eta, 0.0, 0.5))
    return (np.tanh(beta * eta) + np.tanh(beta * (x - eta))) / (np.tanh(beta * eta) + np.tanh(beta * (1 - eta)))


def tanh_projection_derivative(x: np.ndarray, beta: float, eta: float) -> np.ndarray:
    """Return the elementwise derivative of tanh_projection.

    Parameters
    ----------
    x: np.ndarray
        The densities
    beta: float
        The (finite) sharpness
    eta: float
        The threshold

    Returns
    -------
    np.ndarray
        d tanh_projection / dx
    """
    if isinf(beta):
        return np.zeros_like(x)
    return beta / np.cosh(beta * (x - eta)) ** 2 / (np.tanh(beta * eta) + np.tanh(beta * (1 - eta)))


def filter_and_project(density: DensityField, spec: FilterSpec) -> DensityField:
    """Filter and then project a density field.

    Parameters
    ----------
    density: DensityField
        The raw densities
    spec: FilterSpec
        The filter radius and the projection parameters

    Returns
    -------
    DensityField
        The projected densities, clipped to [0, 1]
    """
    filtered = filter_density(rho=density.rho, radius=_radius_in_pixels(spec, density.pixel_pitch))
    projected = tanh_projection(x=filtered, beta=spec.beta, eta=spec.eta)
    return density.with_rho(np.clip(projected, 0.0, 1.0))


def filter_and_project_vjp(density: DensityField, spec: FilterSpec, gradient: np.ndarray) -> np.ndarray:
    """Pull a gradient with respect to the projected densities back to the raw densities.

    Parameters
    ----------
    density: DensityField
        The raw densities the projection was evaluated at
    spec: FilterSpec
        The filter radius and the projection parameters
    gradient: np.ndarray
        The gradient with respect to filter_and_project(density, spec).rho

    Returns
    -------
    np.ndarray
        The gradient with respect to density.rho
    """
    radius = _radius_in_pixels(spec, density.pixel_pitch)
    kernel = conic_kernel(radius=radius)
    normalization = _convolve(np.ones_like(density.rho), kernel)
    filtered = _convolve(density.rho, kernel) / normalization
    through_projection = gradient * tanh_projection_derivative(x=filtered, beta=spec.beta, eta=spec.eta)
    # the kernel is point symmetric, so the transposed convolution is the same convolution
    return _convolve(through_projection / normalization, kernel)


def density_to_permittivity(rho_tilde: np.ndarray | DensityField) -> np.ndarray:
    """Interpolate linearly between silica and silicon.

    Parameters
    ----------
    rho_tilde: np.ndarray | DensityField
        Densities in [0, 1]

    Returns
    -------
    np.ndarray
        The relative permittivity EPS_SILICA + rho_tilde * (EPS_SILICON - EPS_SILICA)
    """
    values = rho_tilde.rho if isinstance(rho_tilde, DensityField) else np.asarray(rho_tilde, dtype=float)
    return EPS_SILICA + values * (EPS_SILICON - EPS_SILICA)


def upsample(values: np.ndarray, factor: int) -> np.ndarray:
    """Repeat every pixel as a factor x factor block of grid cells.

    Parameters
    ----------
    values: np.ndarray
        A pixel matrix
    factor: int
        The number of grid cells per pixel edge

    Returns
    -------
    np.ndarray
        The upsampled matrix
    """
    return np.kron(values, np.ones((factor, factor)))


def block_sum(values: np.ndarray, factor: int) -> np.ndarray:
    """Sum factor x factor blocks of grid cells into pixels, the transpose of upsample.

    Parameters
    ----------
    values: np.ndarray
        A grid cell matrix with edge lengths divisible by factor
    factor: int
        The number of grid cells per pixel edge

    Returns
    -------
    np.ndarray
        The pixel matrix
    """
    rows, columns = values.shape
    return values.reshape(rows // factor, factor, columns // factor, factor).sum(axis=(1, 3))


def init_density(
    shape: tuple[int, int],
    pixel_pitch: float = DESK_PITCH,
    origin: tuple[int, int] = (0, 0),
    noise: float = 0.0,
    seed: int | None = None,
) -> DensityField:
    """Create the initial density field of an optimization.

    Parameters
    ----------
    shape: tuple[int, int]
        The number of pixels along x and y
    pixel_pitch: float
        The pixel edge length (m)
    origin: tuple[int, int]
        The grid cell of the lower left corner of the design region
    noise: float
        The amplitude of uniform noise added to INITIAL_DENSITY (defaults to 0.0)
    seed: int | None
        The seed of the noise generator

    Returns
    -------
    DensityField
        The initial densities, clipped to [0, 1]
    """
    rho = np.full(shape, INITIAL_DENSITY)
    if noise > 0.0:
        rho = rho + noise * np.random.default_rng(seed).uniform(-1.0, 1.0, size=shape)
    return DensityField(rho=np.clip(rho, 0.0, 1.0), pixel_pitch=pixel_pitch, origin=origin)
