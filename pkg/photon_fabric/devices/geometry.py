"""Geometry of the 2x2 devices: a square design region between two pairs of straight lead waveguides."""
from __future__ import annotations

from logging import debug, warning

import numpy as np
from pydantic import BaseModel, Field, PositiveFloat, PositiveInt, root_validator

from photon_fabric.common.enums import DirectionEnum, PortRoleEnum, ScaleEnum
from photon_fabric.common.models import ArrayModel
from photon_fabric.config.defaults import (
    DESK_PITCH,
    DESK_RAIL_SPACING,
    DESK_REGION,
    EPS_SILICA,
    EPS_SILICON,
    FILM_THICKNESS,
    FULL_PITCH,
    FULL_RAIL_SPACING,
    FULL_REGION,
    LAMBDA_CENTER,
    LEAD_LENGTH,
    MODE_CUT_MARGIN,
    PML_CELLS,
    PML_MIN_CELLS,
    PML_ORDER,
    PML_REFLECTION,
    WG_WIDTH,
    Y_MARGIN,
)
from photon_fabric.em.grid import SimulationGrid
from photon_fabric.em.modes import ModeCut, solve_slab_mode
from photon_fabric.em.solver import PortSpec

PORT_NAMES = ("top_in", "bottom_in", "top_out", "bottom_out", "top_back", "bottom_back")


class DeviceGeometry(BaseModel):
    """A model describing the geometry of a 2x2 device.

    Attributes
    ----------
    region: float
        The edge length of the square design region (m)
    wg_width: float
        The width of the lead waveguides (m)
    rail_spacing: float
        The center-to-center distance of the two rails (m)
    film: float
        The thickness of the silicon film (m), metadata of the 2D model
    lead_length: float
        The length of the straight leads on both sides of the design region (m)
    y_margin: float
        The cladding above and below the design region (m)
    pixel_pitch: float
        The edge length of a design pixel (m)
    dx: float
        The cell size of the simulation grid (m)
    pml_cells: int
        The absorbing layer thickness (cells)
    pml_order: int
        The polynomial grading order of the absorbing layer
    pml_reflection: float
        The theoretical reflection of the absorbing layer
    """

    region: PositiveFloat = FULL_REGION
    wg_width: PositiveFloat = WG_WIDTH
    rail_spacing: PositiveFloat = FULL_RAIL_SPACING
    film: PositiveFloat = FILM_THICKNESS
    lead_length: PositiveFloat = LEAD_LENGTH
    y_margin: PositiveFloat = Y_MARGIN
    pixel_pitch: PositiveFloat = FULL_PITCH
    dx: PositiveFloat = FULL_PITCH
    pml_cells: int = Field(PML_CELLS, ge=PML_MIN_CELLS)
    pml_order: PositiveInt = PML_ORDER
    pml_reflection: float = Field(PML_REFLECTION, gt=0.0, lt=1.0)

    @root_validator(skip_on_failure=True)
    def validate_fit(cls, values: dict[str, float]) -> dict[str, float]:
        """Validate that the rails fit the design region and the region snaps to the grid.

        Parameters
        ----------
        values: dict[str, float]
            The validated fields

        Raises
        ------
        ValueError
            If rail_spacing + wg_width exceeds the region, or region and pixel pitch are no multiples of dx

        Returns
        -------
        dict[str, float]
            The unchanged fields
        """
        if values["rail_spacing"] + values["wg_width"] > values["region"]:
            raise ValueError(
                f"Rails {values['rail_spacing']} m apart with width {values['wg_width']} m do not fit a "
                f"{values['region']} m design region!"
            )
        for name in ("region", "pixel_pitch"):
            ratio = values[name] / values["dx"]
            if abs(ratio - round(ratio)) > 1e-6:
                raise ValueError(f"The {name} {values[name]} m is not a multiple of the cell size {values['dx']} m!")
        ratio = values["region"] / values["pixel_pitch"]
        if abs(ratio - round(ratio)) > 1e-6:
            raise ValueError(f"The region {values['region']} m is not a multiple of the pixel pitch!")
        return values

    def cells(self, length: float) -> int:
        """Return the number of grid cells of a length."""
        return int(round(length / self.dx))


def preset(scale: ScaleEnum) -> DeviceGeometry:
    """Return the geometry of a named scale.

    Parameters
    ----------
    scale: ScaleEnum
        The scale: full (10 x 10 um, 9 um spacing, 20 nm pixels and cells) or desk (4 x 4 um, 2 um spacing, 40 nm
        pixels and cells)

    Returns
    -------
    DeviceGeometry
        The geometry of the preset
    """
    match scale:
        case ScaleEnum.FULL:
            warning("Full-scale devices take hours to optimize and several GB of memory per factorization!")
            return DeviceGeometry()
        case ScaleEnum.DESK:
            return DeviceGeometry(
                region=DESK_REGION,
                rail_spacing=DESK_RAIL_SPACING,
                pixel_pitch=DESK_PITCH,
                dx=DESK_PITCH,
            )


def fill_fraction(cells: int, dx: float, low: float, high: float) -> np.ndarray:
    """Return the fraction of every cell covered by an interval.

    Cell j covers [j * dx, (j + 1) * dx).

    Parameters
    ----------
    cells: int
        The number of cells
    dx: float
        The cell size (m)
    low: float
        The lower end of the interval (m)
    high: float
        The upper end of the interval (m)

    Returns
    -------
    np.ndarray
        The covered fractions in [0, 1]
    """
    starts = np.arange(cells) * dx
    return np.clip(np.minimum(starts + dx, high) - np.maximum(starts, low), 0.0, dx) / dx


class DeviceLayout(ArrayModel):
    """The background grid of a device with its design region and port cuts.

    Attributes
    ----------
    geometry: DeviceGeometry
        The geometry
    grid: SimulationGrid
        The background grid at LAMBDA_CENTER with the design region filled with silica
    design_origin: tuple[int, int]
        The grid cell of the lower left corner of the design region
    design_shape: tuple[int, int]
        The number of design pixels along x and y
    rail_centers: tuple[float, float]
        The y positions of the bottom and top rail (m)
    cuts: dict[str, ModeCut]
        The cuts of the ports, keyed by name (see PORT_NAMES)
    """

    geometry: DeviceGeometry
    grid: SimulationGrid
    design_origin: tuple[int, int]
    design_shape: tuple[int, int]
    rail_centers: tuple[float, float]
    cuts: dict[str, ModeCut]

    def port(
        self,
        name: str,
        wavelength: float,
        role: PortRoleEnum,
        phase: float = 0.0,
        weight: float = 1.0,
    ) -> PortSpec:
        """Return a port with its fundamental mode solved at a wavelength.

        Parameters
        ----------
        name: str
            The name of the port (see PORT_NAMES)
        wavelength: float
            The free-space wavelength (m)
        role: PortRoleEnum
            Whether the port is a source or a monitor
        phase: float
            The phase of a source (rad)
        weight: float
            The injected power of a source

        Returns
        -------
        PortSpec
            The port
        """
        cut = self.cuts[name]
        direction = DirectionEnum.BACKWARD if name.endswith("_back") else DirectionEnum.FORWARD
        mode = solve_slab_mode(
            eps_line=self.grid.eps_r[cut.x, cut.y_start : cut.y_stop],
            dx=self.grid.dx,
            lambda0=wavelength,
            mode_index=0,
            direction=direction,
        ).placed(cut=cut)
        return PortSpec(role=role, mode=mode, phase=phase, weight=weight)


def layout_device(geometry: DeviceGeometry) -> DeviceLayout:
    """Lay out the background grid and ports of a device.

    Along x, the domain holds the absorbing layer, the input leads, the design region, the output leads and the
    absorbing layer; along y, the absorbing layer, y_margin of cladding, the design region, y_margin and the absorbing
    layer. Sources sit at a third of the input leads with reflection monitors behind them; output monitors sit at two
    thirds of the output leads.

    Parameters
    ----------
    geometry: DeviceGeometry
        The geometry

    Returns
    -------
    DeviceLayout
        The background grid with silica in the design region, the design region placement and the port cuts
    """
    pml = geometry.pml_cells
    lead = geometry.cells(geometry.lead_length)
    region = geometry.cells(geometry.region)
    margin = geometry.cells(geometry.y_margin)
    nx = 2 * pml + 2 * lead + region
    ny = 2 * pml + 2 * margin + region

    center = (ny / 2) * geometry.dx
    rail_centers = (center - geometry.rail_spacing / 2, center + geometry.rail_spacing / 2)
    line = np.full(ny, EPS_SILICA)
    for rail in rail_centers:
        fraction = fill_fraction(ny, geometry.dx, rail - geometry.wg_width / 2, rail + geometry.wg_width / 2)
        line = line + fraction * (EPS_SILICON - EPS_SILICA)
    eps = np.tile(line, (nx, 1))
    design_origin = (pml + lead, pml + margin)
    eps[design_origin[0] : design_origin[0] + region, design_origin[1] : design_origin[1] + region] = EPS_SILICA

    half_window = min(geometry.wg_width / 2 + MODE_CUT_MARGIN, geometry.rail_spacing / 2)
    cuts: dict[str, ModeCut] = {}
    positions = {
        "in": pml + lead // 3,
        "back": pml + max(1, lead // 3 - 4),
        "out": nx - pml - lead // 3 - 1,
    }
    for rail, side in zip(rail_centers, ("bottom", "top")):
        y_start = max(pml, int(round((rail - half_window) / geometry.dx)))
        y_stop = min(ny - pml, int(round((rail + half_window) / geometry.dx)))
        for kind, x in positions.items():
            cuts[f"{side}_{kind}"] = ModeCut(x=x, y_start=y_start, y_stop=y_stop)

    grid = SimulationGrid(
        dx=geometry.dx,
        lambda0=LAMBDA_CENTER,
        eps_r=eps,
        pml_cells=pml,
        pml_order=geometry.pml_order,
        pml_reflection=geometry.pml_reflection,
    )
    factor = geometry.cells(geometry.pixel_pitch)
    debug(f"Laid out a {nx} x {ny} device grid with a {region // factor} pixel design region at {design_origin}")
    return DeviceLayout(
        geometry=geometry,
        grid=grid,
        design_origin=design_origin,
        design_shape=(region // factor, region // factor),
        rail_centers=rail_centers,
        cuts=cuts,
    )
