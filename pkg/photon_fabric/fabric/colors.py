"""Color assignment of wavelength-dedicated elements."""
from __future__ import annotations

from logging import debug

from photon_fabric.common.enums import ArchitectureKindEnum
from photon_fabric.config.defaults import (
    MULTICROSSBAR_PALETTE_NM,
    MUX_PALETTE_NM,
    RESONATOR_Q,
    WCC_PALETTE_NM,
    WSS_6X6X4_PALETTE_NM,
)
from photon_fabric.errors import PaletteTooSmall
from photon_fabric.fabric.layout import CircuitLayout, Column

DEFAULT_PALETTES: dict[ArchitectureKindEnum, tuple[float, ...]] = {
    ArchitectureKindEnum.MUX8: MUX_PALETTE_NM,
    ArchitectureKindEnum.DEMUX8: MUX_PALETTE_NM,
    ArchitectureKindEnum.MULTICROSSBAR: MULTICROSSBAR_PALETTE_NM,
    ArchitectureKindEnum.WSS_6X6X4: WSS_6X6X4_PALETTE_NM,
    ArchitectureKindEnum.WSS_8X8X3: MULTICROSSBAR_PALETTE_NM,
    ArchitectureKindEnum.WCC_4X4X4: WCC_PALETTE_NM,
}


def check_palette(palette: list[float] | tuple[float, ...], required: int) -> list[float]:
    """Return the first colors of a palette after checking that they are distinct.

    Parameters
    ----------
    palette: list[float] | tuple[float, ...]
        The resonances (nm)
    required: int
        The number of distinct colors needed

    Raises
    ------
    PaletteTooSmall
        If the palette has fewer than required entries or its first required entries are not distinct

    Returns
    -------
    list[float]
        The first required entries of palette
    """
    colors = [float(color) for color in palette[:required]]
    if len(colors) < required:
        raise PaletteTooSmall(f"A palette of {len(colors)} colors can not provide the {required} colors required!")
    if len(set(colors)) < required:
        raise PaletteTooSmall(f"The colors {colors} are not distinct!")
    return colors


def assign_colors(layout: CircuitLayout, palette: list[float] | tuple[float, ...]) -> CircuitLayout:
    """Tag the wavelength-dedicated elements of a layout with the colors of a palette.

    An element tagged with color k of the layout's palette is tagged with color k of the new palette.

    Parameters
    ----------
    layout: CircuitLayout
        The layout
    palette: list[float] | tuple[float, ...]
        The new resonances (nm)

    Raises
    ------
    PaletteTooSmall
        If the palette can not provide as many distinct colors as the layout uses

    Returns
    -------
    CircuitLayout
        A copy of the layout with the new colors
    """
    colors = check_palette(palette, len(layout.palette))
    mapping = dict(zip(layout.palette, colors))
    columns = [
        Column(
            placements=[
                placement.copy(update={"color_nm": mapping[placement.color_nm]})
                if placement.color_nm is not None
                else placement
                for placement in column.placements
            ],
            permutation=column.permutation,
        )
        for column in layout.columns
    ]
    debug(f"Recolored {layout.kind} from {layout.palette} to {colors}")
    return layout.copy(update={"columns": columns, "palette": colors})


def at_color(resonance_nm: float, wavelength_nm: float, q: float = RESONATOR_Q) -> bool:
    """Return whether a wavelength lies within half a linewidth of a resonance.

    Parameters
    ----------
    resonance_nm: float
        The resonance of an element (nm)
    wavelength_nm: float
        The wavelength (nm)
    q: float
        The quality factor of the element

    Returns
    -------
    bool
        True if |wavelength_nm - resonance_nm| < resonance_nm / (2 * q), False otherwise
    """
    return abs(wavelength_nm - resonance_nm) < resonance_nm / (2 * q)
