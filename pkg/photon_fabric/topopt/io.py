"""Import and export of density fields and optimization histories."""
from __future__ import annotations

from io import BytesIO
from pathlib import Path

import numpy as np
from matplotlib import pyplot

from photon_fabric.common.models import ArtifactHeader
from photon_fabric.common.tables import parse_table, read_table, render_table
from photon_fabric.errors import ArtifactError
from photon_fabric.topopt.density import DensityField
from photon_fabric.topopt.optimizer import OptimizationHistory


def density_to_csv(density: DensityField, header: ArtifactHeader | None = None) -> str:
    """Render densities as CSV text with one row per y-line.

    Parameters
    ----------
    density: DensityField
        The density field
    header: ArtifactHeader | None
        An optional self-description

    Returns
    -------
    str
        The CSV text
    """
    return render_table(rows=density.rho.T, header=header)


def _density(table: np.ndarray, source: str, pixel_pitch: float, origin: tuple[int, int]) -> DensityField:
    try:
        return DensityField(rho=table.T, pixel_pitch=pixel_pitch, origin=origin)
    except ValueError as e:
        raise ArtifactError(f"The density table '{source}' is invalid!\n{e}")


def density_from_csv(text: str, pixel_pitch: float, origin: tuple[int, int] = (0, 0)) -> DensityField:
    """Parse densities from CSV text.

    Parameters
    ----------
    text: str
        CSV text as rendered by density_to_csv
    pixel_pitch: float
        The pixel edge length (m)
    origin: tuple[int, int]
        The grid cell of the lower left corner of the design region

    Raises
    ------
    ArtifactError
        If the table is not a valid density matrix

    Returns
    -------
    DensityField
        The density field
    """
    _, table = parse_table(text=text)
    return _density(table=table, source="<string>", pixel_pitch=pixel_pitch, origin=origin)


async def read_density(path: Path, pixel_pitch: float, origin: tuple[int, int] = (0, 0)) -> DensityField:
    """Read densities from a CSV file.

    Parameters
    ----------
    path: Path
        The path of the CSV file
    pixel_pitch: float
        The pixel edge length (m)
    origin: tuple[int, int]
        The grid cell of the lower left corner of the design region

    Raises
    ------
    ArtifactNotFoundError
        If the file does not exist
    ArtifactError
        If the table is not a valid density matrix

    Returns
    -------
    DensityField
        The density field
    """
    _, table = await read_table(path=path)
    return _density(table=table, source=str(path), pixel_pitch=pixel_pitch, origin=origin)


def history_columns(port_names: list[list[str]]) -> list[str]:
    """Return the column names of a history table.

    Parameters
    ----------
    port_names: list[list[str]]
        The target port names per condition

    Returns
    -------
    list[str]
        "iteration", "objective", "beta" and one "P_<condition index>_<port>" column per target
    """
    return ["iteration", "objective", "beta"] + [
        f"P_{index}_{name}" for index, names in enumerate(port_names) for name in names
    ]


def history_to_csv(
    history: OptimizationHistory,
    port_names: list[list[str]],
    header: ArtifactHeader | None = None,
) -> str:
    """Render an optimization history as CSV text.

    Parameters
    ----------
    history: OptimizationHistory
        The history
    port_names: list[list[str]]
        The target port names per condition
    header: ArtifactHeader | None
        An optional self-description

    Returns
    -------
    str
        The CSV text with one row per iteration
    """
    columns = history_columns(port_names=port_names)
    rows = np.array(
        [
            [record.iteration, record.objective, record.beta] + [power for powers in record.powers for power in powers]
            for record in history.records
        ],
        dtype=float,
    ).reshape(len(history.records), len(columns))
    return render_table(rows=rows, columns=columns, header=header)


def density_to_png(density: DensityField) -> bytes:
    """Render densities as a lossless grayscale raster.

    Silicon (1.0) is white and silica (0.0) black; the image rows are y-lines with y increasing upwards.

    Parameters
    ----------
    density: DensityField
        The density field

    Returns
    -------
    bytes
        The PNG image
    """
    buffer = BytesIO()
    pyplot.imsave(buffer, density.rho.T, cmap="gray", vmin=0.0, vmax=1.0, origin="lower", format="png")
    return buffer.getvalue()
