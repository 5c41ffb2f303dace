"""CSV import and export of permittivity maps.

Maps are stored row-major with one row per y-line, i.e. row j holds eps_r[:, j].
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from photon_fabric.common.models import ArtifactHeader
from photon_fabric.common.tables import parse_table, read_table, render_table
from photon_fabric.errors import ArtifactError


def permittivity_to_csv(eps_r: np.ndarray, header: ArtifactHeader | None = None) -> str:
    """Render a permittivity map as CSV text.

    Parameters
    ----------
    eps_r: np.ndarray
        An nx x ny permittivity map
    header: ArtifactHeader | None
        An optional self-description

    Returns
    -------
    str
        The CSV text with ny rows of nx values
    """
    return render_table(rows=np.asarray(eps_r, dtype=float).T, header=header)


def _validated(table: np.ndarray, source: str) -> np.ndarray:
    if table.size == 0 or table.min() < 1.0:
        raise ArtifactError(f"The permittivity map '{source}' is empty or contains values below 1.0!")
    return np.ascontiguousarray(table.T)


def permittivity_from_csv(text: str) -> np.ndarray:
    """Parse a permittivity map from CSV text.

    Parameters
    ----------
    text: str
        CSV text as rendered by permittivity_to_csv

    Raises
    ------
    ArtifactError
        If the text is not a valid permittivity map

    Returns
    -------
    np.ndarray
        The nx x ny permittivity map
    """
    _, table = parse_table(text=text)
    return _validated(table=table, source="<string>")


async def read_permittivity(path: Path) -> np.ndarray:
    """Read a permittivity map from a CSV file.

    Parameters
    ----------
    path: Path
        The path of the CSV file

    Raises
    ------
    ArtifactNotFoundError
        If the file does not exist
    ArtifactError
        If the file is not a valid permittivity map

    Returns
    -------
    np.ndarray
        The nx x ny permittivity map
    """
    _, table = await read_table(path=path)
    return _validated(table=table, source=str(path))
