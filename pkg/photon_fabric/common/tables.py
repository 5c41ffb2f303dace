"""Rendering and parsing of the numeric CSV tables written as artifacts."""
from __future__ import annotations

from io import StringIO
from pathlib import Path

import numpy as np
from aiofiles import open as async_open

from photon_fabric.common.models import ArtifactHeader
from photon_fabric.errors import ArtifactError, ArtifactNotFoundError


def render_table(rows: np.ndarray, columns: list[str] | None = None, header: ArtifactHeader | None = None) -> str:
    """Render a 2D array as CSV text.

    Parameters
    ----------
    rows: np.ndarray
        A 2D real array (a 1D array is rendered as one row)
    columns: list[str] | None
        Optional column names, written as the first non-comment line
    header: ArtifactHeader | None
        An optional self-description, written as a leading comment line

    Raises
    ------
    ValueError
        If the number of columns does not match the array

    Returns
    -------
    str
        The CSV text, terminated by a newline
    """
    table = np.atleast_2d(np.asarray(rows, dtype=float))
    if columns is not None and len(columns) != table.shape[1]:
        raise ValueError(f"Got {len(columns)} column names for a table with {table.shape[1]} columns!")

    output = StringIO()
    if header is not None:
        output.write(header.csv_comment() + "\n")
    if columns is not None:
        output.write(",".join(columns) + "\n")
    if table.size:
        np.savetxt(output, table, delimiter=",", fmt="%.12g")
    return output.getvalue()


def _is_numeric_row(line: str) -> bool:
    try:
        for value in line.split(","):
            float(value)
    except ValueError:
        return False
    return True


def parse_table(text: str, source: str = "<string>") -> tuple[list[str], np.ndarray]:
    """Parse CSV text rendered by render_table.

    Parameters
    ----------
    text: str
        The CSV text
    source: str
        A name of the origin of text, used in error messages

    Raises
    ------
    ArtifactError
        If the text can not be parsed as a numeric table

    Returns
    -------
    tuple[list[str], np.ndarray]
        The column names (empty if there are none) and the 2D table
    """
    lines = [line for line in text.splitlines() if line.strip() and not line.startswith("#")]
    columns: list[str] = []
    if lines and not _is_numeric_row(lines[0]):
        columns = [name.strip() for name in lines[0].split(",")]
        lines = lines[1:]
    if not lines:
        return columns, np.zeros((0, len(columns)))
    try:
        table = np.atleast_2d(np.loadtxt(StringIO("\n".join(lines)), delimiter=",", ndmin=2))
    except ValueError as e:
        raise ArtifactError(f"The table '{source}' could not be parsed!\n{e}")
    return columns, table


async def read_table(path: Path) -> tuple[list[str], np.ndarray]:
    """Read a CSV table from a file.

    Parameters
    ----------
    path: Path
        The path of a CSV file

    Raises
    ------
    ArtifactNotFoundError
        If the file does not exist
    ArtifactError
        If the file can not be parsed

    Returns
    -------
    tuple[list[str], np.ndarray]
        The column names (empty if there are none) and the 2D table
    """
    if not path.exists():
        raise ArtifactNotFoundError(f"The table '{path}' does not exist!")
    async with async_open(path, "r") as input_file:
        return parse_table(text=await input_file.read(), source=str(path))
