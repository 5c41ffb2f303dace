"""Import of parameter sets and CSV export of responses and path metrics."""
from __future__ import annotations

from pathlib import Path

import numpy as np
from aiofiles import open as async_open
from orjson import JSONDecodeError, dumps, loads
from pydantic import ValidationError as PydanticValidationError

from photon_fabric.common.models import ArtifactHeader
from photon_fabric.common.tables import render_table
from photon_fabric.config.defaults import ORJSON_OPTION
from photon_fabric.errors import ArtifactNotFoundError, ValidationError
from photon_fabric.netsim.circuit import PathMetrics, TransferMatrix
from photon_fabric.netsim.models import DeviceParameterSet


def parameter_set_from_json(document: bytes | str, source: str = "<string>") -> DeviceParameterSet:
    """Parse a parameter set from JSON.

    Parameters
    ----------
    document: bytes | str
        The JSON document
    source: str
        The origin of the document, used in error messages

    Raises
    ------
    ValidationError
        If the document is no valid JSON or no valid parameter set

    Returns
    -------
    DeviceParameterSet
        The parameter set
    """
    try:
        return DeviceParameterSet.parse_obj(loads(document))
    except JSONDecodeError as e:
        raise ValidationError(f"The parameter set in {source} is not valid JSON!\n{e}")
    except PydanticValidationError as e:
        raise ValidationError(f"The parameter set in {source} is invalid!\n{e}")


def parameter_set_to_json(params: DeviceParameterSet) -> bytes:
    """Serialize a parameter set to JSON."""
    return dumps(params.dict(), option=ORJSON_OPTION)


async def read_parameter_set(path: Path) -> DeviceParameterSet:
    """Read a parameter set from a JSON file.

    Parameters
    ----------
    path: Path
        The path of the file

    Raises
    ------
    ArtifactNotFoundError
        If the file does not exist
    ValidationError
        If the file is no valid parameter set

    Returns
    -------
    DeviceParameterSet
        The parameter set
    """
    if not path.exists():
        raise ArtifactNotFoundError(f"The parameter set '{path}' does not exist!")
    async with async_open(path, "rb") as input_file:
        return parameter_set_from_json(document=await input_file.read(), source=str(path))


def response_columns(n_rails: int) -> list[str]:
    """Return the column names of a response table.

    Parameters
    ----------
    n_rails: int
        The number of rails

    Returns
    -------
    list[str]
        "wavelength_nm" and one "P_<output>_<input>" column per matrix entry in row-major order
    """
    return ["wavelength_nm"] + [f"P_{output}_{port}" for output in range(n_rails) for port in range(n_rails)]


def response_to_csv(responses: list[TransferMatrix], header: ArtifactHeader | None = None) -> str:
    """Render the power transmission of responses as CSV text.

    Parameters
    ----------
    responses: list[TransferMatrix]
        The responses, all of the same size
    header: ArtifactHeader | None
        An optional self-description

    Returns
    -------
    str
        The CSV text with one row per wavelength
    """
    n_rails = responses[0].matrix.shape[0] if responses else 0
    rows = np.array(
        [[response.wavelength * 1e9] + list(response.power().ravel()) for response in responses],
        dtype=float,
    ).reshape(len(responses), 1 + n_rails**2)
    return render_table(rows=rows, columns=response_columns(n_rails), header=header)


PATH_METRICS_COLUMNS = ["wavelength_nm", "input", "output", "insertion_loss_db", "crosstalk_db"]


def path_metrics_to_csv(metrics: list[PathMetrics], header: ArtifactHeader | None = None) -> str:
    """Render path metrics as CSV text.

    Parameters
    ----------
    metrics: list[PathMetrics]
        The metrics
    header: ArtifactHeader | None
        An optional self-description

    Returns
    -------
    str
        The CSV text with one row per path and wavelength
    """
    rows = np.array(
        [
            [entry.wavelength * 1e9, entry.input_rail, entry.output_rail, entry.insertion_loss_db, entry.crosstalk_db]
            for entry in metrics
        ],
        dtype=float,
    ).reshape(len(metrics), len(PATH_METRICS_COLUMNS))
    return render_table(rows=rows, columns=PATH_METRICS_COLUMNS, header=header)
