"""Import of requests and switch states and CSV export of verification reports."""
from __future__ import annotations

from pathlib import Path

import numpy as np
from aiofiles import open as async_open
from orjson import JSONDecodeError, loads
from pydantic import ValidationError as PydanticValidationError
from pydantic import parse_obj_as

from photon_fabric.common.models import ArtifactHeader
from photon_fabric.common.tables import render_table
from photon_fabric.errors import ArtifactNotFoundError, ValidationError
from photon_fabric.routing.models import Permutation, RouteRecord, SwitchState, WavelengthRequest

Request = Permutation | WavelengthRequest


def requests_from_json(document: bytes | str, source: str = "<string>") -> list[Request]:
    """Parse one request or a list of requests from JSON.

    Objects with a "sigma" field are permutations, objects with a "routes" field are wavelength requests.

    Parameters
    ----------
    document: bytes | str
        The JSON document
    source: str
        The origin of the document, used in error messages

    Raises
    ------
    ValidationError
        If the document is no valid JSON or contains an invalid request

    Returns
    -------
    list[Request]
        The requests in order of the document
    """
    try:
        data = loads(document)
        return parse_obj_as(list[Request], data if isinstance(data, list) else [data])  # type: ignore[arg-type]
    except JSONDecodeError as e:
        raise ValidationError(f"The requests in {source} are not valid JSON!\n{e}")
    except PydanticValidationError as e:
        raise ValidationError(f"The requests in {source} are invalid!\n{e}")


async def read_requests(path: Path) -> list[Request]:
    """Read one request or a list of requests from a JSON file.

    Parameters
    ----------
    path: Path
        The path of the file

    Raises
    ------
    ArtifactNotFoundError
        If the file does not exist
    ValidationError
        If the file contains an invalid request

    Returns
    -------
    list[Request]
        The requests
    """
    if not path.exists():
        raise ArtifactNotFoundError(f"The request file '{path}' does not exist!")
    async with async_open(path, "rb") as input_file:
        return requests_from_json(document=await input_file.read(), source=str(path))


async def read_state(path: Path) -> SwitchState:
    """Read a switch state from a JSON file.

    Fields other than those of a switch state (e.g. the artifact header) are ignored.

    Parameters
    ----------
    path: Path
        The path of the file

    Raises
    ------
    ArtifactNotFoundError
        If the file does not exist
    ValidationError
        If the file is no valid switch state

    Returns
    -------
    SwitchState
        The state
    """
    if not path.exists():
        raise ArtifactNotFoundError(f"The switch state '{path}' does not exist!")
    async with async_open(path, "rb") as input_file:
        document = await input_file.read()
    try:
        return SwitchState.parse_obj(loads(document))
    except JSONDecodeError as e:
        raise ValidationError(f"The switch state in {path} is not valid JSON!\n{e}")
    except PydanticValidationError as e:
        raise ValidationError(f"The switch state in {path} is invalid!\n{e}")


VERIFICATION_COLUMNS = ["request_id", "verified", "non_ambient", "crosses"]


def verification_to_csv(records: list[RouteRecord], header: ArtifactHeader | None = None) -> str:
    """Render verification records as CSV text.

    Parameters
    ----------
    records: list[RouteRecord]
        The records
    header: ArtifactHeader | None
        An optional self-description

    Returns
    -------
    str
        The CSV text with one row per request, verified as 1 or 0
    """
    rows = np.array(
        [[record.request_id, int(record.verified), record.non_ambient, record.crosses] for record in records],
        dtype=int,
    ).reshape(len(records), len(VERIFICATION_COLUMNS))
    return render_table(rows=rows, columns=VERIFICATION_COLUMNS, header=header)
