"""Checks for artifacts, routes and responses."""
from __future__ import annotations

from abc import ABC, abstractmethod
from logging import debug, info
from pathlib import Path

from orjson import JSONDecodeError, loads

from photon_fabric.common.enums import ActionStateEnum
from photon_fabric.common.models import ArtifactHeader
from photon_fabric.netsim.circuit import TransferMatrix, is_unitary
from photon_fabric.routing.models import RouteRecord


class Check(ABC):
    """An abstract base class to describe a check.

    Checks are Callables, that run a check (e.g. on an input) and must not alter data.

    Attributes
    ----------
    state: ActionStateEnum
        A member of ActionStateEnum indicating whether a Check is not started, started, failed or succeeded (defaults to
        ActionStateEnum.NOT_STARTED
    """

    state: ActionStateEnum = ActionStateEnum.NOT_STARTED

    @abstractmethod
    def __call__(self) -> ActionStateEnum:  # pragma: no cover
        """Call a Check.

        The method is expected to set the Check's state property to ActionStateEnum.STARTED, run a check
        operation, set the state property to either ActionStateEnum.SUCCESS or to ActionStateEnum.FAILED (depending on
        whether the check operation finished successfully or not, respectively) and return the state.

        Returns
        -------
        ActionStateEnum
            ActionStateEnum.SUCCESS if the check passed successfully,
            ActionStateEnum.FAILED otherwise
        """
        pass


class ArtifactsExistCheck(Check):
    """A Check to ensure that a list of files exists.

    Attributes
    ----------
    paths: list[Path]
        The files
    """

    def __init__(self, paths: list[Path]) -> None:
        """Initialize a check of the files in paths."""
        self.paths = paths

    def __call__(self) -> ActionStateEnum:
        """Check that every file exists.

        Returns
        -------
        ActionStateEnum
            ActionStateEnum.SUCCESS if the check passed successfully,
            ActionStateEnum.FAILED otherwise
        """
        self.state = ActionStateEnum.STARTED
        missing = [path for path in self.paths if not path.is_file()]
        if missing:
            info(f"The artifacts {missing} do not exist!")
            self.state = ActionStateEnum.FAILED
            return self.state

        self.state = ActionStateEnum.SUCCESS
        return self.state


def embedded_hash(path: Path) -> str | None:
    """Return the configuration hash a JSON or CSV artifact carries.

    Parameters
    ----------
    path: Path
        The artifact (".json" and ".json.tmp" files are read as JSON, all others as CSV)

    Returns
    -------
    str | None
        The hash or None if the artifact carries none
    """
    if path.name.removesuffix(".tmp").endswith(".json"):
        try:
            document = loads(path.read_bytes())
        except JSONDecodeError:
            return None
        return document.get("config_hash") if isinstance(document, dict) else None

    with open(path, "r") as input_file:
        first_line = input_file.readline().split()
    if len(first_line) == 5 and first_line[0] == "#" and first_line[3] == "config-sha256":
        return first_line[4]
    return None


class ConfigHashCheck(Check):
    """A Check to ensure that JSON and CSV artifacts carry the hash of the configuration they were created from.

    Raster artifacts carry no header and must not be passed to this Check.

    Attributes
    ----------
    paths: list[Path]
        The JSON (".json" or ".json.tmp") and CSV files
    header: ArtifactHeader
        The expected self-description
    """

    def __init__(self, paths: list[Path], header: ArtifactHeader) -> None:
        """Initialize an instance of ConfigHashCheck.

        Parameters
        ----------
        paths: list[Path]
            The JSON and CSV files
        header: ArtifactHeader
            The expected self-description
        """
        self.paths = paths
        self.header = header

    def __call__(self) -> ActionStateEnum:
        """Compare the configuration hash embedded in every file with the expected one.

        Returns
        -------
        ActionStateEnum
            ActionStateEnum.SUCCESS if the check passed successfully,
            ActionStateEnum.FAILED otherwise
        """
        self.state = ActionStateEnum.STARTED
        for path in self.paths:
            try:
                embedded = embedded_hash(path)
            except OSError as e:
                info(e)
                self.state = ActionStateEnum.FAILED
                return self.state
            debug(f"The artifact {path} embeds the configuration hash {embedded}")
            if embedded != self.header.config_hash:
                info(f"The artifact {path} does not carry the configuration hash {self.header.config_hash}!")
                self.state = ActionStateEnum.FAILED
                return self.state

        self.state = ActionStateEnum.SUCCESS
        return self.state


class RouteVerifiedCheck(Check):
    """A Check to ensure that switch states realize their requests.

    Attributes
    ----------
    records: list[RouteRecord]
        The verification records
    """

    def __init__(self, records: list[RouteRecord]) -> None:
        """Initialize a check of verification records."""
        self.records = records

    def __call__(self) -> ActionStateEnum:
        """Check that every record is verified.

        Returns
        -------
        ActionStateEnum
            ActionStateEnum.SUCCESS if the check passed successfully,
            ActionStateEnum.FAILED otherwise
        """
        self.state = ActionStateEnum.STARTED
        failed = [record.request_id for record in self.records if not record.verified]
        if failed:
            info(f"The requests {failed} are not realized by their switch states!")
            self.state = ActionStateEnum.FAILED
            return self.state

        self.state = ActionStateEnum.SUCCESS
        return self.state


class UnitaryCheck(Check):
    """A Check to ensure that the responses of a lossless circuit are unitary.

    Attributes
    ----------
    responses: list[TransferMatrix]
        The responses
    tol: float
        The largest tolerated entry of |T^H T - I|
    """

    def __init__(self, responses: list[TransferMatrix], tol: float = 1e-9) -> None:
        """Initialize a check of transfer matrices with a tolerance."""
        self.responses = responses
        self.tol = tol

    def __call__(self) -> ActionStateEnum:
        """Check that every response is unitary.

        Returns
        -------
        ActionStateEnum
            ActionStateEnum.SUCCESS if the check passed successfully,
            ActionStateEnum.FAILED otherwise
        """
        self.state = ActionStateEnum.STARTED
        for response in self.responses:
            if not is_unitary(response.matrix, tol=self.tol):
                info(f"The response at {response.wavelength * 1e9:.4f} nm is not unitary!")
                self.state = ActionStateEnum.FAILED
                return self.state

        self.state = ActionStateEnum.SUCCESS
        return self.state
