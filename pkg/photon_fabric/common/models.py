"""Pydantic models and helpers shared throughout the codebase."""
from __future__ import annotations

from hashlib import sha256
from importlib.metadata import PackageNotFoundError, version
from typing import Any

from orjson import OPT_SERIALIZE_NUMPY, OPT_SORT_KEYS, dumps
from pydantic import BaseModel, NonNegativeFloat, PositiveInt, constr

SHA256_HEX = r"^[a-f0-9]{64}$"


def toolkit_version() -> str:
    """Return the installed version of photon-fabric.

    Returns
    -------
    str
        The version string of the distribution or "0.0.0" if it is not installed
    """
    try:
        return version("photon-fabric")
    except PackageNotFoundError:
        return "0.0.0"


def config_hash(config: dict[str, Any]) -> str:
    """Return the SHA-256 sum of a configuration in canonical JSON form.

    Parameters
    ----------
    config: dict[str, Any]
        A configuration dict (may contain numpy arrays)

    Returns
    -------
    str
        The hex digest of the sorted, compact JSON representation of config
    """
    return sha256(dumps(config, option=OPT_SORT_KEYS | OPT_SERIALIZE_NUMPY)).hexdigest()


class ArrayModel(BaseModel):
    """A base model for models carrying numpy arrays.

    Instances are immutable after validation.
    """

    class Config:
        """Allow numpy arrays and freeze the instances."""

        arbitrary_types_allowed = True
        allow_mutation = False


class ArtifactHeader(BaseModel):
    """A model describing the self-description of every artifact.

    Attributes
    ----------
    toolkit_version: str
        The version of photon-fabric that created the artifact
    config_hash: str
        The SHA-256 sum of the configuration the artifact was created from
    """

    toolkit_version: str
    config_hash: constr(regex=SHA256_HEX)  # type: ignore[valid-type]  # noqa: F722

    @classmethod
    def from_config(cls, config: dict[str, Any]) -> ArtifactHeader:
        """Create an ArtifactHeader for a configuration.

        Parameters
        ----------
        config: dict[str, Any]
            The configuration of a command

        Returns
        -------
        ArtifactHeader
            The header with the current toolkit version and the hash of config
        """
        return cls(toolkit_version=toolkit_version(), config_hash=config_hash(config))

    def csv_comment(self) -> str:
        """Return the header as a CSV comment line.

        Returns
        -------
        str
            A line of the form "# photon-fabric <version> config-sha256 <hash>"
        """
        return f"# photon-fabric {self.toolkit_version} config-sha256 {self.config_hash}"


class Wavelengths(BaseModel):
    """A model describing an inclusive, evenly spaced wavelength band in nm.

    Attributes
    ----------
    start: float
        The first wavelength (nm)
    stop: float
        The last wavelength (nm), included if it is reached by whole steps
    step: float
        The spacing (nm)
    """

    start: NonNegativeFloat
    stop: NonNegativeFloat
    step: NonNegativeFloat

    def count(self) -> PositiveInt:
        """Return the number of samples in the band.

        Raises
        ------
        ValueError
            If step is not positive or stop lies below start

        Returns
        -------
        int
            The number of wavelengths
        """
        if self.step <= 0:
            raise ValueError(f"The wavelength step must be positive, but got {self.step}!")
        if self.stop < self.start:
            raise ValueError(f"The band stop {self.stop} lies below its start {self.start}!")
        return int(round((self.stop - self.start) / self.step, 9)) + 1

    def nm(self) -> list[float]:
        """Return the wavelengths of the band in nm.

        Returns
        -------
        list[float]
            The sampled wavelengths, rounded to 1e-9 nm
        """
        return [round(self.start + index * self.step, 9) for index in range(self.count())]

    def meters(self) -> list[float]:
        """Return the wavelengths of the band in m.

        Returns
        -------
        list[float]
            The sampled wavelengths
        """
        return [value * 1e-9 for value in self.nm()]
