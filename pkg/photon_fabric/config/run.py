"""Validated configurations of the commands of photon-fabric.

Each command is driven by one RunConfig. A command line is translated into its RunConfig, or the RunConfig is read
from a JSON document, so that both ways of running a command are validated the same way and hash to the same artifact
header.
"""
from __future__ import annotations

from pathlib import Path
from typing import Any, TypeVar

from orjson import JSONDecodeError, loads
from pydantic import BaseModel, Extra, Field, NonNegativeInt, PositiveInt
from pydantic import ValidationError as PydanticValidationError
from pydantic import validator

from photon_fabric.common.enums import DeviceKindEnum, ScaleEnum
from photon_fabric.common.models import ArtifactHeader, Wavelengths
from photon_fabric.errors import ValidationError
from photon_fabric.fabric.layout import ArchitectureSpec

DEVICE_SOURCES = ("top_in", "bottom_in")


def _nonempty_band(band: Wavelengths) -> Wavelengths:
    band.count()
    return band


class RunConfig(BaseModel):
    """The base of all command configurations.

    Unknown fields are rejected, so that typos in JSON documents do not silently fall back to defaults.
    """

    class Config:
        """Reject unknown fields."""

        extra = Extra.forbid

    def header(self, **context: Any) -> ArtifactHeader:
        """Return the self-description of the artifacts created from this configuration.

        Parameters
        ----------
        context: Any
            Additional JSON-serializable inputs of the command that are not part of the configuration (e.g. resolved
            settings)

        Returns
        -------
        ArtifactHeader
            The header hashing the configuration and the context
        """
        return ArtifactHeader.from_config(loads(self.json()) | {"command": type(self).__name__} | context)


class OptimizeConfig(RunConfig):
    """The configuration of an optimization run.

    Attributes
    ----------
    device: DeviceKindEnum
        The device to design
    scale: ScaleEnum
        The preset (defaults to ScaleEnum.DESK)
    seed: int
        The seed of the initial noise, mandatory so that every run can be reproduced
    iterations: int | None
        The iteration budget, None for the default of the scale
    noise: float
        The amplitude of the uniform noise added to the initial densities of 0.5 (defaults to 0.0)
    """

    device: DeviceKindEnum
    scale: ScaleEnum = ScaleEnum.DESK
    seed: NonNegativeInt
    iterations: PositiveInt | None = None
    noise: float = Field(0.0, ge=0.0, le=0.5)


class DeviceRunConfig(RunConfig):
    """The configuration of a command working on an existing design.

    Attributes
    ----------
    device: DeviceKindEnum
        The device the design belongs to
    scale: ScaleEnum
        The preset the design was optimized for
    density: Path
        The CSV file of the design's densities
    """

    device: DeviceKindEnum
    scale: ScaleEnum = ScaleEnum.DESK
    density: Path


class EvaluateConfig(DeviceRunConfig):
    """The configuration of a device evaluation.

    Attributes
    ----------
    combiner: bool
        Whether to additionally inject both inputs with a phase difference of +pi/2 and -pi/2 (defaults to False)
    """

    combiner: bool = False


class SweepConfig(DeviceRunConfig):
    """The configuration of a wavelength sweep of a device.

    Attributes
    ----------
    band: Wavelengths
        The swept band (nm)
    source: str
        The input port (defaults to "top_in")
    """

    band: Wavelengths
    source: str = "top_in"

    _validate_band = validator("band", allow_reuse=True)(_nonempty_band)

    @validator("source")
    def validate_source(cls, source: str) -> str:
        """Validate that the source is one of the inputs of a device."""
        if source not in DEVICE_SOURCES:
            raise ValueError(f"The source must be one of {DEVICE_SOURCES}, not '{source}'!")
        return source


class CircuitConfig(RunConfig):
    """The configuration of a generated architecture.

    Attributes
    ----------
    architecture: ArchitectureSpec
        The architecture and its size
    """

    architecture: ArchitectureSpec


class RouteConfig(RunConfig):
    """The configuration of a routing run.

    Attributes
    ----------
    layout: Path
        The JSON file of the layout
    request: Path
        The JSON file of one request or a list of requests
    """

    layout: Path
    request: Path


class SimulateConfig(RunConfig):
    """The configuration of a circuit simulation.

    Attributes
    ----------
    layout: Path
        The JSON file of the layout
    state: Path
        The JSON file of the switch state
    params: Path | None
        An optional JSON file of a parameter set, which takes precedence over parameter_set
    parameter_set: str | None
        The name of a built-in parameter set, None for the default of the settings
    band: Wavelengths
        The simulated band (nm)
    request: Path | None
        An optional JSON file of the request the state realizes, whose connections are the intended paths. Without
        it, the paths traced through the state are the intended ones.
    """

    layout: Path
    state: Path
    params: Path | None = None
    parameter_set: str | None = None
    band: Wavelengths
    request: Path | None = None

    _validate_band = validator("band", allow_reuse=True)(_nonempty_band)


ConfigT = TypeVar("ConfigT", bound=RunConfig)


def run_config_from_json(model: type[ConfigT], document: bytes | str, source: str = "<string>") -> ConfigT:
    """Parse a command configuration from JSON.

    Parameters
    ----------
    model: type[ConfigT]
        The configuration model of the command
    document: bytes | str
        The JSON document
    source: str
        The origin of the document, used in error messages

    Raises
    ------
    ValidationError
        If the document is no valid JSON or violates the configuration schema

    Returns
    -------
    ConfigT
        The configuration
    """
    try:
        return model.parse_obj(loads(document))
    except JSONDecodeError as e:
        raise ValidationError(f"The {model.__name__} in {source} is not valid JSON!\n{e}")
    except PydanticValidationError as e:
        raise ValidationError(f"The {model.__name__} in {source} is invalid!\n{e}")


def export_schemas(output: Path | str) -> None:
    """Export the JSON schema of the command configurations to an output directory.

    Parameters
    ----------
    output: Path | str
        A path to which to output the JSON schema files

    Raises
    ------
    RuntimeError
        If output is not an existing directory
    """
    classes = [OptimizeConfig, EvaluateConfig, SweepConfig, CircuitConfig, RouteConfig, SimulateConfig]

    if isinstance(output, str):
        output = Path(output)

    if not output.exists():
        raise RuntimeError(f"The output directory {output} must exist!")

    for class_ in classes:
        with open(output / f"{class_.__name__}.json", "w") as f:
            print(class_.schema_json(indent=2), file=f)
