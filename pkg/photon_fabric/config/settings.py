"""Settings management for photon_fabric."""
from __future__ import annotations

import os
from logging import debug
from pathlib import Path
from typing import Any

import tomli
from pydantic import BaseModel, BaseSettings, Field, PositiveInt, PrivateAttr, validator
from pydantic.env_settings import SettingsSourceCallable

from photon_fabric.common.enums import SettingsTypeEnum
from photon_fabric.config.defaults import (
    BETA_SCHEDULE,
    CACHE_ENV_VAR,
    FILTER_RADIUS_NM,
    LOG_EVERY,
    OPTIMIZER_STEP,
    OUTPUT_BASE,
    PML_CELLS,
    PML_MIN_CELLS,
    PML_ORDER,
    PML_REFLECTION,
    PROJECTION_ETA,
    SETTINGS_LOCATION,
    SETTINGS_OVERRIDE_LOCATION,
)

DIR_MODE = "0755"
CUSTOM_CONFIG: Path | None = None


def create_and_validate_directory(directory: Path) -> None:
    """Make sure that a directory exists and can be written to.

    Parameters
    ----------
    directory: Path
        The directory, which is created with its parents if it is missing

    Raises
    ------
    ValueError
        If the directory can not be created, is a file or is read-only
    """
    try:
        if not directory.exists():
            debug(f"Creating the directory {directory}...")
        directory.mkdir(mode=int(DIR_MODE, base=8), parents=True, exist_ok=True)
    except (FileExistsError, NotADirectoryError):
        raise ValueError(f"'{directory}' exists, but is no directory!")
    except PermissionError as e:
        raise ValueError(f"The directory '{directory}' can not be created: {e}")

    if not os.access(directory, os.W_OK):
        raise ValueError(f"The directory '{directory}' is read-only!")


class SolverSettings(BaseModel):
    """Settings of the frequency-domain solver.

    Attributes
    ----------
    pml_cells: int
        The absorbing layer thickness per side in cells (defaults to PML_CELLS)
    pml_order: int
        The polynomial grading order of the absorbing layer (defaults to PML_ORDER)
    pml_reflection: float
        The theoretical normal-incidence reflection used to derive the maximum conductivity (defaults to
        PML_REFLECTION)
    """

    pml_cells: int = Field(PML_CELLS, ge=PML_MIN_CELLS)
    pml_order: PositiveInt = PML_ORDER
    pml_reflection: float = Field(PML_REFLECTION, gt=0.0, lt=1.0)


class OptimizerSettings(BaseModel):
    """Settings of the topology optimizer.

    Attributes
    ----------
    step: float
        The initial per-pixel step in density units (defaults to OPTIMIZER_STEP)
    filter_radius_nm: float
        The radius of the conic density filter in nm (defaults to FILTER_RADIUS_NM)
    eta: float
        The projection threshold (defaults to PROJECTION_ETA)
    betas: list[float]
        The projection sharpness continuation, advanced in equal shares of the iteration budget
    log_every: int
        The number of iterations between progress log messages (defaults to LOG_EVERY)
    """

    step: float = Field(OPTIMIZER_STEP, gt=0.0)
    filter_radius_nm: float = Field(FILTER_RADIUS_NM, ge=0.0)
    eta: float = Field(PROJECTION_ETA, gt=0.0, lt=1.0)
    betas: list[float] = list(BETA_SCHEDULE)
    log_every: PositiveInt = LOG_EVERY

    @validator("betas")
    def validate_betas(cls, betas: list[float]) -> list[float]:
        """Validate that the beta continuation is non-empty and that each beta is at least one.

        Parameters
        ----------
        betas: list[float]
            The projection sharpness continuation

        Raises
        ------
        ValueError
            If the list is empty or contains a value below one

        Returns
        -------
        list[float]
            The validated continuation
        """
        if not betas:
            raise ValueError("The beta continuation must not be empty!")
        if any(beta < 1.0 for beta in betas):
            raise ValueError(f"Every projection beta must be at least 1, but got {betas}!")
        return betas


def _configuration_files(settings: BaseSettings) -> list[Path]:
    if CUSTOM_CONFIG:
        debug(f"Using the configuration file {CUSTOM_CONFIG} only...")
        return [CUSTOM_CONFIG]

    settings_type = SettingsTypeEnum.SYSTEM if isinstance(settings, SystemSettings) else SettingsTypeEnum.USER
    main_file, override_dir = SETTINGS_LOCATION[settings_type], SETTINGS_OVERRIDE_LOCATION[settings_type]
    files = [main_file] if main_file.exists() else []
    if override_dir.exists():
        files += sorted(override_dir.glob("*.conf"))
    debug(f"Configuration files of the {settings_type.value} mode: {files}")
    return files


def read_toml_configuration_settings(settings: BaseSettings) -> dict[str, Any]:
    """Merge the TOML configuration files of a Settings instance.

    A custom configuration file replaces all default locations. Otherwise the main file of the settings mode is read
    first, followed by the "*.conf" files of its override directory in alphabetical order. Later files replace the
    top-level keys of earlier ones.

    Parameters
    ----------
    settings: BaseSettings
        The Settings instance being initialized

    Returns
    -------
    dict[str, Any]
        The merged configuration
    """
    merged: dict[str, Any] = {}
    for path in _configuration_files(settings):
        with open(path, "rb") as config_file:
            merged |= tomli.load(config_file)
    debug(f"Configuration read from files: {merged}")
    return merged


class Settings(BaseSettings):
    """The configuration of photon-fabric.

    Only the subclasses UserSettings and SystemSettings can be instantiated, as they define the default artifact
    directory and the configuration locations.

    Attributes
    ----------
    cache_dir: Path | None
        An optional directory in which field solutions are cached (read from the PHOTON_FABRIC_CACHE environment
        variable, disabled if unset)
    jobs: int
        The maximum number of concurrent field solves (defaults to 1)
    output_dir: Path | None
        An optional directory for artifacts. If unset, it is set to _output_base during validation.
    parameter_set: str
        The name of the default behavioral parameter set (defaults to "paper-nominal")
    solver: SolverSettings
        The solver settings
    optimizer: OptimizerSettings
        The optimizer settings

    PrivateAttributes
    -----------------
    _settings_type: SettingsTypeEnum
        The type of Settings an instance represents (unset by default)
    _output_base: Path
        The default artifact directory (unset by default)
    """

    _settings_type: SettingsTypeEnum = PrivateAttr()
    _output_base: Path = PrivateAttr()

    cache_dir: Path | None = Field(None, env=CACHE_ENV_VAR)
    jobs: PositiveInt = 1
    output_dir: Path | None
    parameter_set: str = "paper-nominal"
    solver: SolverSettings = SolverSettings()
    optimizer: OptimizerSettings = OptimizerSettings()

    class Config:
        """Read the TOML configuration files as an additional settings source."""

        env_file_encoding = "utf-8"

        @classmethod
        def customise_sources(
            cls,
            init_settings: SettingsSourceCallable,
            env_settings: SettingsSourceCallable,
            file_secret_settings: SettingsSourceCallable,
        ) -> tuple[SettingsSourceCallable, ...]:
            """Place the TOML configuration between the keyword arguments and the environment.

            Sources earlier in the returned tuple take precedence.

            Returns
            -------
            tuple[SettingsSourceCallable, ...]
                The sources of the Settings
            """
            return (
                init_settings,
                read_toml_configuration_settings,
                env_settings,
                file_secret_settings,
            )

    @validator("cache_dir")
    def validate_cache_dir(cls, cache_dir: Path | None) -> Path | None:
        """Create and validate the cache directory, if one is set.

        Parameters
        ----------
        cache_dir: Path | None
            An optional cache directory

        Returns
        -------
        Path | None
            The absolute cache directory or None
        """
        if cache_dir is None:
            return None
        cache_dir = cache_dir.absolute()
        create_and_validate_directory(directory=cache_dir)
        return cache_dir

    @validator("output_dir", always=True)
    def validate_output_dir(cls, output_dir: Path | None) -> Path:
        """Set a default output directory and create and validate it.

        Parameters
        ----------
        output_dir: Path | None
            An optional output directory

        Returns
        -------
        Path
            The absolute output directory
        """
        if output_dir is None:
            output_dir = cls._output_base  # type: ignore[attr-defined]
        output_dir = output_dir.absolute()
        create_and_validate_directory(directory=output_dir)
        return output_dir


class UserSettings(Settings):
    """Per-user Settings, reading the configuration below XDG_CONFIG_HOME and writing artifacts below XDG_STATE_HOME."""

    _settings_type = SettingsTypeEnum.USER
    _output_base = OUTPUT_BASE[SettingsTypeEnum.USER]


class SystemSettings(Settings):
    """System-wide Settings, reading the configuration below /etc and writing artifacts below /var/lib."""

    _settings_type = SettingsTypeEnum.SYSTEM
    _output_base = OUTPUT_BASE[SettingsTypeEnum.SYSTEM]
