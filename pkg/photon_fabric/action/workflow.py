"""Workflows writing the artifacts of a command."""
from __future__ import annotations

from argparse import ArgumentParser
from logging import debug
from pathlib import Path
from sys import exit, stderr
from typing import Any, NoReturn

from pydantic import BaseModel

from photon_fabric.action.task import (
    MoveTmpFilesTask,
    RemoveBackupFilesTask,
    Task,
    WriteCsvToTmpFileTask,
    WriteJsonToTmpFileTask,
    WriteRasterToTmpFileTask,
)
from photon_fabric.common.enums import ActionStateEnum, ExitCodeEnum
from photon_fabric.common.models import ArtifactHeader


def exit_on_error(
    message: str,
    argparser: ArgumentParser | None = None,
    code: ExitCodeEnum = ExitCodeEnum.CONFIG,
) -> NoReturn:
    """Print a message to stderr, optionally print argparse help and exit.

    Parameters
    ----------
    message: str
        A message to print to stderr
    argparser: ArgumentParser | None
        An optional ArgumentParser on which to call print_help()
    code: ExitCodeEnum
        The exit code (defaults to ExitCodeEnum.CONFIG)
    """
    print(message, file=stderr)
    if argparser:
        argparser.print_help()
    exit(code)


class Artifacts(BaseModel):
    """The artifacts of one command, by file name.

    Attributes
    ----------
    documents: dict[str, Any]
        JSON documents (pydantic models or dicts)
    tables: dict[str, str]
        CSV texts, each starting with the artifact header comment
    rasters: dict[str, bytes]
        Encoded raster images
    """

    documents: dict[str, Any] = {}
    tables: dict[str, str] = {}
    rasters: dict[str, bytes] = {}

    def names(self) -> list[str]:
        """Return the file names of all artifacts."""
        return sorted([*self.documents, *self.tables, *self.rasters])


def write_artifacts(directory: Path, artifacts: Artifacts, header: ArtifactHeader) -> list[Path]:
    """Write the artifacts of a command to a directory.

    All files are written to temporary files first and then moved in place, backing up files they replace. If any
    step fails, all steps are undone and the directory is left unchanged.

    Parameters
    ----------
    directory: Path
        The output directory
    artifacts: Artifacts
        The artifacts
    header: ArtifactHeader
        The self-description of the JSON and CSV artifacts

    Returns
    -------
    list[Path]
        The written files
    """
    debug(f"Writing artifacts {artifacts.names()} to {directory}...")
    writers: list[Task] = []
    if artifacts.documents:
        writers.append(WriteJsonToTmpFileTask(directory=directory, documents=artifacts.documents, header=header))
    if artifacts.tables:
        writers.append(WriteCsvToTmpFileTask(directory=directory, tables=artifacts.tables, header=header))
    if artifacts.rasters:
        writers.append(WriteRasterToTmpFileTask(directory=directory, rasters=artifacts.rasters))
    if not writers:
        return []

    move_task = MoveTmpFilesTask(dependencies=writers)
    cleanup_task = RemoveBackupFilesTask(dependencies=[move_task])
    if cleanup_task() != ActionStateEnum.SUCCESS:
        cleanup_task.undo()
        exit_on_error(
            message=f"An error occurred while writing the artifacts {artifacts.names()} to {directory}!",
            code=ExitCodeEnum.NUMERICAL,
        )

    return [directory / name for name in artifacts.names()]
