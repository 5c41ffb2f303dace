"""Tasks for writing artifacts transactionally."""
from __future__ import annotations

from abc import ABC, abstractmethod
from logging import debug, info
from pathlib import Path
from shutil import copy2
from typing import Any

from orjson import JSONEncodeError, dumps
from pydantic import BaseModel, ValidationError, validator

from photon_fabric.action.check import ArtifactsExistCheck, Check, ConfigHashCheck
from photon_fabric.common.enums import ActionStateEnum
from photon_fabric.common.models import ArtifactHeader
from photon_fabric.config.defaults import ORJSON_OPTION
from photon_fabric.errors import TaskError


def _checked_path(path: Path, field: str, suffix: str | None) -> Path:
    if not path.is_absolute():
        raise ValueError(f"{field} has to be an absolute path, got {path}")
    if suffix is None and path.suffix in (".tmp", ".bkp"):
        raise ValueError(f"{field} is a final artifact and can not be a .tmp or .bkp file, got {path}")
    if suffix is not None and path.suffix != suffix:
        raise ValueError(f"{field} has to be a {suffix} file, got {path}")
    return path


class SourceDestination(BaseModel):
    """The temporary file of an artifact, its final location and the backup of a file it replaces.

    Attributes
    ----------
    source: Path
        The absolute path of the temporary file ("*.tmp")
    destination: Path
        The absolute path of the artifact
    destination_backup: Path
        The absolute path ("*.bkp") an existing destination is copied to before it is replaced
    backup_done: bool
        Set once a backup of destination has been made (defaults to False)
    """

    source: Path
    destination: Path
    destination_backup: Path
    backup_done: bool = False

    @validator("source")
    def validate_source(cls, path: Path) -> Path:
        """Validate that source is an absolute .tmp file."""
        return _checked_path(path=path, field="source", suffix=".tmp")

    @validator("destination")
    def validate_destination(cls, path: Path) -> Path:
        """Validate that destination is an absolute path of an artifact."""
        return _checked_path(path=path, field="destination", suffix=None)

    @validator("destination_backup")
    def validate_destination_backup(cls, path: Path) -> Path:
        """Validate that destination_backup is an absolute .bkp file."""
        return _checked_path(path=path, field="destination_backup", suffix=".bkp")

    @classmethod
    def from_tmp(cls, source: Path) -> SourceDestination:
        """Derive the destination and backup paths of a temporary file.

        Parameters
        ----------
        source: Path
            A temporary file "<name>.tmp"

        Returns
        -------
        SourceDestination
            The paths for "<name>" and "<name>.bkp"
        """
        destination = source.with_suffix("")
        return cls(source=source, destination=destination, destination_backup=Path(f"{destination}.bkp"))


class Task(ABC):
    """A reversible step of writing artifacts.

    Calling a Task runs its dependencies, its pre_checks, do() and its post_checks in this order and stops at the
    first failure, which is recorded in state. A Task that succeeded once is not run again. Subclasses implement do(),
    which returns ActionStateEnum.SUCCESS_TASK or ActionStateEnum.FAILED_TASK, and undo(), which reverts do(), undoes
    the dependencies through dependency_undo() and returns ActionStateEnum.NOT_STARTED unless reverting failed.

    Attributes
    ----------
    dependencies: list[Task]
        The Tasks whose output this Task works on
    pre_checks: list[Check]
        Checks that have to pass before do() runs
    post_checks: list[Check]
        Checks that have to pass after do() ran
    state: ActionStateEnum
        The progress of the Task (defaults to ActionStateEnum.NOT_STARTED)
    """

    dependencies: list[Task] = []
    pre_checks: list[Check] = []
    post_checks: list[Check] = []
    state: ActionStateEnum = ActionStateEnum.NOT_STARTED

    def _passes(self, checks: list[Check], failure: ActionStateEnum) -> bool:
        if all(check() == ActionStateEnum.SUCCESS for check in checks):
            return True
        self.state = failure
        return False

    def __call__(self) -> ActionStateEnum:
        """Run the Task.

        Returns
        -------
        ActionStateEnum
            ActionStateEnum.SUCCESS, or the failure that stopped the Task (FAILED_DEPENDENCY, FAILED_PRE_CHECK,
            FAILED_TASK or FAILED_POST_CHECK)
        """
        if any(dependency() != ActionStateEnum.SUCCESS for dependency in self.dependencies):
            self.state = ActionStateEnum.FAILED_DEPENDENCY
            return self.state
        if self.is_done():
            return self.state

        self.state = ActionStateEnum.STARTED
        if not self._passes(self.pre_checks, ActionStateEnum.FAILED_PRE_CHECK):
            return self.state
        if self.do() != ActionStateEnum.SUCCESS_TASK:
            return self.state
        if self._passes(self.post_checks, ActionStateEnum.FAILED_POST_CHECK):
            self.state = ActionStateEnum.SUCCESS
        return self.state

    @abstractmethod
    def do(self) -> ActionStateEnum:  # pragma: no cover
        """Run the operation and return ActionStateEnum.SUCCESS_TASK or ActionStateEnum.FAILED_TASK."""
        pass

    @abstractmethod
    def undo(self) -> ActionStateEnum:  # pragma: no cover
        """Revert do() and the dependencies and return ActionStateEnum.NOT_STARTED on success."""
        pass

    def dependency_undo(self) -> ActionStateEnum:
        """Revert the dependencies, last one first.

        Returns
        -------
        ActionStateEnum
            The unchanged state, or ActionStateEnum.FAILED_UNDO_DEPENDENCY if a dependency could not be reverted
        """
        for dependency in self.dependencies[::-1]:
            if dependency.undo() != ActionStateEnum.NOT_STARTED:
                self.state = ActionStateEnum.FAILED_UNDO_DEPENDENCY

        return self.state

    def is_done(self) -> bool:
        """Return whether the Task succeeded."""
        return self.state == ActionStateEnum.SUCCESS


class WriteTmpFilesTask(Task):
    """A Task to write byte contents to temporary files in a directory.

    Every content named "<name>" is written to "<directory>/<name>.tmp".

    Attributes
    ----------
    directory: Path
        The directory to write to
    contents: dict[str, bytes]
        The contents by file name
    filenames: list[Path]
        The temporary files written so far
    """

    kind = "file"

    def __init__(self, directory: Path, contents: dict[str, bytes]):
        """Initialize a Task writing contents below directory."""
        self.directory = directory
        self.contents = contents
        self.filenames: list[Path] = []
        self.dependencies = []
        self.pre_checks = []
        self.post_checks = [ArtifactsExistCheck(paths=[self.tmp_path(name) for name in contents])]
        debug(f"Creating Task to write {self.kind} artifacts {sorted(contents)} to {directory}...")

    def tmp_path(self, name: str) -> Path:
        """Return the temporary file of an artifact."""
        return self.directory / f"{name}.tmp"

    def do(self) -> ActionStateEnum:
        """Write the contents to temporary files.

        Returns
        -------
        ActionStateEnum
            ActionStateEnum.SUCCESS_TASK if the Task ran successfully,
            ActionStateEnum.FAILED_TASK otherwise.
        """
        self.state = ActionStateEnum.STARTED_TASK
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            info(e)
            self.state = ActionStateEnum.FAILED_TASK
            return self.state

        for name, content in sorted(self.contents.items()):
            filename = self.tmp_path(name)
            self.filenames.append(filename)
            try:
                with open(filename, "wb") as output_file:
                    output_file.write(content)
            except (OSError, BlockingIOError) as e:
                info(e)
                self.state = ActionStateEnum.FAILED_TASK
                return self.state

        self.state = ActionStateEnum.SUCCESS_TASK
        return self.state

    def undo(self) -> ActionStateEnum:
        """Remove the temporary files.

        Returns
        -------
        ActionStateEnum
            ActionStateEnum.NOT_STARTED if undoing the Task operation is successful,
            ActionStateEnum.FAILED_UNDO_DEPENDENCY if undoing of any of the dependency Tasks failed
        """
        if self.state == ActionStateEnum.NOT_STARTED:
            info(f"Can not undo writing of {self.kind} artifacts to {self.directory}, as it never took place.")
            return self.state

        for filename in self.filenames:
            filename.unlink(missing_ok=True)
        self.filenames.clear()

        self.state = ActionStateEnum.NOT_STARTED
        self.dependency_undo()
        return self.state


class WriteJsonToTmpFileTask(WriteTmpFilesTask):
    """A Task to write JSON documents, extended by an artifact header, to temporary files.

    Attributes
    ----------
    header: ArtifactHeader
        The self-description added to every document
    """

    kind = "JSON"

    def __init__(
        self,
        directory: Path,
        documents: dict[str, BaseModel | dict[str, Any]],
        header: ArtifactHeader,
        dumps_option: int = ORJSON_OPTION,
    ):
        """Initialize an instance of WriteJsonToTmpFileTask.

        Parameters
        ----------
        directory: Path
            The directory to write to
        documents: dict[str, BaseModel | dict[str, Any]]
            The documents by file name (e.g. "layout.json")
        header: ArtifactHeader
            The self-description added to every document
        dumps_option: int
            An option parameter for orjson's dumps method (defaults to ORJSON_OPTION)

        Raises
        ------
        TaskError
            If a document can not be serialized
        """
        self.header = header
        contents = {}
        for name, document in documents.items():
            data = document.dict() if isinstance(document, BaseModel) else dict(document)
            try:
                contents[name] = dumps(data | header.dict(), option=dumps_option)
            except JSONEncodeError as e:
                raise TaskError(f"The document {name} can not be serialized!\n{e}")
        super().__init__(directory=directory, contents=contents)
        self.post_checks.append(ConfigHashCheck(paths=[self.tmp_path(name) for name in contents], header=header))


class WriteCsvToTmpFileTask(WriteTmpFilesTask):
    """A Task to write CSV tables, rendered with an artifact header, to temporary files."""

    kind = "CSV"

    def __init__(self, directory: Path, tables: dict[str, str], header: ArtifactHeader):
        """Initialize an instance of WriteCsvToTmpFileTask.

        Parameters
        ----------
        directory: Path
            The directory to write to
        tables: dict[str, str]
            The CSV texts by file name (e.g. "history.csv"), each starting with the comment line of header
        header: ArtifactHeader
            The self-description every table must carry
        """
        super().__init__(directory=directory, contents={name: text.encode("utf-8") for name, text in tables.items()})
        self.post_checks.append(ConfigHashCheck(paths=[self.tmp_path(name) for name in tables], header=header))


class WriteRasterToTmpFileTask(WriteTmpFilesTask):
    """A Task to write encoded raster images to temporary files."""

    kind = "raster"

    def __init__(self, directory: Path, rasters: dict[str, bytes]):
        """Initialize a Task writing rasters below directory."""
        super().__init__(directory=directory, contents=rasters)


class MoveTmpFilesTask(Task):
    """Put the temporary files of the writing Tasks it depends on in place.

    An artifact that already exists is copied to its backup first, so that undo() can restore it.

    Attributes
    ----------
    paths: list[SourceDestination]
        The files to move, collected from the dependencies when the Task runs
    """

    def __init__(self, dependencies: list[Task]):
        """Initialize an instance of MoveTmpFilesTask.

        Parameters
        ----------
        dependencies: list[Task]
            The Tasks whose temporary files are moved

        Raises
        ------
        RuntimeError
            If none of the dependencies writes temporary files
        """
        if not any(isinstance(dependency, WriteTmpFilesTask) for dependency in dependencies):
            raise RuntimeError(f"No Task writing temporary files among the dependencies {dependencies}!")
        self.paths: list[SourceDestination] = []
        self.dependencies = dependencies
        self.pre_checks = []
        self.post_checks = []

    def _collect(self) -> ActionStateEnum:
        self.paths = []
        for dependency in self.dependencies:
            if not isinstance(dependency, WriteTmpFilesTask):
                continue
            if not dependency.is_done():
                return ActionStateEnum.FAILED_DEPENDENCY
            try:
                self.paths += [SourceDestination.from_tmp(filename) for filename in dependency.filenames]
            except ValidationError as e:
                info(e)
                return ActionStateEnum.FAILED_TASK
        return ActionStateEnum.STARTED_TASK

    @staticmethod
    def _move(paths: SourceDestination) -> bool:
        try:
            if paths.destination.exists():
                debug(f"Keeping a copy of {paths.destination} in {paths.destination_backup}...")
                copy2(src=paths.destination, dst=paths.destination_backup)
                paths.backup_done = True
            paths.source.rename(paths.destination)
        except OSError as e:
            info(e)
            return False
        return True

    def do(self) -> ActionStateEnum:
        """Move every temporary file to its destination.

        Returns
        -------
        ActionStateEnum
            ActionStateEnum.SUCCESS_TASK if all files are in place, ActionStateEnum.FAILED_DEPENDENCY if a writing
            Task has not succeeded and ActionStateEnum.FAILED_TASK if a file could not be moved
        """
        self.state = self._collect()
        if self.state != ActionStateEnum.STARTED_TASK:
            return self.state

        debug(f"Moving {[str(paths.source) for paths in self.paths]} in place...")
        if all(self._move(paths) for paths in self.paths):
            self.state = ActionStateEnum.SUCCESS_TASK
        else:
            self.state = ActionStateEnum.FAILED_TASK
        return self.state

    def undo(self) -> ActionStateEnum:
        """Move the artifacts back to their temporary files and restore the artifacts they replaced.

        Returns
        -------
        ActionStateEnum
            ActionStateEnum.NOT_STARTED, ActionStateEnum.FAILED_UNDO_TASK if a file is in an unexpected place or
            ActionStateEnum.FAILED_UNDO_DEPENDENCY if a dependency could not be reverted
        """
        if self.state not in (ActionStateEnum.NOT_STARTED, ActionStateEnum.FAILED_DEPENDENCY):
            failed = self.state == ActionStateEnum.FAILED_TASK
            for paths in self.paths:
                moved = not paths.source.exists()
                if moved and paths.destination.exists():
                    debug(f"Reverting {paths.destination} to {paths.source}...")
                    paths.destination.rename(paths.source)
                    if paths.backup_done:
                        paths.destination_backup.rename(paths.destination)
                elif not moved and paths.backup_done and failed:
                    paths.destination_backup.unlink(missing_ok=True)
                elif moved:  # pragma: no cover
                    info(f"Can not revert {paths.destination}, as neither it nor {paths.source} exists!")
                    self.state = ActionStateEnum.FAILED_UNDO_TASK
                    return self.state

        self.state = ActionStateEnum.NOT_STARTED
        self.dependency_undo()
        return self.state


class RemoveBackupFilesTask(Task):
    """Delete the backups made by the MoveTmpFilesTask it depends on.

    Deleted backups are gone: undo() only reverts the dependencies.

    Attributes
    ----------
    paths: list[Path]
        The deleted backup files
    """

    def __init__(self, dependencies: list[Task]):
        """Initialize a Task removing the backups of a MoveTmpFilesTask dependency."""
        self.paths: list[Path] = []
        self.dependencies = dependencies
        self.pre_checks = []
        self.post_checks = []

    def do(self) -> ActionStateEnum:
        """Delete the backups of all artifacts that replaced existing files."""
        for dependency in self.dependencies:
            if not isinstance(dependency, MoveTmpFilesTask):
                continue
            if not dependency.is_done():
                self.state = ActionStateEnum.FAILED_DEPENDENCY
                return self.state
            self.paths += [paths.destination_backup for paths in dependency.paths if paths.backup_done]

        debug(f"Deleting the backups {[str(path) for path in self.paths]}...")
        for path in self.paths:
            path.unlink(missing_ok=True)
        self.state = ActionStateEnum.SUCCESS_TASK
        return self.state

    def undo(self) -> ActionStateEnum:
        """Forget the deleted backups and revert the dependencies."""
        self.paths.clear()
        self.state = ActionStateEnum.NOT_STARTED
        self.dependency_undo()
        return self.state
