"""Tests for photon_fabric.action.workflow."""
from argparse import ArgumentParser
from logging import DEBUG
from pathlib import Path
from unittest.mock import Mock, patch

from orjson import loads
from pytest import LogCaptureFixture, mark

from photon_fabric.action import workflow
from photon_fabric.common.enums import ActionStateEnum, ExitCodeEnum
from photon_fabric.common.models import ArtifactHeader
from photon_fabric.routing.models import Permutation


@mark.parametrize("with_parser, code", [(False, ExitCodeEnum.CONFIG), (True, ExitCodeEnum.NUMERICAL)])
@patch("photon_fabric.action.workflow.exit")
def test_exit_on_error(exit_mock: Mock, with_parser: bool, code: ExitCodeEnum) -> None:
    """Tests for photon_fabric.action.workflow.exit_on_error."""
    parser = Mock(spec=ArgumentParser) if with_parser else None
    workflow.exit_on_error(message="foo", argparser=parser, code=code)
    exit_mock.assert_called_once_with(code)
    if parser:
        parser.print_help.assert_called_once()


def test_artifacts_names() -> None:
    artifacts = workflow.Artifacts(
        documents={"state.json": {}},
        tables={"history.csv": ""},
        rasters={"density.png": b""},
    )
    assert artifacts.names() == ["density.png", "history.csv", "state.json"]  # nosec: B101


def test_write_artifacts(default_header: ArtifactHeader, tmp_path: Path, caplog: LogCaptureFixture) -> None:
    """Tests for photon_fabric.action.workflow.write_artifacts."""
    caplog.set_level(DEBUG)
    directory = tmp_path / "out"
    (tmp_path / "out").mkdir()
    (directory / "request.json").write_text("old")
    artifacts = workflow.Artifacts(
        documents={"request.json": Permutation.from_list([2, 0, 1])},
        tables={"verification.csv": default_header.csv_comment() + "\nrequest_id,verified\n0,1\n"},
        rasters={"density.png": b"\x89PNG"},
    )

    written = workflow.write_artifacts(directory=directory, artifacts=artifacts, header=default_header)
    assert [path.name for path in written] == ["density.png", "request.json", "verification.csv"]  # nosec: B101
    assert loads((directory / "request.json").read_bytes())["config_hash"] == default_header.config_hash  # nosec: B101
    assert sorted(path.name for path in directory.iterdir()) == [  # nosec: B101
        "density.png",
        "request.json",
        "verification.csv",
    ]


def test_write_artifacts_empty(default_header: ArtifactHeader, tmp_path: Path) -> None:
    written = workflow.write_artifacts(directory=tmp_path, artifacts=workflow.Artifacts(), header=default_header)
    assert written == []  # nosec: B101


@patch("photon_fabric.action.workflow.exit_on_error")
def test_write_artifacts_rolls_back(
    exit_on_error_mock: Mock,
    default_header: ArtifactHeader,
    other_header: ArtifactHeader,
    tmp_path: Path,
) -> None:
    (tmp_path / "request.json").write_text("old")
    artifacts = workflow.Artifacts(
        documents={"request.json": {"outputs": [0]}},
        tables={"verification.csv": other_header.csv_comment() + "\n0,1\n"},
    )
    workflow.write_artifacts(directory=tmp_path, artifacts=artifacts, header=default_header)
    exit_on_error_mock.assert_called_once()
    assert exit_on_error_mock.call_args.kwargs["code"] == ExitCodeEnum.NUMERICAL  # nosec: B101
    assert (tmp_path / "request.json").read_text() == "old"  # nosec: B101
    assert sorted(path.name for path in tmp_path.iterdir()) == ["request.json"]  # nosec: B101


@patch("photon_fabric.action.workflow.exit_on_error")
@patch("photon_fabric.action.workflow.RemoveBackupFilesTask")
def test_write_artifacts_undo_on_failure(
    removebackupfilestask_mock: Mock,
    exit_on_error_mock: Mock,
    default_header: ArtifactHeader,
    tmp_path: Path,
) -> None:
    removebackupfilestask_mock.return_value = Mock(return_value=ActionStateEnum.FAILED_DEPENDENCY)
    workflow.write_artifacts(
        directory=tmp_path,
        artifacts=workflow.Artifacts(rasters={"density.png": b"\x89PNG"}),
        header=default_header,
    )
    removebackupfilestask_mock.return_value.undo.assert_called_once()
    exit_on_error_mock.assert_called_once()
