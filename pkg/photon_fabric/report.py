"""Markdown summaries of artifact directories."""
from __future__ import annotations

from io import StringIO
from logging import debug
from pathlib import Path
from typing import Any

import numpy as np
from aiofiles import open as async_open
from jinja2 import Environment, PackageLoader, TemplateNotFound
from orjson import JSONDecodeError, loads
from pydantic import BaseModel, NonNegativeInt
from pydantic import ValidationError as PydanticValidationError

from photon_fabric.action.check import embedded_hash
from photon_fabric.common.tables import read_table
from photon_fabric.config.defaults import DB_FLOOR
from photon_fabric.devices.metrics import DeviceMetrics
from photon_fabric.devices.spectra import ResonanceFit
from photon_fabric.errors import ArtifactError, ArtifactNotFoundError
from photon_fabric.fabric.layout import ComponentCounts

REPORT_TEMPLATE = "report.md.j2"


class ArtifactSummary(BaseModel):
    """One file of an artifact directory.

    Attributes
    ----------
    name: str
        The file name
    config_hash: str | None
        The configuration hash the file carries, None for rasters and foreign files
    """

    name: str
    config_hash: str | None = None


class VerificationSummary(BaseModel):
    """The tally of a verification table.

    Attributes
    ----------
    requests: int
        The number of requests
    verified: int
        The number of verified requests
    non_ambient: int
        The largest number of controls out of their ambient state
    """

    requests: NonNegativeInt
    verified: NonNegativeInt
    non_ambient: NonNegativeInt


class PathSummary(BaseModel):
    """The extremes of a path metrics table.

    Attributes
    ----------
    paths: int
        The number of rows (paths times wavelengths)
    worst_insertion_loss_db: float
        The largest insertion loss
    mean_insertion_loss_db: float
        The mean insertion loss
    worst_crosstalk_db: float
        The largest crosstalk
    """

    paths: NonNegativeInt
    worst_insertion_loss_db: float
    mean_insertion_loss_db: float
    worst_crosstalk_db: float


class Report(BaseModel):
    """The content of a report on an artifact directory.

    Attributes
    ----------
    directory: str
        The artifact directory
    toolkit_versions: list[str]
        The versions of photon-fabric that wrote the JSON artifacts
    artifacts: list[ArtifactSummary]
        All files of the directory
    device_metrics: list[DeviceMetrics]
        The metrics of an optimized or evaluated device
    final_objective: float | None
        The objective of an optimized binarized design
    iterations: int | None
        The number of recorded optimization iterations
    resonances: list[ResonanceFit]
        The resonances of a sweep
    counts: ComponentCounts | None
        The components of a generated layout
    verification: VerificationSummary | None
        The tally of a routing run
    paths: PathSummary | None
        The extremes of a simulation
    """

    directory: str
    toolkit_versions: list[str] = []
    artifacts: list[ArtifactSummary] = []
    device_metrics: list[DeviceMetrics] = []
    final_objective: float | None = None
    iterations: NonNegativeInt | None = None
    resonances: list[ResonanceFit] = []
    counts: ComponentCounts | None = None
    verification: VerificationSummary | None = None
    paths: PathSummary | None = None


async def _read_json(path: Path) -> dict[str, Any]:
    async with async_open(path, "rb") as input_file:
        try:
            document = loads(await input_file.read())
        except JSONDecodeError as e:
            raise ArtifactError(f"The artifact '{path}' is not valid JSON!\n{e}")
    if not isinstance(document, dict):
        raise ArtifactError(f"The artifact '{path}' is not a JSON object!")
    return document


def _column(columns: list[str], table: np.ndarray, name: str) -> np.ndarray:
    return table[:, columns.index(name)] if table.size else np.zeros(0)


async def collect_report(directory: Path) -> Report:
    """Collect the content of a report from the artifacts in a directory.

    Parameters
    ----------
    directory: Path
        The artifact directory

    Raises
    ------
    ArtifactNotFoundError
        If the directory does not exist
    ArtifactError
        If a known artifact can not be parsed

    Returns
    -------
    Report
        The content of the report
    """
    if not directory.is_dir():
        raise ArtifactNotFoundError(f"The artifact directory '{directory}' does not exist!")

    report = Report(directory=str(directory))
    versions: set[str] = set()
    for path in sorted(directory.iterdir()):
        if not path.is_file() or path.suffix in (".tmp", ".bkp"):
            continue
        debug(f"Summarizing the artifact {path}...")
        report.artifacts.append(
            ArtifactSummary(
                name=path.name,
                config_hash=embedded_hash(path) if path.suffix in (".json", ".csv") else None,
            )
        )
        if path.suffix == ".json":
            versions.add(str((await _read_json(path)).get("toolkit_version", "unknown")))

    try:
        if (directory / "metrics.json").exists():
            document = await _read_json(directory / "metrics.json")
            report.device_metrics = [DeviceMetrics.parse_obj(entry) for entry in document.get("metrics", [])]
            report.final_objective = document.get("final_objective")
        if (directory / "resonances.json").exists():
            document = await _read_json(directory / "resonances.json")
            report.resonances = [ResonanceFit.parse_obj(entry) for entry in document.get("resonances", [])]
        if (directory / "counts.json").exists():
            report.counts = ComponentCounts.parse_obj(await _read_json(directory / "counts.json"))
    except PydanticValidationError as e:
        raise ArtifactError(f"An artifact in '{directory}' is invalid!\n{e}")

    if (directory / "history.csv").exists():
        _, table = await read_table(directory / "history.csv")
        report.iterations = table.shape[0]
    if (directory / "verification.csv").exists():
        columns, table = await read_table(directory / "verification.csv")
        report.verification = VerificationSummary(
            requests=table.shape[0],
            verified=int(_column(columns, table, "verified").sum()),
            non_ambient=int(_column(columns, table, "non_ambient").max(initial=0)),
        )
    if (directory / "path_metrics.csv").exists():
        columns, table = await read_table(directory / "path_metrics.csv")
        loss = _column(columns, table, "insertion_loss_db")
        report.paths = PathSummary(
            paths=table.shape[0],
            worst_insertion_loss_db=float(loss.max(initial=0.0)),
            mean_insertion_loss_db=float(loss.mean()) if loss.size else 0.0,
            worst_crosstalk_db=float(_column(columns, table, "crosstalk_db").max(initial=DB_FLOOR)),
        )

    report.toolkit_versions = sorted(versions)
    return report


async def render_report(report: Report, output: StringIO) -> None:
    """Render a report as Markdown.

    Parameters
    ----------
    report: Report
        The content of the report
    output: StringIO
        An output stream to write to

    Raises
    ------
    ArtifactNotFoundError
        If the report template can not be found
    """
    # NOTE: Markdown is not HTML, hence autoescape=False
    env = Environment(  # nosec: B701
        autoescape=False,
        loader=PackageLoader("photon_fabric", "templates"),
        trim_blocks=True,
        lstrip_blocks=True,
        enable_async=True,
    )
    try:
        template = env.get_template(REPORT_TEMPLATE)
    except TemplateNotFound:
        raise ArtifactNotFoundError(f"The report template {REPORT_TEMPLATE} could not be found!")
    output.write(await template.render_async(report.dict()))
