"""Tests for photon_fabric.config.run."""
from contextlib import nullcontext as does_not_raise
from pathlib import Path
from typing import Any, ContextManager

from pydantic import ValidationError as PydanticValidationError
from pytest import mark, raises

from photon_fabric.common.enums import ArchitectureKindEnum, DeviceKindEnum, ScaleEnum
from photon_fabric.config import run
from photon_fabric.errors import ValidationError


@mark.parametrize(
    "options, expectation",
    [
        ({"device": "splitter", "seed": 0}, does_not_raise()),
        ({"device": "resonator", "seed": 3, "scale": "full", "iterations": 10, "noise": 0.1}, does_not_raise()),
        ({"device": "splitter"}, raises(PydanticValidationError)),
        ({"device": "splitter", "seed": -1}, raises(PydanticValidationError)),
        ({"device": "splitter", "seed": 0, "noise": 0.6}, raises(PydanticValidationError)),
        ({"device": "splitter", "seed": 0, "iterations": 0}, raises(PydanticValidationError)),
        ({"device": "modulator", "seed": 0}, raises(PydanticValidationError)),
        ({"device": "splitter", "seed": 0, "sede": 1}, raises(PydanticValidationError)),
    ],
)
def test_optimizeconfig(options: dict[str, Any], expectation: ContextManager[str]) -> None:
    with expectation:
        config = run.OptimizeConfig(**options)
        assert config.device in DeviceKindEnum  # nosec: B101


@mark.parametrize(
    "band, source, expectation",
    [
        ({"start": 1540.0, "stop": 1560.0, "step": 0.02}, "top_in", does_not_raise()),
        ({"start": 1540.0, "stop": 1560.0, "step": 0.02}, "bottom_in", does_not_raise()),
        ({"start": 1540.0, "stop": 1560.0, "step": 0.02}, "top_out", raises(PydanticValidationError)),
        ({"start": 1560.0, "stop": 1540.0, "step": 0.02}, "top_in", raises(PydanticValidationError)),
        ({"start": 1540.0, "stop": 1560.0, "step": 0.0}, "top_in", raises(PydanticValidationError)),
    ],
)
def test_sweepconfig(band: dict[str, float], source: str, expectation: ContextManager[str], tmp_path: Path) -> None:
    """Tests for photon_fabric.config.run.SweepConfig.validate_source."""
    with expectation:
        config = run.SweepConfig(device="resonator", density=tmp_path / "density.csv", band=band, source=source)
        assert config.scale == ScaleEnum.DESK  # nosec: B101


def test_simulateconfig_band(tmp_path: Path) -> None:
    with raises(PydanticValidationError):
        run.SimulateConfig(
            layout=tmp_path / "layout.json",
            state=tmp_path / "state.json",
            band={"start": 1551.0, "stop": 1549.0, "step": 1.0},
        )


def test_runconfig_header() -> None:
    """Tests for photon_fabric.config.run.RunConfig.header."""
    config = run.CircuitConfig(architecture={"kind": "spanke_benes", "n": 8})
    assert config.architecture.kind == ArchitectureKindEnum.SPANKE_BENES  # nosec: B101

    header = config.header()
    assert header == config.header()  # nosec: B101
    assert header != config.header(parameter_set="ideal")  # nosec: B101
    assert header != run.CircuitConfig(architecture={"kind": "spanke_benes", "n": 4}).header()  # nosec: B101


def test_runconfig_header_depends_on_command(tmp_path: Path) -> None:
    options: dict[str, Any] = {"device": "splitter", "density": tmp_path / "density.csv"}
    evaluate = run.EvaluateConfig(**options)
    sweep = run.SweepConfig(**options, band={"start": 1549.0, "stop": 1551.0, "step": 1.0})
    assert evaluate.header().config_hash != run.DeviceRunConfig(**options).header().config_hash  # nosec: B101
    assert evaluate.header().config_hash != sweep.header().config_hash  # nosec: B101


@mark.parametrize(
    "document, expectation",
    [
        (b'{"layout": "layout.json", "request": "request.json"}', does_not_raise()),
        (b'{"layout": "layout.json"}', raises(ValidationError)),
        (b'{"layout": "layout.json", "request": "request.json", "foo": 1}', raises(ValidationError)),
        (b"garbage", raises(ValidationError)),
    ],
)
def test_run_config_from_json(document: bytes, expectation: ContextManager[str]) -> None:
    """Tests for photon_fabric.config.run.run_config_from_json."""
    with expectation:
        config = run.run_config_from_json(run.RouteConfig, document, source="test")
        assert config.layout == Path("layout.json")  # nosec: B101


def test_export_schemas(tmp_path: Path) -> None:
    """Tests for photon_fabric.config.run.export_schemas."""
    run.export_schemas(output=tmp_path)
    run.export_schemas(output=str(tmp_path))
    assert (tmp_path / "OptimizeConfig.json").exists()  # nosec: B101
    assert (tmp_path / "SimulateConfig.json").exists()  # nosec: B101

    with raises(RuntimeError):
        run.export_schemas(output=tmp_path / "missing")
