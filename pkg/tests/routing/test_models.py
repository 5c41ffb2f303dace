"""Tests for photon_fabric.routing.models."""
from contextlib import nullcontext as does_not_raise
from pathlib import Path
from typing import Any, ContextManager

from pydantic import ValidationError
from pytest import mark, raises

from photon_fabric.common.enums import ActuationEnum
from photon_fabric.errors import UnresolvedControl
from photon_fabric.routing import models


@mark.parametrize(
    "sigma, expectation",
    [
        ({0: 1, 1: 0}, does_not_raise()),
        ({3: 0}, does_not_raise()),
        ({}, does_not_raise()),
        ({0: 1, 1: 1}, raises(ValidationError)),
        ({-1: 0}, raises(ValidationError)),
    ],
)
def test_permutation(sigma: dict[int, int], expectation: ContextManager[str]) -> None:
    """Tests for photon_fabric.routing.models.Permutation.validate_sigma."""
    with expectation:
        assert models.Permutation(sigma=sigma).sigma == dict(sorted(sigma.items()))  # nosec: B101


@mark.parametrize(
    "sigma, n, total, completed",
    [
        ({0: 1, 1: 0}, 2, True, [1, 0]),
        ({2: 0}, 4, False, [1, 2, 0, 3]),
        ({}, 3, False, [0, 1, 2]),
        ({0: 3, 3: 0}, 4, False, [3, 1, 2, 0]),
    ],
)
def test_permutation_completed(sigma: dict[int, int], n: int, total: bool, completed: list[int]) -> None:
    """Tests for photon_fabric.routing.models.Permutation.completed."""
    permutation = models.Permutation(sigma=sigma)
    assert permutation.is_total(n) is total  # nosec: B101
    assert permutation.completed(n) == completed  # nosec: B101
    assert models.Permutation.from_list(completed).is_total(n)  # nosec: B101


@mark.parametrize(
    "routes, expectation",
    [
        (
            [{"input": 0, "color_nm": 1548.0, "output": 1}, {"input": 0, "color_nm": 1550.0, "output": 1}],
            does_not_raise(),
        ),
        (
            [{"input": 0, "color_nm": 1548.0, "output": 1}, {"input": 0, "color_nm": 1548.0, "output": 0}],
            raises(ValidationError),
        ),
        ([{"input": 0, "color_nm": -1.0, "output": 1}], raises(ValidationError)),
    ],
)
def test_wavelengthrequest(routes: list[dict[str, Any]], expectation: ContextManager[str]) -> None:
    """Tests for photon_fabric.routing.models.WavelengthRequest.validate_routes."""
    with expectation:
        assert models.WavelengthRequest(routes=routes).colors()  # nosec: B101


def test_wavelengthrequest_order(three_color_request: models.WavelengthRequest) -> None:
    assert three_color_request.colors() == [1548.0, 1550.0, 1552.0]  # nosec: B101
    assert [route.input for route in three_color_request.for_color(1548.0)] == [0, 3]  # nosec: B101
    assert three_color_request.for_color(1551.0) == []  # nosec: B101
    assert [route.color_nm for route in three_color_request.routes] == [1548.0, 1548.0, 1550.0, 1552.0]  # nosec: B101


@mark.parametrize(
    "actuations, delta_n, expectation",
    [
        ({"a": "cross", "b": "bar"}, {}, does_not_raise()),
        ({"a": "cross", "b": "bar"}, {"a": 0.0, "b": 0.002}, does_not_raise()),
        ({"a": "cross", "b": "bar"}, {"a": 0.001}, raises(ValidationError)),
        ({"a": "cross", "b": "bar"}, {"b": 0.0}, raises(ValidationError)),
        ({"a": "cross"}, {"c": 0.0}, raises(ValidationError)),
        ({"a": "open"}, {}, raises(ValidationError)),
    ],
)
def test_switchstate(actuations: dict[str, str], delta_n: dict[str, float], expectation: ContextManager[str]) -> None:
    """Tests for photon_fabric.routing.models.SwitchState.validate_delta_n."""
    with expectation:
        assert models.SwitchState(actuations=actuations, delta_n=delta_n)  # nosec: B101


def test_switchstate_counts() -> None:
    state = models.SwitchState(actuations={"a": "cross", "b": "bar", "c": "bar"})
    assert state.actuation("a") == ActuationEnum.CROSS  # nosec: B101
    assert state.crosses() == 1  # nosec: B101
    assert state.non_ambient(ActuationEnum.CROSS) == 2  # nosec: B101
    assert state.non_ambient(ActuationEnum.BAR) == 1  # nosec: B101
    with raises(UnresolvedControl):
        state.actuation("d")


def test_export_schemas(tmp_path: Path) -> None:
    """Tests for photon_fabric.routing.models.export_schemas."""
    models.export_schemas(output=tmp_path)
    assert sorted(path.name for path in tmp_path.iterdir()) == [  # nosec: B101
        "Permutation.json",
        "RouteRecord.json",
        "SwitchState.json",
        "WavelengthRequest.json",
    ]
    with raises(RuntimeError):
        models.export_schemas(output=str(tmp_path / "missing"))
