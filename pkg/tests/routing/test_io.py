"""Tests for photon_fabric.routing.io."""
from contextlib import nullcontext as does_not_raise
from pathlib import Path
from typing import ContextManager

from pytest import mark, raises

from photon_fabric.common.enums import ActuationEnum
from photon_fabric.common.models import ArtifactHeader
from photon_fabric.common.tables import parse_table
from photon_fabric.errors import ArtifactNotFoundError, ValidationError
from photon_fabric.routing import io
from photon_fabric.routing.models import Permutation, RouteRecord, WavelengthRequest


@mark.parametrize(
    "document, types, expectation",
    [
        (b'{"sigma": {"0": 1, "1": 0}}', [Permutation], does_not_raise()),
        (
            b'[{"sigma": {"0": 0}}, {"routes": [{"input": 0, "color_nm": 1548.0, "output": 1}]}]',
            [Permutation, WavelengthRequest],
            does_not_raise(),
        ),
        (b"[]", [], does_not_raise()),
        (b'{"sigma": {"0": 1, "1": 1}}', [], raises(ValidationError)),
        (b'{"foo": "bar"}', [], raises(ValidationError)),
        (b"garbage", [], raises(ValidationError)),
    ],
)
def test_requests_from_json(document: bytes, types: list[type], expectation: ContextManager[str]) -> None:
    """Tests for photon_fabric.routing.io.requests_from_json."""
    with expectation:
        requests = io.requests_from_json(document)
        assert [type(request) for request in requests] == types  # nosec: B101


async def test_read_requests(tmp_path: Path) -> None:
    path = tmp_path / "requests.json"
    path.write_bytes(b'[{"sigma": {"0": 1, "1": 0}}, {"sigma": {"0": 0, "1": 1}}]')
    requests = await io.read_requests(path)
    assert requests[0] == Permutation.from_list([1, 0])  # nosec: B101

    with raises(ArtifactNotFoundError):
        await io.read_requests(tmp_path / "missing.json")


async def test_read_state(tmp_path: Path, broken_json_file: Path, invalid_json_file: Path) -> None:
    """Tests for photon_fabric.routing.io.read_state."""
    path = tmp_path / "state.json"
    path.write_bytes(b'{"config_hash": "abc", "actuations": {"s0.0": "bar", "s1.1": "cross"}}')
    state = await io.read_state(path)
    assert state.actuation("s1.1") == ActuationEnum.CROSS  # nosec: B101
    assert state.delta_n == {}  # nosec: B101

    with raises(ArtifactNotFoundError):
        await io.read_state(tmp_path / "missing.json")
    with raises(ValidationError):
        await io.read_state(broken_json_file)
    with raises(ValidationError):
        await io.read_state(invalid_json_file)


@mark.parametrize("count", [0, 1, 3])
def test_verification_to_csv(count: int, default_header: ArtifactHeader) -> None:
    """Tests for photon_fabric.routing.io.verification_to_csv."""
    records = [
        RouteRecord(request_id=index, verified=index % 2 == 0, non_ambient=index, crosses=2 * index)
        for index in range(count)
    ]
    text = io.verification_to_csv(records, header=default_header)
    assert text.startswith(default_header.csv_comment() + "\n")  # nosec: B101
    columns, table = parse_table(text)
    assert columns == io.VERIFICATION_COLUMNS  # nosec: B101
    assert table.shape == (count, 4)  # nosec: B101
    assert [int(value) for value in table[:, 1]] == [int(index % 2 == 0) for index in range(count)]  # nosec: B101
