"""Tests for photon_fabric.topopt.io."""
from pathlib import Path

import numpy as np
from pytest import mark, raises

from photon_fabric.common.models import ArtifactHeader
from photon_fabric.errors import ArtifactError, ArtifactNotFoundError
from photon_fabric.topopt import io
from photon_fabric.topopt.density import DensityField
from photon_fabric.topopt.optimizer import HistoryRecord, OptimizationHistory


def test_density_csv(default_header: ArtifactHeader) -> None:
    """Tests for photon_fabric.topopt.io.density_to_csv and density_from_csv."""
    density = DensityField(rho=[[0.0, 0.25, 1.0], [0.5, 0.75, 1.0]], pixel_pitch=40e-9)
    text = io.density_to_csv(density, header=default_header)
    assert text.splitlines()[1] == "0,0.5"  # nosec: B101

    parsed = io.density_from_csv(text, pixel_pitch=40e-9, origin=(2, 3))
    assert np.array_equal(parsed.rho, density.rho)  # nosec: B101
    assert parsed.origin == (2, 3)  # nosec: B101


@mark.parametrize("text", ["", "0.5,1.5\n", "0.5,-0.5\n", "value\n"])
def test_density_from_csv_invalid(text: str) -> None:
    with raises(ArtifactError):
        io.density_from_csv(text, pixel_pitch=40e-9)


async def test_read_density(tmp_path: Path) -> None:
    path = tmp_path / "density.csv"
    path.write_text("0,1\n1,0\n0.5,0.5\n")
    density = await io.read_density(path, pixel_pitch=40e-9)
    assert density.shape == (2, 3)  # nosec: B101
    assert density.rho[:, 2].tolist() == [0.5, 0.5]  # nosec: B101

    with raises(ArtifactNotFoundError):
        await io.read_density(tmp_path / "missing.csv", pixel_pitch=40e-9)


def test_history_to_csv() -> None:
    """Tests for photon_fabric.topopt.io.history_to_csv."""
    port_names = [["top_out", "bottom_out"], ["top_out", "bottom_out"]]
    assert io.history_columns(port_names)[3:] == [  # nosec: B101
        "P_0_top_out",
        "P_0_bottom_out",
        "P_1_top_out",
        "P_1_bottom_out",
    ]

    history = OptimizationHistory(
        records=[
            HistoryRecord(iteration=0, objective=1.0, beta=1.0, powers=[[0.5, 0.25], [0.125, 0.5]]),
            HistoryRecord(iteration=1, objective=1.5, beta=4.0, powers=[[0.5, 0.5], [0.5, 0.5]]),
        ]
    )
    lines = io.history_to_csv(history, port_names=port_names).splitlines()
    assert lines[0] == "iteration,objective,beta,P_0_top_out,P_0_bottom_out,P_1_top_out,P_1_bottom_out"  # nosec: B101
    assert lines[1] == "0,1,1,0.5,0.25,0.125,0.5"  # nosec: B101
    assert len(lines) == 3  # nosec: B101

    assert io.history_to_csv(OptimizationHistory(), port_names=port_names).splitlines() == [lines[0]]  # nosec: B101


def test_density_to_png() -> None:
    image = io.density_to_png(DensityField(rho=np.eye(4)))
    assert image.startswith(b"\x89PNG")  # nosec: B101
