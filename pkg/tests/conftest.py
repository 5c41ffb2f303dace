from pathlib import Path
from tempfile import NamedTemporaryFile
from typing import Generator
from unittest.mock import patch

import numpy as np
from pytest import fixture

from photon_fabric.common.enums import ArchitectureKindEnum, DeviceKindEnum, ScaleEnum
from photon_fabric.common.models import ArtifactHeader, Wavelengths
from photon_fabric.config import UserSettings
from photon_fabric.devices.geometry import DeviceGeometry, DeviceLayout, layout_device, preset
from photon_fabric.devices.problems import make_problem
from photon_fabric.fabric.generators import generate
from photon_fabric.fabric.layout import ArchitectureSpec, CircuitLayout, empty_layout
from photon_fabric.netsim.models import DeviceParameterSet, parameter_set
from photon_fabric.routing.models import Permutation, WavelengthRequest, WavelengthRoute
from photon_fabric.topopt.problem import DesignProblem


@fixture(scope="session")
def default_seed() -> int:
    """Return a seed session-wide."""
    return 7


@fixture(scope="session")
def default_header() -> ArtifactHeader:
    """Return an ArtifactHeader session-wide."""
    return ArtifactHeader.from_config({"command": "test"})


@fixture(scope="session")
def other_header() -> ArtifactHeader:
    """Return an ArtifactHeader session-wide, that differs from default_header."""
    return ArtifactHeader.from_config({"command": "other"})


@fixture(scope="session")
def c_band() -> Wavelengths:
    """Return a narrow band around 1550 nm session-wide."""
    return Wavelengths(start=1549.0, stop=1551.0, step=0.5)


@fixture(scope="session")
def ideal_params() -> DeviceParameterSet:
    """Return the lossless parameter set session-wide."""
    return parameter_set("ideal")


@fixture(scope="session")
def nominal_params() -> DeviceParameterSet:
    """Return the nominal parameter set session-wide."""
    return parameter_set("paper-nominal")


@fixture(scope="session")
def desk_geometry() -> DeviceGeometry:
    """Return the desk preset session-wide."""
    return preset(ScaleEnum.DESK)


@fixture(scope="session")
def tiny_geometry() -> DeviceGeometry:
    """Return a geometry session-wide, that is small enough for field solves in unit tests."""
    return DeviceGeometry(
        region=1.2e-6,
        wg_width=0.3e-6,
        rail_spacing=0.8e-6,
        lead_length=0.9e-6,
        y_margin=0.6e-6,
        pixel_pitch=60e-9,
        dx=60e-9,
        pml_cells=8,
    )


@fixture(scope="session")
def tiny_layout(tiny_geometry: DeviceGeometry) -> DeviceLayout:
    """Return the layout of tiny_geometry session-wide."""
    return layout_device(geometry=tiny_geometry)


@fixture(scope="session")
def tiny_splitter(tiny_geometry: DeviceGeometry) -> DesignProblem:
    """Return the splitter problem on tiny_geometry session-wide."""
    return make_problem(kind=DeviceKindEnum.SPLITTER, geometry=tiny_geometry)


@fixture(scope="session")
def tiny_resonator(tiny_geometry: DeviceGeometry) -> DesignProblem:
    """Return the resonator problem on tiny_geometry session-wide."""
    return make_problem(kind=DeviceKindEnum.RESONATOR, geometry=tiny_geometry)


@fixture(scope="function")
def spanke_benes_8() -> CircuitLayout:
    """Return the layout of an 8 x 8 Spanke-Benes network function-wide."""
    return generate(ArchitectureSpec(kind=ArchitectureKindEnum.SPANKE_BENES, n=8))


@fixture(scope="function")
def crosspoint_8() -> CircuitLayout:
    """Return the layout of an 8 x 8 crosspoint matrix function-wide."""
    return generate(ArchitectureSpec(kind=ArchitectureKindEnum.CROSSPOINT, n=8))


@fixture(scope="function")
def wss_8x8x3() -> CircuitLayout:
    """Return the layout of an 8 x 8 wavelength-selective switch for three colors function-wide."""
    return generate(ArchitectureSpec(kind=ArchitectureKindEnum.WSS_8X8X3))


@fixture(scope="function")
def straight_4() -> CircuitLayout:
    """Return a layout of four straight rails function-wide."""
    return empty_layout(n_rails=4)


@fixture(scope="session")
def reversal_8() -> Permutation:
    """Return the reversal of eight ports session-wide."""
    return Permutation.from_list([7, 6, 5, 4, 3, 2, 1, 0])


@fixture(scope="session")
def identity_8() -> Permutation:
    """Return the identity on eight ports session-wide."""
    return Permutation.from_list(list(range(8)))


@fixture(scope="session")
def random_permutations_8() -> list[Permutation]:
    """Return seeded random permutations of eight ports session-wide."""
    rng = np.random.default_rng(seed=1234)
    return [Permutation.from_list([int(output) for output in rng.permutation(8)]) for _ in range(20)]


@fixture(scope="session")
def three_color_request() -> WavelengthRequest:
    """Return a colored request for the three colors of wss_8x8x3 session-wide."""
    return WavelengthRequest(
        routes=[
            WavelengthRoute(input=0, color_nm=1548.0, output=5),
            WavelengthRoute(input=3, color_nm=1548.0, output=0),
            WavelengthRoute(input=0, color_nm=1550.0, output=7),
            WavelengthRoute(input=6, color_nm=1552.0, output=1),
        ]
    )


@fixture(scope="function")
def empty_dir(tmp_path: Path) -> Path:
    """Return a Path function-wide, representing an empty directory."""
    directory = tmp_path / "empty"
    directory.mkdir()
    return directory


@fixture(scope="function")
def empty_file(tmp_path: Path) -> Path:
    """Return a Path function-wide, representing an empty file."""
    file = NamedTemporaryFile(prefix="empty_", dir=tmp_path, delete=False)
    return Path(file.name)


@fixture(scope="function")
def broken_json_file(tmp_path: Path) -> Generator[Path, None, None]:
    """Yield a Path function-wide, representing a broken JSON file."""
    with NamedTemporaryFile(prefix="broken_", suffix=".json", dir=tmp_path, delete=False) as json_file:
        json_file.write(b"garbage")
        path = Path(json_file.name)
    yield path


@fixture(scope="function")
def invalid_json_file(tmp_path: Path) -> Generator[Path, None, None]:
    """Yield a Path function-wide, representing an invalid JSON file."""
    with NamedTemporaryFile(prefix="invalid_", suffix=".json", dir=tmp_path, delete=False) as json_file:
        json_file.write(b'{"foo": "bar"}')
        path = Path(json_file.name)
    yield path


@fixture(scope="function")
def empty_toml_file(tmp_path: Path) -> Path:
    """Return a Path function-wide, representing an empty TOML file (with .conf suffix)."""
    return Path(NamedTemporaryFile(suffix=".conf", dir=tmp_path, delete=False).name)


@fixture(scope="function")
def usersettings(empty_file: Path, tmp_path: Path) -> UserSettings:
    """Return a UserSettings function-wide, writing artifacts below tmp_path."""
    with patch("photon_fabric.config.settings.CUSTOM_CONFIG", empty_file):
        with patch("photon_fabric.config.settings.UserSettings._output_base", tmp_path / "artifacts"):
            return UserSettings(cache_dir=None)
