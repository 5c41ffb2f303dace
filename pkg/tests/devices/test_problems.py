"""Tests for photon_fabric.devices.problems."""
from pytest import mark

from photon_fabric.common.enums import DeviceKindEnum, DirectionEnum, PortRoleEnum
from photon_fabric.devices import problems
from photon_fabric.devices.geometry import DeviceGeometry


@mark.parametrize(
    "kind, conditions, goals",
    [
        (
            DeviceKindEnum.SPLITTER,
            ["top_input", "bottom_input"],
            [{"top_out": 0.5, "bottom_out": 0.5}, {"top_out": 0.5, "bottom_out": 0.5}],
        ),
        (
            DeviceKindEnum.CROSSOVER,
            ["top_input", "bottom_input"],
            [{"bottom_out": 1.0, "top_out": 0.0}, {"top_out": 1.0, "bottom_out": 0.0}],
        ),
        (
            DeviceKindEnum.RESONATOR,
            ["drop_1550", "through_1548", "through_1552"],
            [
                {"bottom_out": 1.0, "top_out": 0.0},
                {"top_out": 1.0, "bottom_out": 0.0},
                {"top_out": 1.0, "bottom_out": 0.0},
            ],
        ),
    ],
)
def test_make_problem(
    kind: DeviceKindEnum,
    conditions: list[str],
    goals: list[dict[str, float]],
    tiny_geometry: DeviceGeometry,
) -> None:
    problem = problems.make_problem(kind=kind, geometry=tiny_geometry)
    assert problem.name == kind.value  # nosec: B101
    assert [condition.name for condition in problem.conditions] == conditions  # nosec: B101
    assert [  # nosec: B101
        {target.name: target.goal for target in condition.targets} for condition in problem.conditions
    ] == goals
    for condition, goal in zip(problem.conditions, goals):
        assert all(source.role == PortRoleEnum.SOURCE for source in condition.sources)  # nosec: B101
        assert {target.name for target in condition.targets if target.intended} == {  # nosec: B101
            name for name, value in goal.items() if value > 0.0
        }
        for port in condition.sources + [target.monitor for target in condition.targets]:
            cut = port.mode.cut
            assert cut is not None and problem.grid.is_interior(cut.x, cut.y_start, cut.y_stop)  # nosec: B101


def test_make_resonator_problem(tiny_geometry: DeviceGeometry) -> None:
    """Tests for photon_fabric.devices.problems.make_resonator_problem."""
    problem = problems.make_resonator_problem(geometry=tiny_geometry)
    wavelengths = [round(condition.wavelength * 1e9, 6) for condition in problem.conditions]
    assert wavelengths == [1550.0, 1548.0, 1552.0]  # nosec: B101
    top_in = problem.conditions[0].sources[0].mode.cut
    assert all(condition.sources[0].mode.cut == top_in for condition in problem.conditions)  # nosec: B101
    # modes are solved per wavelength
    first, second = (condition.sources[0].mode for condition in problem.conditions[:2])
    assert first.n_eff != second.n_eff  # nosec: B101


@mark.parametrize("kind", [DeviceKindEnum.SPLITTER, DeviceKindEnum.CROSSOVER, DeviceKindEnum.RESONATOR])
def test_make_problem_reflection(kind: DeviceKindEnum, tiny_geometry: DeviceGeometry) -> None:
    problem = problems.make_problem(kind=kind, geometry=tiny_geometry)
    for condition in problem.conditions:
        reflection = condition.reflection
        source = condition.sources[0].mode
        assert reflection is not None  # nosec: B101
        assert reflection.name in ("top_back", "bottom_back")  # nosec: B101
        assert reflection.weight == 0.0 and not reflection.intended  # nosec: B101
        assert reflection.monitor.mode.direction == DirectionEnum.BACKWARD  # nosec: B101
        assert reflection.monitor.mode.cut.x < source.cut.x  # nosec: B101
        assert reflection.monitor.mode.cut.y_start == source.cut.y_start  # nosec: B101
