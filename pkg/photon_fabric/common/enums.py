"""Enums used through photon_fabric."""
from __future__ import annotations

from enum import Enum, IntEnum, IntFlag, auto


class PortRoleEnum(Enum):
    """An Enum to distinguish the roles of a port on a simulation grid.

    Attributes
    ----------
    SOURCE: "source"
        The port injects a guided mode
    MONITOR: "monitor"
        The port measures the modal amplitude of a field
    """

    SOURCE = "source"
    MONITOR = "monitor"


class DirectionEnum(IntEnum):
    """An Enum to describe the propagation direction of a mode along the x axis.

    Attributes
    ----------
    FORWARD: 1
        Propagation towards increasing x
    BACKWARD: -1
        Propagation towards decreasing x
    """

    FORWARD = 1
    BACKWARD = -1


class DeviceKindEnum(Enum):
    """An Enum to distinguish the inverse-designed 2x2 devices.

    Attributes
    ----------
    SPLITTER: "splitter"
        A 50:50 splitter (and, by reciprocity, combiner)
    CROSSOVER: "crossover"
        A waveguide crossover that routes each input to the diagonally opposite output
    RESONATOR: "resonator"
        An all-forward add-drop resonator
    """

    SPLITTER = "splitter"
    CROSSOVER = "crossover"
    RESONATOR = "resonator"


class ScaleEnum(Enum):
    """An Enum to distinguish device presets.

    Attributes
    ----------
    DESK: "desk"
        A reduced design region and coarse grid that optimizes within minutes
    FULL: "full"
        The full 10 x 10 um design region on a 20 nm pixel grid
    """

    DESK = "desk"
    FULL = "full"


class ArchitectureKindEnum(Enum):
    """An Enum to distinguish the switch fabric architectures that can be generated.

    Attributes
    ----------
    CROSSPOINT: "crosspoint"
        An N x N crosspoint matrix on 2N rails
    SPANKE_BENES: "spanke_benes"
        A planar N x N permutation network of N(N-1)/2 elements
    PILOSS: "piloss"
        An N x N path-independent-loss matrix
    CLOS_BENES_16: "clos_benes_16"
        A 16 x 16 multistage network with triangular crossover shuffles
    SELECT_8TO1: "select_8to1"
        An 8 x 1 selector with terminators
    SELECT_1TO8: "select_1to8"
        A 1 x 8 distributor with terminators
    MUX8: "mux8"
        A passive eight color multiplexer
    DEMUX8: "demux8"
        A passive eight color demultiplexer
    MULTICROSSBAR: "multicrossbar"
        A cascade of wavelength-dedicated 2 x 2 switches on two rails
    WSS_6X6X4: "wss_6x6x4"
        A 6 x 6 wavelength-selective switch for four colors
    WSS_8X8X3: "wss_8x8x3"
        An 8 x 8 wavelength-selective switch for three colors
    WCC_4X4X4: "wcc_4x4x4"
        A 4 x 4 wavelength cross-connect for four colors
    """

    CROSSPOINT = "crosspoint"
    SPANKE_BENES = "spanke_benes"
    PILOSS = "piloss"
    CLOS_BENES_16 = "clos_benes_16"
    SELECT_8TO1 = "select_8to1"
    SELECT_1TO8 = "select_1to8"
    MUX8 = "mux8"
    DEMUX8 = "demux8"
    MULTICROSSBAR = "multicrossbar"
    WSS_6X6X4 = "wss_6x6x4"
    WSS_8X8X3 = "wss_8x8x3"
    WCC_4X4X4 = "wcc_4x4x4"

    @classmethod
    def wavelength_kinds(cls) -> set[ArchitectureKindEnum]:
        """Return the members that route per color.

        Returns
        -------
        set[ArchitectureKindEnum]
            The wavelength-routing architecture kinds
        """
        return {cls.MULTICROSSBAR, cls.WSS_6X6X4, cls.WSS_8X8X3, cls.WCC_4X4X4}


class PlacementKindEnum(Enum):
    """An Enum to distinguish the elements that can be placed on a pair of rails.

    Attributes
    ----------
    SWITCH: "switch"
        A broadband actuated 2 x 2 switch
    COLORED_SWITCH: "colored_switch"
        An actuated add-drop that is in cross state at its color unless shifted
    ADD_DROP: "add_drop"
        A passive add-drop that is in cross state at its color and in bar state otherwise
    CROSSOVER: "crossover"
        A passive broadband crossover
    """

    SWITCH = "switch"
    COLORED_SWITCH = "colored_switch"
    ADD_DROP = "add_drop"
    CROSSOVER = "crossover"

    def is_active(self) -> bool:
        """Return whether the element kind requires a control.

        Returns
        -------
        bool
            True if the element is actuated, False otherwise
        """
        return self in (PlacementKindEnum.SWITCH, PlacementKindEnum.COLORED_SWITCH)


class ActuationEnum(Enum):
    """An Enum to describe the state of a 2 x 2 element.

    Attributes
    ----------
    CROSS: "cross"
        Inputs are exchanged
    BAR: "bar"
        Inputs pass straight through
    """

    CROSS = "cross"
    BAR = "bar"


class SwitchModelEnum(Enum):
    """An Enum to select the behavioral model of broadband switches.

    Attributes
    ----------
    RESONATOR: "resonator"
        An all-forward add-drop resonator, in cross state when unshifted
    MZI: "mzi"
        A Mach-Zehnder interferometer of two splitters, in bar state without phase shift
    """

    RESONATOR = "resonator"
    MZI = "mzi"


class SettingsTypeEnum(Enum):
    """An Enum to distinguish different Settings types.

    Attributes
    ----------
    USER: str
        User Settings
    SYSTEM: str
        System Settings
    """

    USER = "user"
    SYSTEM = "system"


class ExitCodeEnum(IntEnum):
    """An Enum of the exit codes of the command line interface.

    Attributes
    ----------
    SUCCESS: 0
        The command succeeded
    CONFIG: 2
        The configuration or an input file is invalid
    NUMERICAL: 3
        A numerical failure occurred
    UNROUTABLE: 4
        A routing request can not be realized
    """

    SUCCESS = 0
    CONFIG = 2
    NUMERICAL = 3
    UNROUTABLE = 4


class ActionStateEnum(IntFlag):
    """An Enum to distinguish different states in Checks and Tasks.

    Attributes
    ----------
    NOT_STARTED: int
        An action is not started
    STARTED: int
        An action is started
    STARTED_TASK: int
        An action is started and is a Task
    FAILED: int
        An action is failed
    FAILED_DEPENDENCY: int
        An action's dependency is failed
    FAILED_PRE_CHECK: int
        An action is failed and is a pre Check
    FAILED_POST_CHECK: int
        An action is failed and is a post Check
    FAILED_TASK: int
        An action is failed and is a Task
    FAILED_UNDO_DEPENDENCY: int
        An action is failed and is an undo Task of a dependency
    FAILED_UNDO_TASK: int
        An action is failed and is an undo Task
    SUCCESS: int
        An action is successful
    SUCCESS_TASK: int
        An action is successful and is a Task
    """

    NOT_STARTED = auto()
    STARTED = auto()
    STARTED_TASK = auto()
    FAILED = auto()
    FAILED_DEPENDENCY = auto()
    FAILED_PRE_CHECK = auto()
    FAILED_POST_CHECK = auto()
    FAILED_TASK = auto()
    FAILED_UNDO_DEPENDENCY = auto()
    FAILED_UNDO_TASK = auto()
    SUCCESS = auto()
    SUCCESS_TASK = auto()
