"""Module with configuration defaults for settings and numerical constants.

The defaults for locations and directories are provided as dicts which use SettingsTypeEnum as keys to distinguish
between different ways of running photon-fabric.
"""
from pathlib import Path

from orjson import OPT_APPEND_NEWLINE, OPT_INDENT_2, OPT_SERIALIZE_NUMPY, OPT_SORT_KEYS
from xdg.BaseDirectory import xdg_config_home, xdg_state_home

from photon_fabric.common.enums import SettingsTypeEnum

ORJSON_OPTION = OPT_INDENT_2 | OPT_APPEND_NEWLINE | OPT_SORT_KEYS | OPT_SERIALIZE_NUMPY

SETTINGS_LOCATION = {
    SettingsTypeEnum.SYSTEM: Path("/etc/photon-fabric.conf"),
    SettingsTypeEnum.USER: Path(xdg_config_home + "/photon-fabric/photon-fabric.conf"),
}
SETTINGS_OVERRIDE_LOCATION = {
    SettingsTypeEnum.SYSTEM: Path("/etc/photon-fabric.conf.d/"),
    SettingsTypeEnum.USER: Path(xdg_config_home + "/photon-fabric/photon-fabric.conf.d/"),
}
OUTPUT_BASE = {
    SettingsTypeEnum.SYSTEM: Path("/var/lib/photon-fabric/"),
    SettingsTypeEnum.USER: Path(xdg_state_home + "/photon-fabric/"),
}
CACHE_ENV_VAR = "PHOTON_FABRIC_CACHE"

# materials (relative permittivity)
EPS_SILICON = 12.1
EPS_SILICA = 2.07

# wavelengths in m
LAMBDA_CENTER = 1550e-9
SWEEP_BAND = (1500e-9, 1600e-9)

# absorbing boundary
PML_CELLS = 15
PML_MIN_CELLS = 8
PML_ORDER = 3
PML_REFLECTION = 1e-4

# mode cuts extend this far beyond a waveguide core on each side (m)
MODE_CUT_MARGIN = 2e-6

# topology optimization
FILTER_RADIUS_NM = 120.0
PROJECTION_ETA = 0.5
BETA_SCHEDULE = (1.0, 4.0, 16.0, 64.0)
OPTIMIZER_STEP = 0.05
OPTIMIZER_MOMENTUM = 0.9
OPTIMIZER_SECOND_MOMENT = 0.999
INITIAL_DENSITY = 0.5
BINARIZE_THRESHOLD = 0.5
LOG_EVERY = 10
DESK_ITERATIONS = 200
FULL_ITERATIONS = 400

# device geometry (m)
FULL_REGION = 10e-6
FULL_RAIL_SPACING = 9e-6
FULL_PITCH = 20e-9
DESK_REGION = 4e-6
DESK_RAIL_SPACING = 2e-6
DESK_PITCH = 40e-9
WG_WIDTH = 500e-9
FILM_THICKNESS = 220e-9
LEAD_LENGTH = 1.5e-6
Y_MARGIN = 1e-6
RESONATOR_SIDEBANDS = (1548e-9, 1552e-9)

# sweeps (nm)
SWEEP_STEP_NM = 0.02
LORENTZIAN_MIN_PROMINENCE_DB = 3.0
LORENTZIAN_MIN_SAMPLES = 7

# behavioral models
SPLITTER_EXCESS_LOSS = 0.26
SPLITTER_CROSSTALK_FLOOR = -40.0
CROSSOVER_INSERTION_LOSS = 0.29
CROSSOVER_CROSSTALK = -27.0
CROSSOVER_BANDWIDTH_NM = 28.0
CROSSOVER_ROLLOFF_DB_PER_NM = 1.0
RESONATOR_Q = 4500.0
RESONATOR_EXTINCTION = 20.0
RESONATOR_DROP_LOSS = 0.5
RESONATOR_THROUGH_LOSS = 0.1
RESONATOR_GROUP_INDEX = 6.75
RESONATOR_BAR_SHIFT = 0.003
DB_FLOOR = -200.0

# fabric metadata (m)
RAIL_PITCH = 9e-6
COLUMN_PITCH = 12e-6
MUX_PALETTE_NM = tuple(1538.8 + 3.2 * index for index in range(8))
MULTICROSSBAR_PALETTE_NM = (1548.0, 1550.0, 1552.0)
WSS_6X6X4_PALETTE_NM = (1547.0, 1549.0, 1551.0, 1553.0)
WCC_PALETTE_NM = WSS_6X6X4_PALETTE_NM
