"""Parallel-rail circuit layouts and the generators of switch fabric architectures."""
from photon_fabric.fabric.colors import assign_colors, at_color, check_palette  # noqa: F401
from photon_fabric.fabric.generators import generate  # noqa: F401
from photon_fabric.fabric.layout import (  # noqa: F401
    ArchitectureSpec,
    CircuitLayout,
    Column,
    ComponentCounts,
    Placement,
    Terminator,
    count_components,
    empty_layout,
    export_schemas,
    layout_from_json,
    layout_to_json,
    read_layout,
)
