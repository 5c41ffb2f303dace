"""Inverse design of pixelated 2x2 photonic devices and simulation of parallel-waveguide switch fabrics."""
from pathlib import Path

from .config.run import export_schemas as run_export_schemas
from .fabric import export_schemas as fabric_export_schemas
from .netsim import export_schemas as netsim_export_schemas
from .routing import export_schemas as routing_export_schemas


def export_schemas(output: Path | str) -> None:
    """Export the JSON schema files of photon-fabric to a directory.

    Parameters
    ----------
    output: Path
        A directory to write the JSON schema files to
    """
    run_export_schemas(output=output)
    fabric_export_schemas(output=output)
    netsim_export_schemas(output=output)
    routing_export_schemas(output=output)
