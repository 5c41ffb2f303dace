"""Behavioral transfer-matrix simulation of circuits."""
from photon_fabric.netsim.circuit import (  # noqa: F401
    PathMetrics,
    TransferMatrix,
    circuit_response,
    intended_rails,
    is_unitary,
    path_metrics,
)
from photon_fabric.netsim.io import (  # noqa: F401
    parameter_set_from_json,
    parameter_set_to_json,
    path_metrics_to_csv,
    read_parameter_set,
    response_to_csv,
)
from photon_fabric.netsim.models import DeviceParameterSet, export_schemas, parameter_set  # noqa: F401
