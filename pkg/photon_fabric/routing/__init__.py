"""Switch states for permutation and wavelength requests and their verification by path tracing."""
from photon_fabric.routing.io import read_requests, read_state, requests_from_json, verification_to_csv  # noqa: F401
from photon_fabric.routing.models import (  # noqa: F401
    Permutation,
    RouteRecord,
    SwitchState,
    WavelengthRequest,
    WavelengthRoute,
    export_schemas,
)
from photon_fabric.routing.solvers import solve_state, verify, verify_batch  # noqa: F401
from photon_fabric.routing.trace import Tracer, trace_paths  # noqa: F401
