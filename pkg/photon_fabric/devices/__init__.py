"""The inverse-designed 2x2 devices: splitter, crossover and all-forward add-drop resonator."""
from photon_fabric.devices.geometry import DeviceGeometry, DeviceLayout, layout_device, preset  # noqa: F401
from photon_fabric.devices.metrics import (  # noqa: F401
    DeviceMetrics,
    combiner_response,
    evaluate_device,
    metrics_from_powers,
    reciprocity_check,
    straight_density,
)
from photon_fabric.devices.problems import (  # noqa: F401
    make_crossover_problem,
    make_problem,
    make_resonator_problem,
    make_splitter_problem,
)
from photon_fabric.devices.spectra import (  # noqa: F401
    ResonanceFit,
    Spectra,
    find_resonances,
    fit_lorentzian,
    spectra_to_csv,
    sweep_device,
)
