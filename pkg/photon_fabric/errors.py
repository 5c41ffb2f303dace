"""Custom Exceptions for photon_fabric."""


class PhotonFabricError(Exception):
    """A class of Errors that is raised on issues within photon_fabric."""


class ValidationError(PhotonFabricError):
    """An Error that is raised when an input violates its schema or its invariants."""


class UnsupportedSize(ValidationError):
    """An Error that is raised when an architecture is requested with size parameters outside of its domain."""


class PaletteTooSmall(ValidationError):
    """An Error that is raised when a palette can not provide the distinct colors a layout requires."""


class UnresolvedControl(ValidationError):
    """An Error that is raised when a control id of a layout is not resolved by a switch state."""


class NumericalError(PhotonFabricError):
    """A class of Errors that is raised on numerical failures."""


class SolverFailure(NumericalError):
    """An Error that is raised when a sparse linear system can not be factorized or solved."""


class Diverged(NumericalError):
    """An Error that is raised when an optimization objective becomes non-finite."""


class NoGuidedMode(NumericalError):
    """An Error that is raised when a permittivity line does not support the requested guided mode."""


class NoResonance(NumericalError):
    """An Error that is raised when a spectrum does not show a resolvable resonance."""


class Unroutable(PhotonFabricError):
    """An Error that is raised when a routing request can not be realized on a layout."""


class ArtifactError(PhotonFabricError):
    """An Error that is raised on issues with reading or writing artifact files."""


class ArtifactNotFoundError(ArtifactError, FileNotFoundError):
    """An Error that is raised when an artifact file can not be found."""


class TaskError(PhotonFabricError):
    """An Error that is raised when an error occurs in a Task."""
