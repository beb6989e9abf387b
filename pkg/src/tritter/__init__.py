"""Three-photon interference in a planar three-waveguide coupler."""

from .coupler import (
    DeviceParams,
    PhysicalParams,
    canonicalize,
    coupling_matrix,
    transfer_matrix,
    transfer_matrix_oracle,
)
from .fock import Occupation, OutputState, enumerate_basis, support
from .interference import (
    ContourPoint,
    c111,
    coincidence_landscape,
    contour_analytic,
    contour_numeric,
    evolve,
    evolve_oracle,
    two_photon_reduction_check,
)
from .permanent import amplitude, expand_matrix, permanent_enumerate, permanent_ryser
from .states import StateClass, classify, fixtures, verify_fixtures

__version__ = "0.1.0"

__all__ = [
    "ContourPoint",
    "DeviceParams",
    "Occupation",
    "OutputState",
    "PhysicalParams",
    "StateClass",
    "amplitude",
    "c111",
    "canonicalize",
    "classify",
    "coincidence_landscape",
    "contour_analytic",
    "contour_numeric",
    "coupling_matrix",
    "enumerate_basis",
    "evolve",
    "evolve_oracle",
    "expand_matrix",
    "fixtures",
    "permanent_enumerate",
    "permanent_ryser",
    "support",
    "transfer_matrix",
    "transfer_matrix_oracle",
    "two_photon_reduction_check",
    "verify_fixtures",
]
