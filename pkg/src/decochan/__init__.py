"""decochan: exact capacities of decohering quantum channels.

Three channel families interpolating between the identity and a structured
decoherence map are constructed from their Kraus operators, verified to be
completely positive, trace preserving and degradable, and their quantum
capacities are evaluated both from closed-form expressions and by
independent concave maximization of the coherent information.
"""

from .capacity import (
    CapacityResult,
    DegradabilityReport,
    FejerSpectrum,
    brute_force_capacity_oracle,
    closed_form_capacity,
    closed_form_capacity_block,
    closed_form_capacity_fully,
    closed_form_capacity_weak,
    coherent_information,
    comp_mixed_spectrum_weak,
    compute_capacity,
    degradability_report,
    fejer_eigenvalues,
    maximize_diagonal,
    spectrum_comp_mixed_fully,
    window_overlap_sequence,
)
from .channels import (
    ChannelSpec,
    CPTPReport,
    KrausChannel,
    apply,
    block_partition,
    build_channel,
    choi,
    complementary,
    compose,
    make_block_decohering,
    make_fully_decohering,
    make_weakly_decohering,
    pinch,
    shift_operator,
    singleton_partition,
    symmetry_operators,
    validate_cptp,
)
from .errors import (
    BadParameter,
    BadPartition,
    DimensionMismatch,
    LengthMismatch,
    NegativeEigenvalue,
    NonHermitian,
    NotConverged,
    ToolkitError,
)
from .linalg import hermitian_eigs, majorizes, von_neumann_entropy

__all__ = [
    "BadParameter",
    "BadPartition",
    "CPTPReport",
    "CapacityResult",
    "ChannelSpec",
    "DegradabilityReport",
    "DimensionMismatch",
    "FejerSpectrum",
    "KrausChannel",
    "LengthMismatch",
    "NegativeEigenvalue",
    "NonHermitian",
    "NotConverged",
    "ToolkitError",
    "apply",
    "block_partition",
    "brute_force_capacity_oracle",
    "build_channel",
    "choi",
    "closed_form_capacity",
    "closed_form_capacity_block",
    "closed_form_capacity_fully",
    "closed_form_capacity_weak",
    "coherent_information",
    "comp_mixed_spectrum_weak",
    "complementary",
    "compose",
    "compute_capacity",
    "degradability_report",
    "fejer_eigenvalues",
    "hermitian_eigs",
    "majorizes",
    "make_block_decohering",
    "make_fully_decohering",
    "make_weakly_decohering",
    "maximize_diagonal",
    "pinch",
    "shift_operator",
    "singleton_partition",
    "spectrum_comp_mixed_fully",
    "symmetry_operators",
    "validate_cptp",
    "von_neumann_entropy",
    "window_overlap_sequence",
]
