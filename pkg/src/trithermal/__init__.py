"""Three qubits decaying in independent thermal reservoirs.

Evolves GHZ- and W-class initial states through the thermal operator-sum
channel and tracks tripartite negativity, Svetlichny/WWZB Bell-inequality
violation and average teleportation fidelity, including the critical times
at which each quantity dies.
"""

__version__ = "0.1.0"

from .analysis import (
    CriticalReport,
    bell_death_time,
    bell_expectation_curve,
    closed_form_constants,
    critical_negativity,
    entanglement_margin_curve,
    fidelity_critical_time,
    fidelity_curve,
    find_crossing,
    negativity_curve,
    negativity_death_time,
    reservoir_at,
    short_time_svetlichny,
)
from .bell import (
    MeasurementFrame,
    ViolationReport,
    build_measurements,
    closed_form_expectation,
    maximize_violation,
    svetlichny_operator,
    violation_threshold,
    wwzb_operator,
)
from .channel import (
    ReservoirParams,
    apply_channel,
    apply_channel_sequential,
    lindblad_integrate,
    lindblad_rhs,
    single_qubit_kraus,
    three_qubit_kraus,
)
from .errors import (
    DimensionMismatchError,
    InvalidStateError,
    NoCrossingError,
    NonHermitianError,
    NotNormalizedError,
    UnequalRatesError,
)
from .linalg import (
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    expectation,
    hermitian_eigenvalues,
    partial_transpose,
    tensor_product,
)
from .measures import (
    NegativityReport,
    analytic_negativity_ghz,
    negativity,
    ppt_margin,
    tripartite_negativity,
)
from .states import check_density_matrix, ghz_state, maximally_mixed, pure_state, w_state
from .teleport import (
    CLASSICAL_FIDELITY,
    FidelityValue,
    analytic_fidelity_ghz,
    fidelity_ghz,
    fidelity_w,
)

__all__ = [
    "__version__",
    "CLASSICAL_FIDELITY",
    "CriticalReport",
    "DimensionMismatchError",
    "FidelityValue",
    "IDENTITY_2",
    "InvalidStateError",
    "MeasurementFrame",
    "NegativityReport",
    "NoCrossingError",
    "NonHermitianError",
    "NotNormalizedError",
    "ReservoirParams",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "UnequalRatesError",
    "ViolationReport",
    "analytic_fidelity_ghz",
    "analytic_negativity_ghz",
    "apply_channel",
    "apply_channel_sequential",
    "bell_death_time",
    "bell_expectation_curve",
    "build_measurements",
    "check_density_matrix",
    "closed_form_constants",
    "closed_form_expectation",
    "critical_negativity",
    "entanglement_margin_curve",
    "expectation",
    "fidelity_critical_time",
    "fidelity_curve",
    "fidelity_ghz",
    "fidelity_w",
    "find_crossing",
    "ghz_state",
    "hermitian_eigenvalues",
    "lindblad_integrate",
    "lindblad_rhs",
    "maximally_mixed",
    "maximize_violation",
    "negativity",
    "negativity_curve",
    "negativity_death_time",
    "partial_transpose",
    "ppt_margin",
    "pure_state",
    "reservoir_at",
    "short_time_svetlichny",
    "single_qubit_kraus",
    "svetlichny_operator",
    "tensor_product",
    "three_qubit_kraus",
    "tripartite_negativity",
    "violation_threshold",
    "w_state",
    "wwzb_operator",
]
