"""decolab: entanglement decay of three-qubit GHZ/W states in noisy channels.

Evolves the GHZ and weighted-W states through the Pauli and depolarizing
channels (closed forms and RK4 integration of the master equation),
quantifies the surviving entanglement with a computable lower bound to the
three-qubit concurrence and a numerical convex-roof minimizer, and checks
entanglement persistence with partial-transpose diagnostics.
"""

from .backend import available as backend_available, name as backend_name
from .channels import (
    Channel,
    ChannelSpec,
    InitialState,
    StepTooLargeError,
    analytic_coefficients,
    evolve_analytic,
    evolve_numeric,
    initial_state,
    lindblad_ops,
    lindblad_rhs,
)
from .convexroof import (
    DegenerateError,
    Ensemble,
    NotIsometryError,
    RoofResult,
    ensemble_from_isometry,
    roof_minimize,
)
from .linalg import (
    EigenDecomposition,
    NoConvergenceError,
    NotHermitianError,
    NotPSDError,
    hermitian_eigen,
    kron,
    numerical_rank,
    psd_sqrt,
)
from .measures import (
    CutBreakdown,
    GeneratorSet,
    Tau3Result,
    cut_terms,
    generators,
    pure_c3,
    tau3,
    tilde_rho,
)
from .qsys import (
    CUTS,
    BadIndexError,
    BadPermutationError,
    BipartiteCut,
    InvariantViolationError,
    density,
    make_ghz,
    make_w,
    partial_trace,
    partial_transpose,
    permute_qubits,
    validate_density,
)
from .separability import PptReport, ppt_report

__version__ = "0.1.0"

__all__ = [
    "BadIndexError",
    "BadPermutationError",
    "BipartiteCut",
    "Channel",
    "ChannelSpec",
    "CutBreakdown",
    "CUTS",
    "DegenerateError",
    "EigenDecomposition",
    "Ensemble",
    "GeneratorSet",
    "InitialState",
    "InvariantViolationError",
    "NoConvergenceError",
    "NotHermitianError",
    "NotIsometryError",
    "NotPSDError",
    "PptReport",
    "RoofResult",
    "StepTooLargeError",
    "Tau3Result",
    "analytic_coefficients",
    "backend_available",
    "backend_name",
    "cut_terms",
    "density",
    "ensemble_from_isometry",
    "evolve_analytic",
    "evolve_numeric",
    "generators",
    "hermitian_eigen",
    "initial_state",
    "kron",
    "lindblad_ops",
    "lindblad_rhs",
    "make_ghz",
    "make_w",
    "numerical_rank",
    "partial_trace",
    "partial_transpose",
    "permute_qubits",
    "ppt_report",
    "psd_sqrt",
    "pure_c3",
    "roof_minimize",
    "tau3",
    "tilde_rho",
    "validate_density",
    "__version__",
]
