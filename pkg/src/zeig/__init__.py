"""Z-eigenvalue inclusion regions and spectral-radius bounds for real tensors."""

from .bounds import (
    BoundReport,
    OmegaMaxResult,
    bound_chain_middle,
    bound_gershgorin,
    bound_omega_max,
    compare_report,
    delta,
    lambda_coef,
)
from .oracle import (
    Eigenpair,
    OracleConfig,
    PairCheck,
    VerificationReport,
    residual,
    verify_inclusion,
    z_eigs_newton,
    z_eigs_sweep_n2,
)
from .regions import (
    QuadraticRootPair,
    RadialInterval,
    RadialRegion,
    region_K,
    region_M,
    region_Omega,
    solve_radial_quadratic,
)
from .tensor import (
    DEFAULT_STRUCT_TOL,
    DenseTensor,
    RowAggregates,
    TensorFormatError,
    parse_tensor,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "DenseTensor",
    "DEFAULT_STRUCT_TOL",
    "Eigenpair",
    "OmegaMaxResult",
    "OracleConfig",
    "PairCheck",
    "QuadraticRootPair",
    "RadialInterval",
    "RadialRegion",
    "RowAggregates",
    "TensorFormatError",
    "VerificationReport",
    "bound_chain_middle",
    "bound_gershgorin",
    "bound_omega_max",
    "compare_report",
    "delta",
    "lambda_coef",
    "parse_tensor",
    "region_K",
    "region_M",
    "region_Omega",
    "residual",
    "solve_radial_quadratic",
    "verify_inclusion",
    "z_eigs_newton",
    "z_eigs_sweep_n2",
]
