"""Closed-form upper bounds on the Z-spectral radius.

The three bounds form a chain: the pairwise partial-row-sum bound
(omega_max) is at most the pairwise quadratic bound (chain_middle), which
is at most the plain maximum row sum (gershgorin).  All of them are
suprema of the matching inclusion regions, so the two routes can be
cross-checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .regions import solve_radial_quadratic
from .tensor import DEFAULT_STRUCT_TOL, DenseTensor, RowAggregates

_CHAIN_SLACK = 1e-12
CHAIN_VIOLATION_WARNING = "internal error: bound chain ordering violated"


@dataclass
class BoundReport:
    """Named bound values plus structural-check warnings."""

    omega_max: float
    omega_hat_max: float
    omega_tilde_max: float
    chain_middle: float
    gershgorin: float
    attaining_pair: tuple[int, int]
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "omega_max": self.omega_max,
            "omega_hat_max": self.omega_hat_max,
            "omega_tilde_max": self.omega_tilde_max,
            "chain_middle": self.chain_middle,
            "gershgorin": self.gershgorin,
            "attaining_pair": list(self.attaining_pair),
            "warnings": list(self.warnings),
        }


class OmegaMaxResult(NamedTuple):
    omega_hat_max: float
    omega_tilde_max: float
    omega_max: float
    attaining_pair: tuple[int, int]


def _check_pair(agg: RowAggregates, i: int, j: int) -> tuple[int, int]:
    n = agg.dim
    for name, k in (("i", i), ("j", j)):
        if not 1 <= k <= n:
            raise IndexError(f"index {name}={k} out of range [1, {n}]")
    if i == j:
        raise ValueError("indices must differ")
    return i - 1, j - 1


def _delta0(agg: RowAggregates, i: int, j: int) -> float:
    R, P = agg.row_sums, agg.partial_sums
    p = P[i, j]
    q = P[j, i]
    c = max(0.0, R[i] - p) * max(0.0, R[j] - q)
    return solve_radial_quadratic(p, q, c).r_plus

def delta(agg: RowAggregates, i: int, j: int) -> float:
    """Larger root of the pairwise quadratic built from partial row sums.

    Computed through the shared stable root kernel rather than a literal
    transcription of the half-sum-plus-radical form; the two agree
    analytically.
    """
    i0, j0 = _check_pair(agg, i, j)
    return _delta0(agg, i0, j0)


def lambda_coef(agg: RowAggregates, i: int, j: int) -> float:
    """Discriminant of the pairwise quadratic behind the chain middle bound."""
    i0, j0 = _check_pair(agg, i, j)
    R, P, D = agg.row_sums, agg.partial_sums, agg.diag_abs
    d = D[i0, j0]
    return (R[i0] - d - P[j0, i0]) ** 2 + 4.0 * d * max(0.0, R[j0] - P[j0, i0])


def bound_omega_max(agg: RowAggregates) -> OmegaMaxResult:
    """Supremum of the Omega region in closed form.

    The hat part maximizes min(P_i^j, P_j^i) over ordered pairs; the tilde
    part maximizes min(R_i, delta(i, j)).  The attaining pair is the
    lexicographically smallest ordered pair achieving the overall maximum.
    """
    n = agg.dim
    if n < 2:
        raise ValueError("bounds require dim >= 2")
    R, P = agg.row_sums, agg.partial_sums
    hat_best = -np.inf
    tilde_best = -np.inf
    best = -np.inf
    best_pair = (1, 2)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            hat_v = min(P[i, j], P[j, i])
            tilde_v = min(R[i], _delta0(agg, i, j))
            hat_best = max(hat_best, hat_v)
            tilde_best = max(tilde_best, tilde_v)
            v = max(hat_v, tilde_v)
            if v > best:  # strict: first pair in lexicographic order wins ties
                best = v
                best_pair = (i + 1, j + 1)
    return OmegaMaxResult(float(hat_best), float(tilde_best), float(best), best_pair)


def bound_chain_middle(agg: RowAggregates) -> float:
    """Middle bound of the chain: pairwise quadratic on (row sum minus
    trailing diagonal, partial row sum), maximized over ordered pairs."""
    n = agg.dim
    if n < 2:
        raise ValueError("bounds require dim >= 2")
    R, P, D = agg.row_sums, agg.partial_sums, agg.diag_abs
    best = -np.inf
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            d = D[i, j]
            p = max(0.0, R[i] - d)
            q = P[j, i]
            c = d * max(0.0, R[j] - q)
            r_plus = solve_radial_quadratic(p, q, c).r_plus
            best = max(best, r_plus, p, q)
    return float(best)


def bound_gershgorin(agg: RowAggregates) -> float:
    """Largest row sum."""
    return float(np.max(agg.row_sums))


def compare_report(tensor: DenseTensor, tol: float = DEFAULT_STRUCT_TOL) -> BoundReport:
    """All three bounds plus structural checks, as one report.

    The bound values are certified spectral-radius bounds only for weakly
    symmetric nonnegative tensors; when either check fails they are still
    computed as formal quantities and a warning is recorded.  The chain
    ordering is re-verified on the computed values; a violation would mean
    an internal defect and is flagged with a distinguished warning.
    """
    agg = tensor.aggregates()
    om = bound_omega_max(agg)
    middle = bound_chain_middle(agg)
    gersh = bound_gershgorin(agg)
    warnings = []
    if not tensor.is_nonnegative():
        warnings.append("tensor has negative entries; bounds are formal quantities only")
    if not tensor.is_weakly_symmetric(tol):
        warnings.append("tensor is not weakly symmetric; bounds are formal quantities only")
    if om.omega_max > middle + _CHAIN_SLACK or middle > gersh + _CHAIN_SLACK:
        warnings.append(CHAIN_VIOLATION_WARNING)
    return BoundReport(
        omega_max=om.omega_max,
        omega_hat_max=om.omega_hat_max,
        omega_tilde_max=om.omega_tilde_max,
        chain_middle=middle,
        gershgorin=gersh,
        attaining_pair=om.attaining_pair,
        warnings=warnings,
    )
