"""Desk-scale Z-eigenpair ground truth.

Two finders: an exhaustive angle sweep for dimension 2 (complete up to
grid resolution) and Newton's method with seeded random restarts for
general dimension (finds a subset of the spectrum).  Accepted eigenpairs
are re-verified post hoc against the residual tolerance rather than
trusted from the solver loop.  verify_inclusion checks found eigenvalues
against the three inclusion regions and the closed-form bound.

Determinism: every restart draws its start point from a sub-seed derived
from the master seed and the restart index, so results do not depend on
batching or execution order.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass, field

import numpy as np

from .bounds import bound_omega_max
from .regions import region_K, region_M, region_Omega
from .tensor import DEFAULT_STRUCT_TOL, DenseTensor

INCLUSION_TOL = 1e-8
_SWEEP_REFINE_TOL = 1e-13


@dataclass(frozen=True)
class Eigenpair:
    """A real eigenvalue with its unit eigenvector and residual norm."""

    value: float
    x: np.ndarray
    residual: float

    def to_dict(self) -> dict:
        return {"lambda": self.value, "x": [float(v) for v in self.x], "residual": self.residual}


@dataclass
class OracleConfig:
    restarts: int = 1000
    max_iter: int = 200
    residual_tol: float = 1e-12
    dedupe_tol_lambda: float = 1e-8
    dedupe_tol_x: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        for name in ("residual_tol", "dedupe_tol_lambda", "dedupe_tol_x"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def residual(tensor: DenseTensor, value: float, x) -> float:
    """Euclidean norm of apply(x) - value * x for a unit vector x."""
    x = np.asarray(x, dtype=float)
    if x.shape != (tensor.dim,):
        raise ValueError(f"vector must have length {tensor.dim}, got shape {x.shape}")
    if abs(np.linalg.norm(x) - 1.0) > 1e-9:
        raise ValueError("x must be a unit vector")
    return float(np.linalg.norm(tensor.apply(x) - value * x))


# -- batched polynomial action ----------------------------------------------


def _apply_batch(data: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Row-wise contraction for a batch of vectors: result[b, i]."""
    m = data.ndim
    dims = string.ascii_lowercase[:m]
    sub = dims + "," + ",".join("z" + c for c in dims[1:]) + "->z" + dims[0]
    return np.einsum(sub, data, *([X] * (m - 1)), optimize=True)


def _jacobian_batch(data: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Batched Jacobian of the contraction map: result[b, i, k]."""
    m = data.ndim
    n = data.shape[0]
    if m == 2:
        return np.broadcast_to(data, (len(X), n, n))
    dims = string.ascii_lowercase[:m]
    out = None
    for p in range(1, m):
        keep = [k for k in range(1, m) if k != p]
        sub = dims + "," + ",".join("z" + dims[k] for k in keep) + "->z" + dims[0] + dims[p]
        term = np.einsum(sub, data, *([X] * (m - 2)), optimize=True)
        out = term if out is None else out + term
    return out


# -- deduplication and ordering ----------------------------------------------


def _dedupe(pairs: list[Eigenpair], tol_lambda: float, tol_x: float) -> list[Eigenpair]:
    """Collapse eigenpairs equal up to tolerance and vector sign.

    Within a duplicate cluster the pair with the smallest residual wins,
    so the reported witness is the best available one.
    """
    kept: list[Eigenpair] = []
    for cand in pairs:
        for pos, have in enumerate(kept):
            if abs(cand.value - have.value) <= tol_lambda and min(
                np.linalg.norm(cand.x - have.x), np.linalg.norm(cand.x + have.x)
            ) <= tol_x:
                if cand.residual < have.residual:
                    kept[pos] = cand
                break
        else:
            kept.append(cand)
    return kept


def _sorted_pairs(pairs: list[Eigenpair]) -> list[Eigenpair]:
    return sorted(pairs, key=lambda p: (-p.value, tuple(p.x)))


# -- angle sweep (dim 2) ------------------------------------------------------


def z_eigs_sweep_n2(tensor: DenseTensor, grid_size: int = 100_000) -> list[Eigenpair]:
    """All eigenpairs of a dimension-2 tensor by sweeping the unit circle.

    Parametrizes x = (cos t, sin t), scans the tangential component
    g(t) = apply(x)_1 sin t - apply(x)_2 cos t on a uniform grid over
    [0, 2*pi), and refines every sign change by bisection until
    |g| <= 1e-13.  For a unit vector the residual of the Rayleigh pair
    equals |g(t)|, so accepted residuals inherit that tolerance.
    """
    if tensor.dim != 2:
        raise ValueError(f"angle sweep requires dim = 2, got {tensor.dim}")
    if grid_size < 100:
        raise ValueError("grid_size must be >= 100")

    def g_of(theta: float) -> float:
        x = np.array([math.cos(theta), math.sin(theta)])
        ax = tensor.apply(x)
        return float(ax[0] * x[1] - ax[1] * x[0])

    thetas = np.linspace(0.0, 2.0 * math.pi, grid_size + 1)
    X = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)
    AX = _apply_batch(tensor.data, X)
    g = AX[:, 0] * X[:, 1] - AX[:, 1] * X[:, 0]

    roots: list[float] = []
    if np.all(g == 0.0):
        # Degenerate tangent field (e.g. the zero tensor): every direction is
        # an eigenvector; report the axis representatives.
        roots = [0.0, 0.5 * math.pi]
    else:
        for k in range(grid_size):
            if g[k] == 0.0:
                if k == 0 or g[k - 1] != 0.0:
                    roots.append(float(thetas[k]))
                continue
            if g[k] * g[k + 1] < 0.0:
                a, b = float(thetas[k]), float(thetas[k + 1])
                fa = float(g[k])
                mid = 0.5 * (a + b)
                for _ in range(200):
                    mid = 0.5 * (a + b)
                    fm = g_of(mid)
                    if abs(fm) <= _SWEEP_REFINE_TOL or (b - a) <= 1e-16:
                        break
                    if (fm > 0.0) == (fa > 0.0):
                        a, fa = mid, fm
                    else:
                        b = mid
                roots.append(mid)

    found: list[Eigenpair] = []
    for theta in roots:
        x = np.array([math.cos(theta), math.sin(theta)])
        ax = tensor.apply(x)
        lam = float(x @ ax)
        res = float(np.linalg.norm(ax - lam * x))
        found.append(Eigenpair(lam, x, res))
    cfg = OracleConfig()
    return _sorted_pairs(_dedupe(found, cfg.dedupe_tol_lambda, cfg.dedupe_tol_x))


# -- Newton with random restarts ----------------------------------------------


def _start_points(n: int, restarts: int, seed: int) -> np.ndarray:
    """Uniform draws on the unit sphere, one sub-seed per restart index."""
    children = np.random.SeedSequence(seed).spawn(restarts)
    X = np.empty((restarts, n))
    for k, child in enumerate(children):
        v = np.random.default_rng(child).normal(size=n)
        norm = np.linalg.norm(v)
        if norm < 1e-12:
            v = np.zeros(n)
            v[0] = 1.0
            norm = 1.0
        X[k] = v / norm
    return X


def _solve_newton_steps(J: np.ndarray, F: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batched linear solves; items with singular systems are flagged out."""
    ok = np.ones(len(J), dtype=bool)
    try:
        return np.linalg.solve(J, -F[..., None])[..., 0], ok
    except np.linalg.LinAlgError:
        steps = np.zeros_like(F)
        for k in range(len(J)):
            try:
                steps[k] = np.linalg.solve(J[k], -F[k])
            except np.linalg.LinAlgError:
                ok[k] = False
        return steps, ok


def z_eigs_newton(tensor: DenseTensor, config: OracleConfig | None = None) -> list[Eigenpair]:
    """Eigenpairs found by Newton's method on the eigen system with the
    unit-norm constraint, from seeded random restarts.

    Each restart starts at a sphere point drawn from its own sub-seed and
    iterates the full (n+1)-variable Newton step with the exact Jacobian
    of the contraction map, renormalizing x after every step.  Restarts
    that fail to reach the residual tolerance within max_iter are dropped;
    an empty result is legal.  Survivors are re-verified, deduplicated
    (eigenvalue and eigenvector up to sign) and sorted by eigenvalue
    descending.
    """
    cfg = config or OracleConfig()
    n = tensor.dim
    data = tensor.data
    eye = np.eye(n)

    X = _start_points(n, cfg.restarts, cfg.seed)
    AX = _apply_batch(data, X)
    lam = np.einsum("zi,zi->z", X, AX)
    order = np.arange(cfg.restarts)

    accepted: dict[int, tuple[np.ndarray, float]] = {}
    for it in range(cfg.max_iter + 1):
        if len(order) == 0:
            break
        AX = _apply_batch(data, X)
        res = np.linalg.norm(AX - lam[:, None] * X, axis=1)
        good = np.isfinite(res)
        done = good & (res <= cfg.residual_tol)
        for k in np.nonzero(done)[0]:
            accepted[int(order[k])] = (X[k].copy(), float(lam[k]))
        active = good & ~done
        if not np.any(active) or it == cfg.max_iter:
            break
        X, lam, AX, order = X[active], lam[active], AX[active], order[active]

        J = _jacobian_batch(data, X)
        B = len(order)
        full = np.zeros((B, n + 1, n + 1))
        full[:, :n, :n] = J - lam[:, None, None] * eye
        full[:, :n, n] = -X
        full[:, n, :n] = 2.0 * X
        F = np.concatenate([AX - lam[:, None] * X, (np.einsum("zi,zi->z", X, X) - 1.0)[:, None]], axis=1)
        steps, ok = _solve_newton_steps(full, F)
        X = X + steps[:, :n]
        lam = lam + steps[:, n]
        norms = np.linalg.norm(X, axis=1)
        ok &= np.isfinite(norms) & (norms > 1e-12) & np.isfinite(lam)
        X, lam, order, norms = X[ok], lam[ok], order[ok], norms[ok]
        X = X / norms[:, None]

    found: list[Eigenpair] = []
    for k in sorted(accepted):
        x, _ = accepted[k]
        ax = tensor.apply(x)
        value = float(x @ ax)  # Rayleigh value for the re-verified residual
        res = float(np.linalg.norm(ax - value * x))
        if res <= cfg.residual_tol:
            found.append(Eigenpair(value, x, res))
    return _sorted_pairs(_dedupe(found, cfg.dedupe_tol_lambda, cfg.dedupe_tol_x))


# -- verification --------------------------------------------------------------


@dataclass(frozen=True)
class PairCheck:
    """Inclusion results for one eigenpair."""

    value: float
    in_omega: bool
    in_m: bool
    in_k: bool
    within_omega_max: bool | None  # None when the bound hypothesis fails

    @property
    def passed(self) -> bool:
        return self.in_omega and self.in_m and self.in_k and self.within_omega_max is not False

    def to_dict(self) -> dict:
        return {
            "lambda": self.value,
            "in_omega": self.in_omega,
            "in_m": self.in_m,
            "in_k": self.in_k,
            "within_omega_max": self.within_omega_max,
        }


@dataclass
class VerificationReport:
    checks: list[PairCheck] = field(default_factory=list)
    omega_max: float = 0.0
    bound_applies: bool = False

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[PairCheck]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "omega_max": self.omega_max,
            "bound_applies": self.bound_applies,
            "checks": [c.to_dict() for c in self.checks],
            "all_passed": self.all_passed,
        }


def verify_inclusion(
    tensor: DenseTensor, pairs: list[Eigenpair], tol: float = INCLUSION_TOL
) -> VerificationReport:
    """Check every eigenvalue magnitude against the three region closures,
    and against the closed-form bound when the tensor is weakly symmetric
    and nonnegative."""
    agg = tensor.aggregates()
    omega = region_Omega(agg)
    m_region = region_M(agg)
    k_region = region_K(agg)
    om = bound_omega_max(agg)
    applies = tensor.is_nonnegative() and tensor.is_weakly_symmetric(DEFAULT_STRUCT_TOL)
    report = VerificationReport(omega_max=om.omega_max, bound_applies=applies)
    for pair in pairs:
        r = abs(pair.value)
        report.checks.append(
            PairCheck(
                value=pair.value,
                in_omega=omega.contains(r, tol),
                in_m=m_region.contains(r, tol),
                in_k=k_region.contains(r, tol),
                within_omega_max=(r <= om.omega_max + tol) if applies else None,
            )
        )
    return report
