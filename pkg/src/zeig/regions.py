"""Eigenvalue inclusion regions on the radius axis.

Each inclusion set constrains a complex number z only through r = |z|, so
a region is represented exactly as a normalized union of intervals on
r >= 0 with per-endpoint openness flags.  Three constructors build the
radial traces of the classic single-row disk union (K), the pairwise
quadratic/box union (M) and the tighter pairwise set (Omega).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .tensor import RowAggregates


class QuadraticRootPair(NamedTuple):
    """Both real roots of (r - p)(r - q) = c, r_minus <= r_plus."""

    r_minus: float
    r_plus: float


def solve_radial_quadratic(p: float, q: float, c: float) -> QuadraticRootPair:
    """Roots of r^2 - (p + q) r + (p q - c) = 0 for p, q >= 0 and c >= 0.

    The larger root comes from the stable + branch of the quadratic
    formula and the smaller from the product of roots divided by the
    larger, which avoids catastrophic cancellation when c ~ 0 and p ~ q.
    c == 0 short-circuits to exactly (min(p, q), max(p, q)) so that
    degenerate cases (diagonal tensors) stay exact in floating point.
    """
    if c < 0.0:
        raise ValueError(f"product bound must be >= 0, got {c} (internal invariant violated)")
    if c == 0.0:
        return QuadraticRootPair(min(p, q), max(p, q))
    disc = math.sqrt((p - q) ** 2 + 4.0 * c)
    r_plus = 0.5 * ((p + q) + disc)
    if r_plus > 0.0:
        r_minus = (p * q - c) / r_plus
    else:
        r_minus = r_plus = 0.0
    return QuadraticRootPair(r_minus, r_plus)


@dataclass(frozen=True, slots=True)
class RadialInterval:
    """One interval on the radius axis; endpoints may be open."""

    lo: float
    hi: float
    lo_open: bool = False
    hi_open: bool = False

    def is_empty(self) -> bool:
        if self.lo > self.hi:
            return True
        if self.lo == self.hi:
            return self.lo_open or self.hi_open
        return False

    def contains(self, r: float, tol: float = 0.0) -> bool:
        if tol > 0.0:
            return self.lo - tol <= r <= self.hi + tol
        if r < self.lo or r > self.hi:
            return False
        if r == self.lo and self.lo_open:
            return False
        if r == self.hi and self.hi_open:
            return False
        return True


@dataclass(frozen=True)
class RadialRegion:
    """Normalized union of radius intervals.

    Normalization guarantees the stored intervals are non-empty, pairwise
    disjoint, sorted by lower endpoint, and merged wherever two intervals
    overlap or touch with at least one closed endpoint.  The empty region
    is the empty tuple.
    """

    intervals: tuple[RadialInterval, ...]

    @classmethod
    def from_intervals(cls, items: Iterable[RadialInterval]) -> "RadialRegion":
        kept = [iv for iv in items if not iv.is_empty()]
        for iv in kept:
            if iv.lo < 0.0:
                raise ValueError(f"interval extends below the radius axis: {iv}")
        kept.sort(key=lambda iv: (iv.lo, iv.lo_open))
        merged: list[RadialInterval] = []
        for iv in kept:
            if not merged:
                merged.append(iv)
                continue
            cur = merged[-1]
            touches = iv.lo < cur.hi or (iv.lo == cur.hi and not (iv.lo_open and cur.hi_open))
            if not touches:
                merged.append(iv)
                continue
            if iv.hi > cur.hi:
                hi, hi_open = iv.hi, iv.hi_open
            elif iv.hi < cur.hi:
                hi, hi_open = cur.hi, cur.hi_open
            else:
                hi, hi_open = cur.hi, cur.hi_open and iv.hi_open
            merged[-1] = RadialInterval(cur.lo, hi, cur.lo_open, hi_open)
        return cls(tuple(merged))

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def supremum(self) -> float:
        """Largest upper endpoint; 0 by convention for the empty region."""
        if not self.intervals:
            return 0.0
        return self.intervals[-1].hi

    def contains(self, r: float, tol: float = 0.0) -> bool:
        """Membership of the radius r.

        With tol == 0 open endpoints are honored exactly; with tol > 0 the
        query tests the closure with every endpoint relaxed outward by tol.
        """
        if r < 0.0:
            raise ValueError("radius must be >= 0")
        if tol < 0.0:
            raise ValueError("tol must be >= 0")
        return any(iv.contains(r, tol) for iv in self.intervals)

    def to_csv(self) -> str:
        """CSV rendering: one row per interval, openness flags as 0/1."""
        lines = ["lo,hi,lo_open,hi_open"]
        for iv in self.intervals:
            lines.append(f"{iv.lo:.17g},{iv.hi:.17g},{int(iv.lo_open)},{int(iv.hi_open)}")
        return "\n".join(lines) + "\n"


def _ordered_pairs(n: int):
    for i in range(n):
        for j in range(n):
            if i != j:
                yield i, j


def region_K(agg: RowAggregates) -> RadialRegion:
    """Radial trace of the union of the n single-row disks: [0, max row sum]."""
    return RadialRegion.from_intervals([RadialInterval(0.0, float(np.max(agg.row_sums)))])


def region_M(agg: RowAggregates) -> RadialRegion:
    """Pairwise quadratic-plus-box union.

    For every ordered pair (i, j), i != j, take the closed solution band of

        (r - (R_i - d_ij)) (r - P_j^i) <= d_ij (R_j - P_j^i)

    together with the half-open box r < min(R_i - d_ij, P_j^i), where d_ij
    is the trailing-diagonal magnitude |a[i, j, ..., j]|.
    """
    R, P, D = agg.row_sums, agg.partial_sums, agg.diag_abs
    n = agg.dim
    if n < 2:
        raise ValueError("region construction requires dim >= 2")
    items = []
    for i, j in _ordered_pairs(n):
        d = D[i, j]
        p = max(0.0, R[i] - d)
        q = P[j, i]
        c = d * max(0.0, R[j] - P[j, i])
        roots = solve_radial_quadratic(p, q, c)
        items.append(RadialInterval(max(0.0, roots.r_minus), roots.r_plus))
        cap = min(p, q)
        if cap > 0.0:
            items.append(RadialInterval(0.0, cap, hi_open=True))
    return RadialRegion.from_intervals(items)


def region_Omega(agg: RowAggregates) -> RadialRegion:
    """Pairwise partial-row-sum union; tighter than both K and M.

    For every ordered pair (i, j), i != j, take the half-open box
    r < min(P_i^j, P_j^i) together with the closed band of

        (r - P_i^j) (r - P_j^i) <= (R_i - P_i^j) (R_j - P_j^i)

    intersected with [0, R_i].
    """
    R, P = agg.row_sums, agg.partial_sums
    n = agg.dim
    if n < 2:
        raise ValueError("region construction requires dim >= 2")
    items = []
    for i, j in _ordered_pairs(n):
        p = P[i, j]
        q = P[j, i]
        c = max(0.0, R[i] - p) * max(0.0, R[j] - q)
        roots = solve_radial_quadratic(p, q, c)
        lo = max(0.0, roots.r_minus)
        hi = min(roots.r_plus, R[i])
        if lo <= hi:
            items.append(RadialInterval(lo, hi))
        cap = min(p, q)
        if cap > 0.0:
            items.append(RadialInterval(0.0, cap, hi_open=True))
    return RadialRegion.from_intervals(items)
