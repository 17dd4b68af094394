"""Dense real tensors with 1-based index semantics.

Provides storage, parsing, elementwise access, structural predicates
(nonnegativity, symmetry, weak symmetry) and the row / partial-row
aggregates that every inclusion region and spectral-radius bound is
built from.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

# Entries like 1/3 are not exactly representable, so structural predicates
# compare with a small relative tolerance by default.
DEFAULT_STRUCT_TOL = 1e-10

_DOCUMENT_FIELDS = {"order", "dim", "default", "entries", "values"}


class TensorFormatError(ValueError):
    """A tensor document is malformed or violates the file format."""


@dataclass(frozen=True)
class RowAggregates:
    """Precomputed row sums, partial row sums and trailing-diagonal entries.

    All tables are 0-based and built from absolute values:

    * ``row_sums[i]`` — sum of ``|a|`` over every entry of row ``i``.
    * ``partial_sums[j, i]`` — sum over row ``j`` restricted to index
      tuples in which index ``i`` never appears (``j != i``).
    * ``diag_abs[i, j]`` — ``|a[i, j, j, ..., j]|`` (``i != j``).

    Diagonal positions of the two tables are unused and left at zero.
    """

    row_sums: np.ndarray
    partial_sums: np.ndarray
    diag_abs: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.row_sums)


class DenseTensor:
    """Order-m, dimension-n real tensor with dense row-major storage.

    The backing array has shape ``(n,) * m`` in C order, so the flat
    ``values`` layout varies the last index fastest.  Indices are 1-based
    at the API boundary, matching the usual mathematical convention.
    Instances are immutable; all methods are pure functions of the data.
    """

    __slots__ = ("data",)

    def __init__(self, data, copy: bool = True):
        arr = np.array(data, dtype=float, copy=copy)
        if arr.ndim < 2:
            raise ValueError(f"tensor order must be >= 2, got {arr.ndim}")
        n = arr.shape[0]
        if n < 2:
            raise ValueError(f"tensor dimension must be >= 2, got {n}")
        if any(s != n for s in arr.shape):
            raise ValueError(f"all axes must have the same length, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("tensor entries must be finite")
        arr.flags.writeable = False
        self.data = arr

    # -- structure ---------------------------------------------------------

    @property
    def order(self) -> int:
        return self.data.ndim

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def values(self) -> np.ndarray:
        """Flat row-major copy of the entries (last index fastest)."""
        return self.data.reshape(-1)

    def __repr__(self) -> str:
        return f"DenseTensor(order={self.order}, dim={self.dim})"

    def _index_offset(self, idx) -> tuple:
        idx = tuple(idx)
        if len(idx) != self.order:
            raise IndexError(f"index tuple must have {self.order} components, got {len(idx)}")
        for pos, k in enumerate(idx):
            if not (isinstance(k, (int, np.integer)) and 1 <= k <= self.dim):
                raise IndexError(f"index component {pos + 1} is {k!r}, must be in [1, {self.dim}]")
        return tuple(k - 1 for k in idx)

    def _check_row(self, i: int) -> int:
        if not (isinstance(i, (int, np.integer)) and 1 <= i <= self.dim):
            raise IndexError(f"row index {i!r} out of range [1, {self.dim}]")
        return i - 1

    def entry(self, idx) -> float:
        """Entry at a 1-based m-tuple of indices."""
        return float(self.data[self._index_offset(idx)])

    # -- aggregates --------------------------------------------------------

    def row_sum(self, i: int) -> float:
        """Sum of absolute values over every entry whose first index is i."""
        return float(np.abs(self.data[self._check_row(i)]).sum())

    def partial_row_sum(self, j: int, i: int) -> float:
        """Row-j absolute sum restricted to index tuples that avoid index i."""
        j0 = self._check_row(j)
        i0 = self._check_row(i)
        if i0 == j0:
            raise ValueError("partial row sum requires i != j")
        keep = [k for k in range(self.dim) if k != i0]
        block = self.data[j0][np.ix_(*([keep] * (self.order - 1)))]
        return float(np.abs(block).sum())

    def diag_like(self, i: int, j: int) -> float:
        """|a[i, j, ..., j]| — the row-i entry whose trailing indices all equal j."""
        i0 = self._check_row(i)
        j0 = self._check_row(j)
        if i0 == j0:
            raise ValueError("diag_like requires i != j")
        return float(abs(self.data[(i0,) + (j0,) * (self.order - 1)]))

    def aggregates(self) -> RowAggregates:
        """All row sums, partial row sums and trailing-diagonal magnitudes."""
        n, m = self.dim, self.order
        absdata = np.abs(self.data)
        row_sums = absdata.reshape(n, -1).sum(axis=1)
        partial = np.zeros((n, n))
        diag = np.zeros((n, n))
        for j in range(n):
            for i in range(n):
                if i == j:
                    continue
                keep = [k for k in range(n) if k != i]
                partial[j, i] = absdata[j][np.ix_(*([keep] * (m - 1)))].sum()
                diag[j, i] = absdata[(j,) + (i,) * (m - 1)]
        for arr in (row_sums, partial, diag):
            arr.flags.writeable = False
        return RowAggregates(row_sums, partial, diag)

    # -- polynomial action -------------------------------------------------

    def _check_vector(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"vector must have length {self.dim}, got shape {x.shape}")
        return x

    def apply(self, x) -> np.ndarray:
        """The vector whose i-th component contracts row i with x in every slot."""
        x = self._check_vector(x)
        out = self.data
        for _ in range(self.order - 1):
            out = out @ x
        return out

    def poly_value(self, x) -> float:
        """Full contraction of the tensor with x in all m slots."""
        x = self._check_vector(x)
        return float(x @ self.apply(x))

    # -- structural predicates ----------------------------------------------

    def is_nonnegative(self) -> bool:
        return bool(np.all(self.data >= 0.0))

    def is_symmetric(self, tol: float = DEFAULT_STRUCT_TOL) -> bool:
        """True when entries agree across every permutation of their indices.

        Entries in each permutation class must match within ``tol`` relative
        to the largest magnitude in the class (absolute ``tol`` for all-zero
        classes).
        """
        if tol < 0:
            raise ValueError("tol must be >= 0")
        groups: dict[tuple, list[float]] = {}
        for t in itertools.product(range(self.dim), repeat=self.order):
            groups.setdefault(tuple(sorted(t)), []).append(float(self.data[t]))
        for vals in groups.values():
            lo, hi = min(vals), max(vals)
            scale = max(abs(lo), abs(hi))
            limit = tol * scale if scale > 0.0 else tol
            if hi - lo > limit:
                return False
        return True

    def is_weakly_symmetric(self, tol: float = DEFAULT_STRUCT_TOL) -> bool:
        """True when the gradient of the degree-m form equals m times apply().

        Both sides are expanded into exact monomial coefficient maps by
        iterating every index tuple, then compared coefficient by
        coefficient (tolerance relative to the largest coefficient of the
        component, absolute when that is zero).  Deterministic and exact at
        desk scale, unlike sampling the identity at random points.
        """
        if tol < 0:
            raise ValueError("tol must be >= 0")
        n, m = self.dim, self.order
        data = self.data
        lhs: list[dict[tuple, float]] = [{} for _ in range(n)]
        rhs: list[dict[tuple, float]] = [{} for _ in range(n)]
        for t in itertools.product(range(n), repeat=m):
            v = float(data[t])
            tail = t[1:]
            key = tuple(sorted(tail))
            row = lhs[t[0]]
            row[key] = row.get(key, 0.0) + m * v
            for i in set(t):
                rem = list(t)
                rem.remove(i)
                key = tuple(sorted(rem))
                row = rhs[i]
                row[key] = row.get(key, 0.0) + t.count(i) * v
        for i in range(n):
            coeffs = [abs(v) for v in lhs[i].values()] + [abs(v) for v in rhs[i].values()]
            scale = max(coeffs, default=0.0)
            limit = tol * scale if scale > 0.0 else tol
            for key in lhs[i].keys() | rhs[i].keys():
                if abs(lhs[i].get(key, 0.0) - rhs[i].get(key, 0.0)) > limit:
                    return False
        return True


def _require_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise TensorFormatError(f"{where}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise TensorFormatError(f"{where}: value must be finite, got {value!r}")
    return float(value)


def _require_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TensorFormatError(f"{where}: expected an integer, got {value!r}")
    return value


def parse_tensor(text: str) -> DenseTensor:
    """Parse the JSON tensor document format.

    The document declares ``order`` and ``dim`` and supplies entries either
    sparsely (``entries`` with 1-based index tuples over an optional
    ``default`` fill) or densely (``values``, flat row-major with the last
    index fastest).  Unknown fields, duplicate index tuples, out-of-range
    indices and non-finite values are all hard errors.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TensorFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise TensorFormatError("top-level value must be an object")
    unknown = sorted(set(doc) - _DOCUMENT_FIELDS)
    if unknown:
        raise TensorFormatError(f"unknown field(s): {', '.join(unknown)}")
    for field in ("order", "dim"):
        if field not in doc:
            raise TensorFormatError(f"missing required field '{field}'")
    order = _require_int(doc["order"], "order")
    dim = _require_int(doc["dim"], "dim")
    if order < 2:
        raise TensorFormatError(f"order: must be >= 2, got {order}")
    if dim < 2:
        raise TensorFormatError(f"dim: must be >= 2, got {dim}")
    if "entries" in doc and "values" in doc:
        raise TensorFormatError("fields 'entries' and 'values' are mutually exclusive")
    if "values" in doc and "default" in doc:
        raise TensorFormatError("field 'default' is not allowed alongside 'values'")

    shape = (dim,) * order
    if "values" in doc:
        values = doc["values"]
        if not isinstance(values, list):
            raise TensorFormatError("values: expected an array")
        expected = dim**order
        if len(values) != expected:
            raise TensorFormatError(f"values: expected {expected} numbers (dim^order), got {len(values)}")
        flat = [_require_number(v, f"values[{k}]") for k, v in enumerate(values)]
        data = np.array(flat, dtype=float).reshape(shape)
        return DenseTensor(data, copy=False)

    default = _require_number(doc["default"], "default") if "default" in doc else 0.0
    data = np.full(shape, default)
    entries = doc.get("entries", [])
    if not isinstance(entries, list):
        raise TensorFormatError("entries: expected an array")
    seen: set[tuple] = set()
    for k, item in enumerate(entries):
        where = f"entries[{k}]"
        if not isinstance(item, dict) or set(item) != {"idx", "value"}:
            raise TensorFormatError(f"{where}: expected an object with exactly 'idx' and 'value'")
        idx = item["idx"]
        if not isinstance(idx, list) or len(idx) != order:
            raise TensorFormatError(f"{where}.idx: expected an array of {order} indices")
        offsets = []
        for pos, component in enumerate(idx):
            component = _require_int(component, f"{where}.idx[{pos}]")
            if not 1 <= component <= dim:
                raise TensorFormatError(f"{where}.idx[{pos}]: index {component} out of range [1, {dim}]")
            offsets.append(component - 1)
        offsets = tuple(offsets)
        if offsets in seen:
            raise TensorFormatError(f"{where}.idx: duplicate index tuple {idx}")
        seen.add(offsets)
        data[offsets] = _require_number(item["value"], f"{where}.value")
    return DenseTensor(data, copy=False)
