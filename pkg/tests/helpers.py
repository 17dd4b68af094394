"""Brute-force reference implementations and tensor generators for tests.

Everything here enumerates index tuples directly with itertools and
evaluates the defining inequalities literally, staying independent of the
library's numpy contractions and interval algebra.
"""

import itertools
import math

import numpy as np

from zeig.tensor import DenseTensor


# -- generators ----------------------------------------------------------------


def diagonal_tensor(diag, order):
    n = len(diag)
    data = np.zeros((n,) * order)
    for k, v in enumerate(diag):
        data[(k,) * order] = v
    return DenseTensor(data, copy=False)


def symmetrize(data):
    m = data.ndim
    out = np.zeros_like(data)
    for perm in itertools.permutations(range(m)):
        out += np.transpose(data, axes=perm)
    return out / math.factorial(m)


def random_tensor(rng, order, dim, signed=False):
    data = rng.random((dim,) * order)
    if signed:
        data = 2.0 * data - 1.0
    return DenseTensor(data, copy=False)


def random_symmetric_tensor(rng, order, dim, signed=False):
    data = rng.random((dim,) * order)
    if signed:
        data = 2.0 * data - 1.0
    return DenseTensor(symmetrize(data), copy=False)


def random_dyadic_tensor(rng, order, dim, signed=False):
    """Entries are multiples of 1/8, so float sums are exact in any order."""
    lo = -16 if signed else 0
    data = rng.integers(lo, 17, size=(dim,) * order) / 8.0
    return DenseTensor(data, copy=False)


def permuted_tensor(tensor, perm):
    """Relabel indices: entry at (i1..im) moves to (perm[i1]..perm[im])."""
    inv = np.argsort(perm)
    data = tensor.data[np.ix_(*([inv] * tensor.order))]
    return DenseTensor(data)


def rank_one_tensor(x, order):
    data = np.array(x, dtype=float)
    out = data
    for _ in range(order - 1):
        out = np.multiply.outer(out, data)
    return DenseTensor(out, copy=False)


# -- brute-force tensor operations ----------------------------------------------


def brute_row_sum(tensor, i):
    n, m = tensor.dim, tensor.order
    return sum(
        abs(tensor.entry((i,) + t)) for t in itertools.product(range(1, n + 1), repeat=m - 1)
    )


def brute_partial_row_sum(tensor, j, i):
    n, m = tensor.dim, tensor.order
    others = [k for k in range(1, n + 1) if k != i]
    return sum(abs(tensor.entry((j,) + t)) for t in itertools.product(others, repeat=m - 1))


def brute_apply(tensor, x):
    n, m = tensor.dim, tensor.order
    out = np.zeros(n)
    for i in range(1, n + 1):
        acc = 0.0
        for t in itertools.product(range(1, n + 1), repeat=m - 1):
            term = tensor.entry((i,) + t)
            for c in t:
                term *= x[c - 1]
            acc += term
        out[i - 1] = acc
    return out


def brute_poly_value(tensor, x):
    total = 0.0
    for t in itertools.product(range(1, tensor.dim + 1), repeat=tensor.order):
        term = tensor.entry(t)
        for c in t:
            term *= x[c - 1]
        total += term
    return total


def brute_aggregates(tensor):
    n = tensor.dim
    R = np.array([brute_row_sum(tensor, i) for i in range(1, n + 1)])
    P = np.zeros((n, n))
    D = np.zeros((n, n))
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            if i != j:
                P[j - 1, i - 1] = brute_partial_row_sum(tensor, j, i)
                D[j - 1, i - 1] = abs(tensor.entry((j,) + (i,) * (tensor.order - 1)))
    return R, P, D


# -- brute-force region membership (defining inequalities, no intervals) --------


def brute_in_K(R, P, D, r):
    return any(r <= R_i for R_i in R)


def brute_in_M(R, P, D, r):
    n = len(R)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            d = D[i, j]
            if (r - (R[i] - d)) * (r - P[j, i]) <= d * (R[j] - P[j, i]):
                return True
            if r < R[i] - d and r < P[j, i]:
                return True
    return False


def brute_in_Omega(R, P, D, r):
    n = len(R)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if r < P[i, j] and r < P[j, i]:
                return True
            if r <= R[i] and (r - P[i, j]) * (r - P[j, i]) <= (R[i] - P[i, j]) * (R[j] - P[j, i]):
                return True
    return False


def brute_delta(R, P, i, j):
    """Literal transcription of the half-sum-plus-radical closed form."""
    p, q = P[i, j], P[j, i]
    return 0.5 * (p + q + math.sqrt((p - q) ** 2 + 4.0 * (R[i] - p) * (R[j] - q)))


def region_endpoints(region):
    out = []
    for iv in region.intervals:
        out.extend([iv.lo, iv.hi])
    return out


# -- finite differences -----------------------------------------------------------


def finite_difference_jacobian(tensor, x, step=1e-6):
    n = tensor.dim
    J = np.zeros((n, n))
    for k in range(n):
        e = np.zeros(n)
        e[k] = step
        J[:, k] = (tensor.apply(x + e) - tensor.apply(x - e)) / (2.0 * step)
    return J
