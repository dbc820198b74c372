"""Exact solution counters for diagonal systems.

Counts are computed from value distributions: tables mapping the vector
of equation left-hand sides to the number of variable assignments that
produce it.  Homogeneous counts pair two half-distributions
(meet-in-the-middle); difference counts are sums of squared table
entries.  All counters are exact; a direct-enumeration oracle provides
ground truth for tests.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .systems import DiagonalSystem, EquationBlock, make_system

#: default cap on distribution table entries
DEFAULT_MEMORY_CAP = 2 * 10**8

#: guard on direct enumeration size
ORACLE_GUARD = 10**9

VALUE_LIMIT = 2**127  # per-coordinate magnitude limit for value vectors


class CountingError(RuntimeError):
    pass


@dataclass(frozen=True)
class CountReport:
    X: int
    count: int
    method: str
    seconds: float
    table_size: int


# ----------------------------------------------------------------------
# Value vectors and per-variable tables
# ----------------------------------------------------------------------

def value_vector(sys_: DiagonalSystem, j: int, x: int) -> tuple[int, ...]:
    """Contribution of variable j (1-based) at value x, one coordinate
    per equation in canonical (degree, row) order."""
    if not 1 <= j <= sys_.s:
        raise CountingError(f"variable index {j} out of range")
    out = []
    for degree, _, row in sys_.rows():
        val = row[j - 1] * x**degree
        if abs(val) >= VALUE_LIMIT:
            raise CountingError("value overflow; reduce X")
        out.append(val)
    return tuple(out)


def coordinate_bounds(sys_: DiagonalSystem, X: int) -> list[int]:
    """Upper bound on |sum of contributions| per equation for |x_j| <= X."""
    return [
        sum(abs(c) for c in row) * X**degree + 1
        for degree, _, row in sys_.rows()
    ]


def _pervar_table(sys_: DiagonalSystem, j: int, X: int, sign: int) -> dict:
    table: dict[tuple[int, ...], int] = {}
    for x in range(-X, X + 1):
        key = tuple(sign * v for v in value_vector(sys_, j, x))
        table[key] = table.get(key, 0) + 1
    return table


# ----------------------------------------------------------------------
# Sparse convolution engine (any number of equations)
# ----------------------------------------------------------------------

def _convolve_sparse(a: dict, b: dict, cap: int) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    for kb, wb in b.items():
        for ka, wa in a.items():
            key = tuple(x + y for x, y in zip(ka, kb))
            out[key] = out.get(key, 0) + wa * wb
        if len(out) > cap:
            raise CountingError("memory cap exceeded in sparse convolution")
    return out


def distribution(
    sys_: DiagonalSystem,
    variables: Sequence[int],
    X: int,
    sign: int = 1,
    cap: int = DEFAULT_MEMORY_CAP,
) -> dict:
    """Value distribution of the selected variables over [-X, X].

    Returns a table mapping value vectors (one coordinate per equation)
    to exact assignment counts.  The empty selection gives {0-vector: 1}.
    """
    if sign not in (1, -1):
        raise CountingError("sign must be +1 or -1")
    if X < 0:
        raise CountingError("X must be non-negative")
    nzero = tuple(0 for _ in range(sys_.num_equations))
    table: dict = {nzero: 1}
    for j in variables:
        table = _convolve_sparse(table, _pervar_table(sys_, j, X, sign), cap)
    return table


# ----------------------------------------------------------------------
# Dense 1-D engine (single equation, int64 when safe)
# ----------------------------------------------------------------------

class _Dense1D:
    """Distribution of a single linear-combination value as a dense array
    of counts, indexed by value - offset."""

    def __init__(self, counts: np.ndarray, offset: int):
        self.counts = counts
        self.offset = offset

    @classmethod
    def delta(cls, dtype) -> "_Dense1D":
        return cls(np.ones(1, dtype=dtype), 0)

    def convolve_values(self, values: np.ndarray, weights: np.ndarray, cap: int) -> "_Dense1D":
        vmin, vmax = int(values.min()), int(values.max())
        n_new = len(self.counts) + (vmax - vmin)
        if n_new > cap:
            raise CountingError("memory cap exceeded in dense convolution")
        new = np.zeros(n_new, dtype=self.counts.dtype)
        m = len(self.counts)
        for v, w in zip(values, weights):
            i = int(v) - vmin
            new[i:i + m] += w * self.counts
        return _Dense1D(new, self.offset + vmin)


def _dense_values(row: tuple[int, ...], degree: int, j: int, X: int, sign: int):
    """Distinct values of sign*c_j*x^degree for |x| <= X, with multiplicities."""
    x = np.arange(-X, X + 1, dtype=object)
    vals = [sign * row[j - 1] * int(t) ** degree for t in x]
    table: dict[int, int] = {}
    for v in vals:
        table[v] = table.get(v, 0) + 1
    vs = np.array(sorted(table), dtype=object)
    ws = np.array([table[int(v)] for v in vs], dtype=object)
    return vs, ws


def _dense_distribution(
    sys_: DiagonalSystem, variables: Sequence[int], X: int, sign: int, cap: int
) -> _Dense1D:
    """Dense engine for single-equation systems."""
    (degree, _, row), = sys_.rows()
    mass = (2 * X + 1) ** len(variables)
    # int64 is safe when no partial count can overflow
    dtype = np.int64 if mass < 2**62 else object
    dist = _Dense1D.delta(dtype)
    for j in variables:
        vs, ws = _dense_values(row, degree, j, X, sign)
        if dtype is np.int64:
            vs64 = vs.astype(np.int64)
            ws64 = ws.astype(np.int64)
            dist = dist.convolve_values(vs64, ws64, cap)
        else:
            dist = dist.convolve_values(vs, ws, cap)
    return dist


def _dense_to_dict(dist: _Dense1D) -> dict:
    idx = np.nonzero(dist.counts)[0]
    return {(int(i) + dist.offset,): int(dist.counts[i]) for i in idx}


# ----------------------------------------------------------------------
# Counters
# ----------------------------------------------------------------------

def _pair_dense(a: _Dense1D, b: _Dense1D) -> int:
    """Sum over v of a[v] * b[-v], exactly."""
    lo = max(a.offset, -(b.offset + len(b.counts) - 1))
    hi = min(a.offset + len(a.counts) - 1, -b.offset)
    if lo > hi:
        return 0
    av = a.counts[lo - a.offset: hi - a.offset + 1]
    bv = b.counts[-hi - b.offset: -lo - b.offset + 1][::-1]
    return int(np.dot(av.astype(object), bv.astype(object)))


def _pair_sparse(a: dict, b: dict) -> int:
    if len(a) > len(b):
        a, b = b, a
    total = 0
    for key, wa in a.items():
        neg = tuple(-x for x in key)
        wb = b.get(neg)
        if wb:
            total += wa * wb
    return total


def count_homogeneous(
    sys_: DiagonalSystem,
    X: int,
    split: Optional[int] = None,
    cap: int = DEFAULT_MEMORY_CAP,
) -> CountReport:
    """Exact number of x in [-X, X]^s solving every equation of the system.

    Meet-in-the-middle: the variables are split at ceil(s/2) (overridable)
    and the two half-distributions are paired.
    """
    t0 = time.perf_counter()
    if split is None:
        split = (sys_.s + 1) // 2
    left = list(range(1, split + 1))
    right = list(range(split + 1, sys_.s + 1))
    if sys_.num_equations == 1:
        da = _dense_distribution(sys_, left, X, 1, cap)
        db = _dense_distribution(sys_, right, X, 1, cap)
        count = _pair_dense(da, db)
        size = len(da.counts) + len(db.counts)
    else:
        ta = distribution(sys_, left, X, 1, cap)
        tb = distribution(sys_, right, X, 1, cap)
        count = _pair_sparse(ta, tb)
        size = len(ta) + len(tb)
    return CountReport(X=X, count=count, method="meet-in-middle",
                       seconds=time.perf_counter() - t0, table_size=size)


def count_difference(sys_: DiagonalSystem, X: int, cap: int = DEFAULT_MEMORY_CAP) -> CountReport:
    """Exact number of pairs x, y in [-X, X]^s with equal value vectors,
    i.e. solutions of the difference system."""
    t0 = time.perf_counter()
    variables = list(range(1, sys_.s + 1))
    if sys_.num_equations == 1:
        dist = _dense_distribution(sys_, variables, X, 1, cap)
        counts = dist.counts.astype(object)
        count = int(np.dot(counts, counts))
        size = len(dist.counts)
    else:
        table = distribution(sys_, variables, X, 1, cap)
        count = sum(w * w for w in table.values())
        size = len(table)
    return CountReport(X=X, count=count, method="convolution",
                       seconds=time.perf_counter() - t0, table_size=size)


def vinogradov_system(s: int, l: int) -> DiagonalSystem:
    """The full system of degrees 1..l with unit coefficients in s variables."""
    ones = tuple(1 for _ in range(s))
    blocks = tuple(EquationBlock(d, (ones,)) for d in range(1, l + 1))
    return DiagonalSystem(s=s, blocks=blocks)


def count_vinogradov(s: int, l: int, X: int, cap: int = DEFAULT_MEMORY_CAP) -> CountReport:
    """Exact Vinogradov moment: the difference count for the full
    unit-coefficient system of degrees 1..l."""
    if l < 1:
        raise CountingError("degree must be >= 1")
    rep = count_difference(vinogradov_system(s, l), X, cap)
    return CountReport(X=X, count=rep.count, method=rep.method,
                       seconds=rep.seconds, table_size=rep.table_size)


# ----------------------------------------------------------------------
# The auxiliary quadratic system
#     x1^2 - x2^2 = 2 (h1 z1 - h2 z2),   x1 - x2 = h1 - h2
# ----------------------------------------------------------------------

def count_aux_quadratic(X: int, H: int) -> CountReport:
    """Exact count of (x1, x2, z1, z2, h1, h2) with |x_i|, |z_i| <= X and
    |h_i| <= H solving the auxiliary quadratic system, by
    meet-in-the-middle convolution."""
    t0 = time.perf_counter()
    # left table over (x1, x2): key (x1^2 - x2^2, x1 - x2)
    left: dict = {}
    for x1 in range(-X, X + 1):
        for x2 in range(-X, X + 1):
            key = (x1 * x1 - x2 * x2, x1 - x2)
            left[key] = left.get(key, 0) + 1
    # right = conv of (2 h z, h) over (h1, z1) and (-2 h z, -h) over (h2, z2)
    t1: dict = {}
    for h in range(-H, H + 1):
        for z in range(-X, X + 1):
            key = (2 * h * z, h)
            t1[key] = t1.get(key, 0) + 1
    count = 0
    for (a1, b1), w1 in t1.items():
        for (al, bl), wl in left.items():
            # need a1 - 2 h2 z2 = al and b1 - h2 = bl
            w2 = t1.get((a1 - al, b1 - bl))
            if w2:
                count += wl * w1 * w2
    size = len(left) + len(t1)
    return CountReport(X=X, count=count, method="meet-in-middle",
                       seconds=time.perf_counter() - t0, table_size=size)


def aux_quadratic_oracle(X: int, H: int) -> int:
    """Enumeration oracle for the auxiliary quadratic system: loops over
    (x1, x2, h1) and solves the two equations exactly for h2 and z2."""
    z1 = np.arange(-X, X + 1, dtype=np.int64)
    h1s = np.arange(-H, H + 1, dtype=np.int64)
    nz = 2 * X + 1
    total = 0
    for x1 in range(-X, X + 1):
        for x2 in range(-X, X + 1):
            d = x1 * x1 - x2 * x2
            h2s = h1s - (x1 - x2)
            valid = np.abs(h2s) <= H
            h1v = h1s[valid]
            h2v = h2s[valid]
            # case h2 == 0: need 2 h1 z1 == d, z2 free
            zero = h2v == 0
            for h1 in h1v[zero]:
                if h1 == 0:
                    total += nz * nz if d == 0 else 0
                else:
                    num = d
                    if num % (2 * h1) == 0 and abs(num // (2 * h1)) <= X:
                        total += nz
            # case h2 != 0: z2 = (2 h1 z1 - d) / (2 h2)
            h1n = h1v[~zero][:, None]
            h2n = h2v[~zero][:, None]
            if len(h1n):
                num = 2 * h1n * z1[None, :] - d
                den = 2 * h2n
                q, rem = np.divmod(num, den)
                ok = (rem == 0) & (np.abs(q) <= X)
                total += int(ok.sum())
    return total


def aux_quadratic_bruteforce(X: int, H: int) -> int:
    """Fully naive check over the whole 6-dimensional grid (small X, H only)."""
    if (2 * X + 1) ** 4 * (2 * H + 1) ** 2 > 2 * 10**8:
        raise CountingError("brute-force guard exceeded")
    x = np.arange(-X, X + 1, dtype=np.int64)
    h = np.arange(-H, H + 1, dtype=np.int64)
    total = 0
    for x1 in x:
        e1 = (int(x1) ** 2 - x[:, None, None, None, None] ** 2
              - 2 * (h[None, :, None, None, None] * x[None, None, :, None, None]
                     - h[None, None, None, :, None] * x[None, None, None, None, :]))
        e2 = (int(x1) - x[:, None, None, None, None]
              - h[None, :, None, None, None] + h[None, None, None, :, None])
        total += int(((e1 == 0) & (e2 == 0)).sum())
    return total


# ----------------------------------------------------------------------
# Direct-enumeration oracle
# ----------------------------------------------------------------------

def doubled_system(sys_: DiagonalSystem) -> DiagonalSystem:
    """The 2s-variable homogeneous system whose solutions are the
    difference-system solutions of ``sys_`` (columns c followed by -c)."""
    equations = []
    for degree, _, row in sys_.rows():
        equations.append((degree, tuple(row) + tuple(-c for c in row)))
    return make_system(2 * sys_.s, equations)


def enumerate_oracle(sys_: DiagonalSystem, X: int, mode: str = "homogeneous") -> CountReport:
    """Ground-truth count by direct enumeration of the full grid.

    Guard: the grid size (2X+1)^s (or (2X+1)^{2s} for difference mode)
    must not exceed 10^9.
    """
    t0 = time.perf_counter()
    if mode == "difference":
        target = doubled_system(sys_)
    elif mode == "homogeneous":
        target = sys_
    else:
        raise CountingError(f"unknown oracle mode {mode!r}")
    s = target.s
    grid = 2 * X + 1
    if grid**s > ORACLE_GUARD:
        raise CountingError("oracle guard exceeded")
    # chunk: outer variables via itertools, inner block vectorized
    inner = 0
    while inner < s and grid ** (inner + 1) <= 2 * 10**6:
        inner += 1
    outer = s - inner
    xs = np.arange(-X, X + 1, dtype=np.int64)
    # per-equation power tables for inner variables
    rows = list(target.rows())
    # inner assignment grids, flattened
    if inner > 0:
        mesh = np.meshgrid(*([xs] * inner), indexing="ij")
        inner_cols = [m.reshape(-1) for m in mesh]
    else:
        inner_cols = []
    count = 0
    for outer_vals in itertools.product(range(-X, X + 1), repeat=outer):
        ok = None
        for degree, _, row in rows:
            acc = sum(row[j] * outer_vals[j] ** degree for j in range(outer))
            val = np.full(len(inner_cols[0]) if inner_cols else 1, acc, dtype=np.int64)
            for j in range(inner):
                val = val + row[outer + j] * inner_cols[j] ** degree
            good = val == 0
            ok = good if ok is None else (ok & good)
        count += int(ok.sum())
    return CountReport(X=X, count=count, method="oracle",
                       seconds=time.perf_counter() - t0, table_size=0)
