"""Major-arc machinery: singular series, p-adic densities, singular
integral, local solubility, and the end-to-end predicted asymptotic.

The singular series is computed along two independent routes: a direct
complex-exponential-sum evaluation and an exact rational route through
congruence counts (Moebius inversion of the partial-sum identity).  The
archimedean density is likewise computed two ways: tensor quadrature of
the oscillatory-integral product, and Monte Carlo integration of a
triangle-kernel weighted volume.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Optional, Sequence

import gmpy2
import numpy as np

from .counting import count_homogeneous, CountingError
from .expsums import RationalPoint, eval_S, eval_v_batch, lambda_theta
from .systems import DiagonalSystem, derived_constants

M_COUNT_CAP = 2 * 10**8


# ----------------------------------------------------------------------
# Primes
# ----------------------------------------------------------------------

def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    return [int(p) for p in np.nonzero(sieve)[0]]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in range(2, int(n**0.5) + 1):
        if n % p == 0:
            return False
    return True


# ----------------------------------------------------------------------
# Major-arc membership
# ----------------------------------------------------------------------

def major_arc_locate(phases: dict, Y: float, Q: float):
    """Locate phases in the major arcs of scale Y and cutoff Q.

    ``phases`` maps degree -> sequence of values in [0, 1).  Returns
    (RationalPoint, beta dict) for the smallest admissible q <= Q, or
    None when the phases lie on the minor arcs.  Numerators are
    canonicalized to 1 <= a <= q (residue 0 is represented by q).
    """
    if Q > Y:
        raise ValueError("need Q <= Y")
    degrees = sorted(phases)
    for q in range(1, int(Q) + 1):
        a = {}
        beta = {}
        ok = True
        entries = []
        for l in degrees:
            row_a = []
            row_b = []
            for alpha in phases[l]:
                ai = round(alpha * q)
                b = alpha - ai / q
                if abs(b) > Q * Y ** (-l):
                    ok = False
                    break
                ai = ai % q
                row_a.append(ai if ai != 0 else q)
                row_b.append(b)
            if not ok:
                break
            a[l] = tuple(row_a)
            beta[l] = tuple(row_b)
            entries.extend(row_a)
        if ok and (q == 1 or math.gcd(q, *entries) == 1):
            return RationalPoint(q=q, a=a), beta
    return None


# ----------------------------------------------------------------------
# Congruence counts M(q)
# ----------------------------------------------------------------------

def _pervar_residue_table(row: tuple[int, ...], degree: int, j: int, q: int) -> list[int]:
    table = [0] * q
    c = row[j - 1] % q
    for x in range(q):
        table[(c * pow(x, degree, q)) % q] += 1
    return table


def _m_count_single(sys_: DiagonalSystem, q: int) -> int:
    """M(q) for a single-equation system via Kronecker-packed cyclic
    convolution (big-integer multiplication)."""
    (degree, _, row), = sys_.rows()
    bits = sys_.s * max(1, q.bit_length()) + 2
    b = ((bits + 7) // 8) * 8
    if q * (b // 8) > 10**9:
        raise CountingError("memory cap exceeded in M(q)")
    mask_q = (1 << (b * q)) - 1

    def pack(table):
        buf = bytearray(q * b // 8)
        step = b // 8
        for v, cnt in enumerate(table):
            if cnt:
                buf[v * step: v * step + step] = cnt.to_bytes(step, "little")
        return gmpy2.mpz(int.from_bytes(bytes(buf), "little"))

    cache = {}
    acc = gmpy2.mpz(1)
    for j in range(1, sys_.s + 1):
        c = row[j - 1] % q
        if c not in cache:
            cache[c] = pack(_pervar_residue_table(row, degree, j, q))
        acc = acc * cache[c]
        # fold slots q..2q-2 back onto 0..q-2 (cyclic reduction)
        acc = (acc & mask_q) + (acc >> (b * q))
    return int(acc & ((1 << b) - 1))


def _m_count_sparse(sys_: DiagonalSystem, q: int, cap: int) -> int:
    rows = list(sys_.rows())
    r = len(rows)
    zero = tuple(0 for _ in range(r))
    table = {zero: 1}
    for j in range(1, sys_.s + 1):
        per: dict = {}
        for x in range(q):
            key = tuple((row[j - 1] * pow(x, degree, q)) % q for degree, _, row in rows)
            per[key] = per.get(key, 0) + 1
        new: dict = {}
        for ka, wa in table.items():
            for kb, wb in per.items():
                key = tuple((a + c) % q for a, c in zip(ka, kb))
                new[key] = new.get(key, 0) + wa * wb
            if len(new) > cap:
                raise CountingError("memory cap exceeded in M(q)")
        table = new
    return table.get(zero, 0)


def M_count(sys_: DiagonalSystem, q: int, cap: int = M_COUNT_CAP) -> int:
    """Exact number of x in (Z/q)^s satisfying all congruences."""
    if q < 1:
        raise ValueError("q must be positive")
    if sys_.min_degree() < 2:
        raise ValueError("congruence counts require all degrees >= 2")
    if q == 1:
        return 1
    if sys_.num_equations == 1:
        return _m_count_single(sys_, q)
    return _m_count_sparse(sys_, q, cap)


# ----------------------------------------------------------------------
# Singular series coefficients A(q), two routes
# ----------------------------------------------------------------------

def A_exp(sys_: DiagonalSystem, q: int, imag_tol: float = 1e-9) -> float:
    """A(q) by direct evaluation of the complete exponential sums."""
    if q < 1:
        raise ValueError("q must be positive")
    if q == 1:
        return 1.0
    rows = list(sys_.rows())
    degrees = sorted({degree for degree, _, _ in rows})
    kmax = max(degrees)
    r = len(rows)
    s_cache: dict = {}

    def S_of(lam_tuple):
        key = tuple(x % q for x in lam_tuple)
        if key not in s_cache:
            s_cache[key] = eval_S(q, key)
        return s_cache[key]

    total = 0j
    for a in itertools.product(range(1, q + 1), repeat=r):
        if math.gcd(q, *a) != 1:
            continue
        term = 1.0 + 0j
        for j in range(1, sys_.s + 1):
            lam = [0] * (kmax - 1)
            for (degree, _, row), ai in zip(rows, a):
                lam[degree - 2] += row[j - 1] * ai
            term *= S_of(lam) / q
        total += term
    if abs(total.imag) > imag_tol * max(1.0, abs(total.real)):
        raise ArithmeticError(f"A(q) has non-real residue {total.imag}")
    return float(total.real)


def _divisors(q: int) -> list[int]:
    out = []
    d = 1
    while d * d <= q:
        if q % d == 0:
            out.append(d)
            if d != q // d:
                out.append(q // d)
        d += 1
    return sorted(out)


def _moebius(n: int) -> int:
    if n == 1:
        return 1
    mu = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            mu = -mu
        d += 1
    if n > 1:
        mu = -mu
    return mu


def A_count(sys_: DiagonalSystem, q: int, cap: int = M_COUNT_CAP) -> Fraction:
    """A(q) exactly, by Moebius inversion of the partial-sum identity
    sum_{d | q} A(d) = q^{r - s} M(q)."""
    dc = derived_constants(sys_)
    total = Fraction(0)
    for d in _divisors(q):
        mu = _moebius(q // d)
        if mu:
            total += mu * Fraction(M_count(sys_, d, cap), d ** (sys_.s - dc.r))
    return total


@dataclass(frozen=True)
class SingularSeriesReport:
    Q: int
    partial: float
    terms: list          # (q, A(q)) pairs
    cauchy_gap: float    # |S(Q) - S(Q/2)|
    method: str
    exact_partial: Optional[Fraction] = None


def singular_series_truncated(
    sys_: DiagonalSystem, Q: int, method: str = "exact", cap: int = M_COUNT_CAP
) -> SingularSeriesReport:
    """Partial singular series: sum of A(q) for q <= Q."""
    if Q < 1:
        raise ValueError("Q must be >= 1")
    if method == "exact":
        terms = [(q, A_count(sys_, q, cap)) for q in range(1, Q + 1)]
    elif method == "float":
        terms = [(q, A_exp(sys_, q)) for q in range(1, Q + 1)]
    else:
        raise ValueError(f"unknown method {method!r}")
    partial = sum(a for _, a in terms)
    half = sum(a for q, a in terms if q <= Q // 2)
    exact = partial if method == "exact" else None
    return SingularSeriesReport(
        Q=Q, partial=float(partial), terms=terms,
        cauchy_gap=abs(float(partial - half)), method=method,
        exact_partial=exact,
    )


# ----------------------------------------------------------------------
# p-adic densities
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class LocalDensityReport:
    p: int
    iterates: list        # (i, p^{-i(s-r)} M(p^i)) pairs, i >= 0
    chi_p: float
    stabilized: bool
    i_used: int


def chi_p(
    sys_: DiagonalSystem,
    p: int,
    i_max: int = 6,
    tol: float = 1e-6,
    cap: int = M_COUNT_CAP,
) -> LocalDensityReport:
    """p-adic density as the limit of normalized congruence counts.

    All iterates up to i_max are computed (subject to the memory cap)
    and the deepest one is reported as the density.  The stabilization
    flag records whether some consecutive pair agreed to relative
    tolerance ``tol``.  The sequence often has exact plateaus of length
    two, so a single small change is evidence of convergence but the
    deepest iterate is always the better estimate.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if i_max < 2:
        raise ValueError("i_max must be >= 2")
    dc = derived_constants(sys_)
    exps = sys_.s - dc.r
    iterates = [(0, 1.0)]
    vals = [1.0]
    stabilized = False
    i_used = 0
    for i in range(1, i_max + 1):
        q = p**i
        try:
            m = M_count(sys_, q, cap)
        except CountingError:
            break
        val = float(Fraction(m, q**exps))
        iterates.append((i, val))
        vals.append(val)
        if len(vals) >= 3 and not stabilized:
            scale = max(1.0, abs(vals[-1]))
            if abs(vals[-1] - vals[-2]) < tol * scale:
                stabilized = True
                i_used = i
    if not stabilized:
        i_used = iterates[-1][0]
    return LocalDensityReport(
        p=p, iterates=iterates, chi_p=vals[-1], stabilized=stabilized, i_used=i_used
    )


# ----------------------------------------------------------------------
# Singular integral: tensor quadrature route
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SingularIntegralReport:
    method: str
    value: float
    error: float
    parameters: dict


def _theta_matrix(sys_: DiagonalSystem, betas: np.ndarray) -> np.ndarray:
    """Map equation offsets (n, r) -> per-variable phase rows (n*s, k-1)."""
    rows = list(sys_.rows())
    kmax = max(degree for degree, _, _ in rows)
    n = betas.shape[0]
    out = np.zeros((n, sys_.s, kmax - 1))
    for idx, (degree, _, row) in enumerate(rows):
        for j in range(sys_.s):
            out[:, j, degree - 2] += row[j] * betas[:, idx]
    return out.reshape(n * sys_.s, kmax - 1)


def _v_product(sys_: DiagonalSystem, betas: np.ndarray, tol: float) -> np.ndarray:
    thetas = _theta_matrix(sys_, betas)
    vals, _ = eval_v_batch(thetas, 1.0, tol)
    return vals.reshape(betas.shape[0], sys_.s).prod(axis=1)


_GL32 = np.polynomial.legendre.leggauss(32)


def _adaptive_1d(f, a: float, b: float, tol: float, max_intervals: int = 4000):
    """Adaptive Gauss-Legendre integration of a vectorized complex
    integrand; returns (value, error estimate)."""
    nodes, weights = _GL32
    stack = [(a, b)]
    total = 0j
    err_total = 0.0
    used = 0
    while stack:
        lo, hi = stack.pop()
        used += 1
        if used > max_intervals:
            raise ArithmeticError("tolerance unreachable within interval budget")
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        quarter = 0.5 * half
        pts = np.concatenate([
            mid - half + quarter * (nodes + 1.0),     # left half
            mid + quarter * (nodes + 1.0),            # right half
            lo + half * (nodes + 1.0),                # whole interval
        ])
        vals = f(pts)
        coarse = half * np.sum(weights * vals[64:])
        fine = quarter * (np.sum(weights * vals[:32]) + np.sum(weights * vals[32:64]))
        delta = abs(fine - coarse)
        if delta < tol * max(1.0, (hi - lo) / (b - a)):
            total += fine
            err_total += delta
        else:
            stack.append((lo, mid))
            stack.append((mid, hi))
    return total, err_total


def singular_integral_Q(
    sys_: DiagonalSystem, Q: float, tol: float = 1e-6, v_tol: float = 1e-8
) -> SingularIntegralReport:
    """Quadrature of the oscillatory-integral product over the box
    [-Q, Q]^r (r <= 4; practical for r <= 2)."""
    dc = derived_constants(sys_)
    r = dc.r
    if r > 4:
        raise ValueError("dimension guard: quadrature supports r <= 4")
    if Q < 0:
        raise ValueError("Q must be >= 1")

    def integrate(dim: int, fixed: list[float], tol_dim: float):
        if dim == r:
            raise AssertionError
        if dim == r - 1:
            def f(pts):
                betas = np.zeros((len(pts), r))
                betas[:, :dim] = fixed
                betas[:, dim] = pts
                return _v_product(sys_, betas, v_tol)
            return _adaptive_1d(f, -Q, Q, tol_dim)
        # outer dimensions: fixed-order Gauss-Legendre panels, recursive
        nodes, weights = _GL32
        total = 0j
        err = 0.0
        panels = max(4, int(math.ceil(Q)))
        edges = np.linspace(-Q, Q, panels + 1)
        for lo, hi in zip(edges[:-1], edges[1:]):
            half = 0.5 * (hi - lo)
            for nd, w in zip(nodes, weights):
                val, e = integrate(dim + 1, fixed + [0.5 * (lo + hi) + half * nd],
                                   tol_dim / panels)
                total += half * w * val
                err += half * w * e
        return total, err

    if r == 1:
        # the full integral is twice the real part of the half-range integral
        def f(pts):
            betas = pts[:, None]
            return _v_product(sys_, betas, v_tol)
        val_half, err = _adaptive_1d(f, 0.0, Q, tol / 2.0)
        value = 2.0 * val_half.real
    else:
        val, err = integrate(0, [], tol)
        value = val.real
    return SingularIntegralReport(
        method="quadrature", value=float(value), error=float(err + tol),
        parameters={"Q": Q, "tol": tol},
    )


def chi_infinity_quadrature(
    sys_: DiagonalSystem, Q: float = 256.0, tol: float = 1e-6
) -> SingularIntegralReport:
    """Estimate the archimedean density as the large-cutoff limit of the
    box quadrature; the error bar includes the last doubling gap."""
    rep_half = singular_integral_Q(sys_, Q / 2.0, tol)
    rep = singular_integral_Q(sys_, Q, tol)
    gap = abs(rep.value - rep_half.value)
    return SingularIntegralReport(
        method="quadrature", value=rep.value, error=rep.error + 2.0 * gap,
        parameters={"Q": Q, "tol": tol, "doubling_gap": gap},
    )


def singular_integral_abs(
    sys_: DiagonalSystem, W: float, tol: float = 1e-6, v_tol: float = 1e-8
) -> float:
    """Integral of the product of |v| factors over [-W, W]^r: a
    tail-decay diagnostic (r = 1 only)."""
    dc = derived_constants(sys_)
    if dc.r != 1:
        raise ValueError("absolute-value diagnostic implemented for r = 1")
    if W == 0:
        return 0.0

    def f(pts):
        thetas = _theta_matrix(sys_, pts[:, None])
        vals, _ = eval_v_batch(thetas, 1.0, v_tol)
        return np.abs(vals).reshape(len(pts), sys_.s).prod(axis=1).astype(complex)

    val, _ = _adaptive_1d(f, 0.0, W, tol)
    return 2.0 * val.real


# ----------------------------------------------------------------------
# Singular integral: triangle-kernel Monte Carlo route
# ----------------------------------------------------------------------

MC_CHUNK = 10**6


def chi_infinity_schmidt(
    sys_: DiagonalSystem,
    T: float,
    samples: int,
    seed: int = 0,
) -> SingularIntegralReport:
    """Monte Carlo estimate of the triangle-kernel weighted volume

        W_T = int_{[-1,1]^s} prod_{l,j} w_T(Phi_j^{(l)}(z)) dz,

    with w_T(y) = T max(0, 1 - T |y|).  Sampling uses counter-based
    streams keyed by (seed, chunk index), so results are independent of
    any parallel schedule.  The reported error is twice the standard
    error of the mean.
    """
    if T < 1:
        raise ValueError("T must be >= 1")
    if samples < 10**3:
        raise ValueError("need at least 1000 samples")
    rows = list(sys_.rows())
    coeffs = np.array([row for _, _, row in rows], dtype=np.float64)
    degrees = np.array([degree for degree, _, _ in rows])
    vol = 2.0 ** sys_.s
    total = 0.0
    total_sq = 0.0
    done = 0
    chunk_index = 0
    while done < samples:
        m = min(MC_CHUNK, samples - done)
        bg = np.random.Philox(key=np.array([seed, chunk_index], dtype=np.uint64))
        z = np.random.Generator(bg).uniform(-1.0, 1.0, size=(m, sys_.s))
        w = np.full(m, vol)
        for coeff_row, degree in zip(coeffs, degrees):
            phi = (z ** degree) @ coeff_row
            w *= T * np.maximum(0.0, 1.0 - T * np.abs(phi))
        total += float(w.sum())
        total_sq += float((w * w).sum())
        done += m
        chunk_index += 1
    mean = total / samples
    var = max(0.0, total_sq / samples - mean * mean)
    se = math.sqrt(var / samples)
    return SingularIntegralReport(
        method="schmidt", value=mean, error=2.0 * se,
        parameters={"T": T, "samples": samples, "seed": seed},
    )


# ----------------------------------------------------------------------
# Local solubility
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class LocalWitness:
    found: bool
    witness: Optional[tuple]
    modulus_exponent: int    # witness is a solution mod p^this (p-adic case)
    detail: str


def _forms_mod(sys_: DiagonalSystem, x: Sequence[int], q: int) -> list[int]:
    return [
        sum(row[j] * pow(int(x[j]), degree, q) for j in range(sys_.s)) % q
        for degree, _, row in sys_.rows()
    ]


def _jacobian_mod(sys_: DiagonalSystem, x: Sequence[int], p: int) -> list[list[int]]:
    return [
        [(degree * row[j] * pow(int(x[j]), degree - 1, p)) % p for j in range(sys_.s)]
        for degree, _, row in sys_.rows()
    ]


def _rank_mod_p(matrix: list[list[int]], p: int) -> int:
    m = [row[:] for row in matrix]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] % p != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [(v * inv) % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] % p != 0:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _solve_mod_p(J: list[list[int]], rhs: list[int], p: int) -> Optional[list[int]]:
    """One solution of J x = rhs mod p (J has full row rank), or None."""
    r = len(J)
    s = len(J[0])
    m = [J[i][:] + [rhs[i] % p] for i in range(r)]
    pivots = []
    row = 0
    for col in range(s):
        piv = next((i for i in range(row, r) if m[i][col] % p != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = pow(m[row][col], -1, p)
        m[row] = [(v * inv) % p for v in m[row]]
        for i in range(r):
            if i != row and m[i][col] % p != 0:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
        if row == r:
            break
    if row < r and any(m[i][s] % p for i in range(row, r)):
        return None
    x = [0] * s
    for i, col in enumerate(pivots):
        x[col] = m[i][s] % p
    return x


def _valuation(n: int, p: int) -> Optional[int]:
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _gradient(sys_: DiagonalSystem, x: Sequence[int]) -> list[int]:
    (degree, _, row), = sys_.rows()
    return [degree * row[j] * int(x[j]) ** (degree - 1) for j in range(sys_.s)]


def _form_value(sys_: DiagonalSystem, x: Sequence[int]) -> int:
    (degree, _, row), = sys_.rows()
    return sum(row[j] * int(x[j]) ** degree for j in range(sys_.s))


def hensel_lift(sys_: DiagonalSystem, p: int, witness: Sequence[int], depth: int):
    """Lift a non-degenerate approximate solution to a solution mod
    p^depth.

    Single-equation systems use the quantitative Newton condition: with
    tau the smallest p-adic valuation among the partial derivatives, a
    point with F(x) = 0 mod p^(2 tau + 1) lifts one power per step.
    This is necessary at p = 2 for quadratics, where every derivative is
    even and the rank-mod-p test can never succeed.  Systems with r > 1
    use the classical full-rank-mod-p step (tau = 0).
    """
    x = [int(v) for v in witness]
    if sys_.num_equations == 1:
        grad = _gradient(sys_, x)
        vals = [_valuation(g, p) for g in grad]
        finite = [v for v in vals if v is not None]
        if not finite:
            return None
        tau = min(finite)
        jpos = vals.index(tau)
        f = _form_value(sys_, x)
        j = _valuation(f, p)
        j = depth + tau if j is None else j
        if j < 2 * tau + 1:
            return None
        target = depth + tau
        while j < target:
            f = _form_value(sys_, x)
            if f == 0:
                break
            u = (grad[jpos] // p**tau) % p
            t = (-(f // p**j) * pow(u, -1, p)) % p
            x[jpos] += p ** (j - tau) * t
            grad = _gradient(sys_, x)
            j += 1
        if _form_value(sys_, x) % p**depth:
            return None
        return tuple(v % p**depth for v in x)
    r = sys_.num_equations
    x = [v % p for v in x]
    for j in range(1, depth):
        q = p ** (j + 1)
        vals = _forms_mod(sys_, x, q)
        rhs = [(-v // p**j) % p for v in vals]
        J = _jacobian_mod(sys_, x, p)
        delta = _solve_mod_p(J, rhs, p)
        if delta is None:
            return None
        x = [(xi + p**j * di) % q for xi, di in zip(x, delta)]
    if any(v % p**depth for v in _forms_mod(sys_, x, p**depth)):
        return None
    return tuple(x)


def _padic_candidates(p: int, s: int, level: int, sample_budget: int, seed: int):
    if p ** (level * s) <= 2 * 10**6:
        return itertools.product(range(p**level), repeat=s)
    rng = np.random.Generator(np.random.Philox(key=np.uint64(seed)))
    return (tuple(int(v) for v in rng.integers(0, p**level, size=s))
            for _ in range(sample_budget))


def local_solubility_p(
    sys_: DiagonalSystem, p: int, depth: int = 3,
    sample_budget: int = 200_000, seed: int = 0,
) -> LocalWitness:
    """Search for a p-adic witness: a point where the Jacobian is
    non-degenerate and Newton lifting reaches a solution mod p^depth."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    r = sys_.num_equations
    if r == 1:
        # search mod p^level for F = 0 mod p^(2 tau + 1), raising the
        # level until the Newton condition can be met
        for level in range(1, 8):
            found_any = False
            for x in _padic_candidates(p, sys_.s, level, sample_budget, seed):
                if _form_value(sys_, x) % p**level:
                    continue
                found_any = True
                vals = [_valuation(g, p) for g in _gradient(sys_, x)]
                finite = [v for v in vals if v is not None]
                if not finite or 2 * min(finite) + 1 > level:
                    continue
                lifted = hensel_lift(sys_, p, x, depth)
                if lifted is not None:
                    return LocalWitness(True, lifted, depth,
                                        "non-degenerate p-adic point found")
            if not found_any and level >= 3:
                break
        return LocalWitness(False, None, 0, f"none found to depth {depth}")
    for x in _padic_candidates(p, sys_.s, 1, sample_budget, seed):
        if any(_forms_mod(sys_, x, p)):
            continue
        if _rank_mod_p(_jacobian_mod(sys_, x, p), p) == r:
            lifted = hensel_lift(sys_, p, x, depth)
            if lifted is not None:
                return LocalWitness(True, lifted, depth,
                                    "non-singular p-adic point found")
    return LocalWitness(False, None, 0, f"none found to depth {depth}")


def local_solubility_real(
    sys_: DiagonalSystem, starts: int = 50, seed: int = 0,
    tol: float = 1e-10, max_iter: int = 80,
) -> LocalWitness:
    """Damped Newton search for x in (-1, 1)^s with all forms < tol and
    full-rank Jacobian, using random linear slices to square the system."""
    rows = list(sys_.rows())
    r = len(rows)
    s = sys_.s
    coeffs = np.array([row for _, _, row in rows], dtype=np.float64)
    degrees = np.array([degree for degree, _, _ in rows])

    def forms(x):
        return np.array([c @ (x ** d) for c, d in zip(coeffs, degrees)])

    def jac(x):
        return np.array([c * d * x ** (d - 1) for c, d in zip(coeffs, degrees)])

    rng = np.random.Generator(np.random.Philox(key=np.uint64(seed)))
    for _ in range(starts):
        x0 = rng.uniform(-0.9, 0.9, size=s)
        A = rng.normal(size=(s - r, s)) if s > r else np.zeros((0, s))
        x = x0.copy()
        ok = False
        for _ in range(max_iter):
            F = forms(x)
            G = np.concatenate([F, A @ (x - x0)])
            if np.abs(F).max() < tol:
                ok = True
                break
            J = np.vstack([jac(x), A])
            try:
                step = np.linalg.solve(J, -G)
            except np.linalg.LinAlgError:
                break
            lam = 1.0
            base = np.linalg.norm(G)
            while lam > 1e-6:
                xn = x + lam * step
                Gn = np.concatenate([forms(xn), A @ (xn - x0)])
                if np.linalg.norm(Gn) < base:
                    break
                lam *= 0.5
            else:
                break
            x = x + lam * step
        if not ok:
            continue
        inside = bool(np.all(np.abs(x) < 1.0))
        rank = int(np.linalg.matrix_rank(jac(x), tol=1e-8))
        if inside and rank == r and np.abs(forms(x)).max() < tol:
            return LocalWitness(True, tuple(float(v) for v in x), 0,
                                "non-singular real point found")
    return LocalWitness(False, None, 0, f"no witness after {starts} starts")


# ----------------------------------------------------------------------
# End-to-end prediction
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PredictionReport:
    chi_infinity: SingularIntegralReport
    chi_p_reports: list
    prime_cutoff: int
    constant: float
    exponent: int
    caveats: list


def predict(
    sys_: DiagonalSystem,
    P0: int = 100,
    i_max: int = 6,
    tol: float = 1e-6,
    chi_inf_method: str = "auto",
    quad_Q: float = 256.0,
    T: float = 32.0,
    samples: int = 10**6,
    seed: int = 0,
    q_budget: int = 2 * 10**5,
) -> PredictionReport:
    """Predicted asymptotic constant and exponent for the homogeneous count."""
    if sys_.min_degree() < 2:
        raise ValueError("prediction requires all degrees >= 2")
    dc = derived_constants(sys_)
    if chi_inf_method == "auto":
        chi_inf_method = "quadrature" if dc.r == 1 else "schmidt"
    if chi_inf_method == "quadrature":
        chi_inf = chi_infinity_quadrature(sys_, Q=quad_Q)
    elif chi_inf_method == "schmidt":
        chi_inf = chi_infinity_schmidt(sys_, T=T, samples=samples, seed=seed)
    else:
        raise ValueError(f"unknown method {chi_inf_method!r}")
    caveats = [f"tail truncation at P0={P0}: factors at p > {P0} assumed 1"]
    # deep iteration only pays off for small p: the tail shrinks like a
    # power of p, so cap the modulus p^i by q_budget (never below i = 2)
    reports = []
    for p in primes_upto(P0):
        i_p = min(i_max, max(2, int(math.log(q_budget) / math.log(p))))
        reports.append(chi_p(sys_, p, i_max=i_p, tol=tol))
    loose = [rep.p for rep in reports if not rep.stabilized]
    if loose:
        caveats.append(
            "chi_p not stabilized to tolerance at p in "
            + "{" + ",".join(str(p) for p in loose) + "}"
        )
    real = local_solubility_real(sys_, seed=seed)
    if not real.found:
        caveats.append("no real witness found: constant may be zero")
    constant = chi_inf.value
    for rep in reports:
        constant *= rep.chi_p
    return PredictionReport(
        chi_infinity=chi_inf, chi_p_reports=reports, prime_cutoff=P0,
        constant=constant, exponent=sys_.s - dc.K, caveats=caveats,
    )


@dataclass(frozen=True)
class CompareRow:
    X: int
    count: int
    predicted: float
    ratio: Optional[float]   # None when the prediction degenerates


def compare(sys_: DiagonalSystem, X_list: Sequence[int], prediction: PredictionReport):
    """Exact counts against the predicted asymptotic, one row per X."""
    rows = []
    for X in sorted(X_list):
        rep = count_homogeneous(sys_, X)
        pred = prediction.constant * float(X) ** prediction.exponent if X > 0 else 0.0
        ratio = rep.count / pred if pred > 0 else None
        rows.append(CompareRow(X=X, count=rep.count, predicted=pred, ratio=ratio))
    return rows
