"""Exponential sums and oscillatory integrals for the circle method.

Finite sums are evaluated exactly in double precision (compensated
accumulation via math.fsum); the oscillatory integral over [-X, X] uses
composite Gauss-Legendre quadrature with panel count tied to the size of
the phase derivative, doubled until successive values agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .systems import DiagonalSystem

TWO_PI = 2.0 * math.pi

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class ComplexSample:
    value: complex
    error: float = 0.0


def reduce_mod_one(x: float) -> float:
    return float(x) % 1.0


def _fsum_complex(terms: np.ndarray) -> complex:
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


# ----------------------------------------------------------------------
# One-variable sums
# ----------------------------------------------------------------------

def eval_f(phases: Sequence[float], X: int) -> ComplexSample:
    """Sum over |x| <= X of e(a1 x + a2 x^2 + ... + al x^l), with
    phases = (a1, ..., al)."""
    if X < 0:
        raise ValueError("X must be non-negative")
    x = np.arange(-X, X + 1, dtype=np.float64)
    phase = np.zeros_like(x)
    xp = np.ones_like(x)
    for a in phases:
        xp = xp * x
        phase += reduce_mod_one(a) * xp
    return ComplexSample(_fsum_complex(np.exp(2j * np.pi * phase)))


def eval_g(phases: Sequence[float], X: int) -> ComplexSample:
    """As eval_f but with no linear term: phases = (a2, ..., al)."""
    return eval_f((0.0,) + tuple(phases), X)


def eval_K(phases: Sequence[float], X: int, H: int) -> ComplexSample:
    """Double sum over |h| <= H, |z| <= X of
    e(h a1 + 2 h z a2 + ... + l h z^{l-1} al), phases = (a1, ..., al)."""
    if X < 0 or H < 0:
        raise ValueError("X and H must be non-negative")
    h = np.arange(-H, H + 1, dtype=np.float64)[:, None]
    z = np.arange(-X, X + 1, dtype=np.float64)[None, :]
    phase = np.zeros((2 * H + 1, 2 * X + 1))
    zp = np.ones_like(z)
    for l, a in enumerate(phases, start=1):
        phase = phase + reduce_mod_one(a) * l * h * zp
        zp = zp * z
    return ComplexSample(_fsum_complex(np.exp(2j * np.pi * phase).ravel()))


# ----------------------------------------------------------------------
# Phase transforms
# ----------------------------------------------------------------------

def gamma_transform(sys_: DiagonalSystem, phases: dict) -> dict:
    """Per-variable combined phases: for each degree l,
    gamma_j = sum_i c_{i,j} alpha_i, j = 1..s.

    ``phases`` maps degree -> sequence of r_l phase values; the result
    maps degree -> numpy array of length s.
    """
    out = {}
    for blk in sys_.blocks:
        alpha = phases.get(blk.degree)
        if alpha is None or len(alpha) != blk.num_equations:
            raise ValueError(f"phase shape mismatch at degree {blk.degree}")
        C = np.array(blk.coeffs, dtype=np.float64)
        out[blk.degree] = C.T @ np.asarray(alpha, dtype=np.float64)
    return out


@dataclass(frozen=True)
class RationalPoint:
    """A rational phase point a/q with 1 <= a <= q and gcd(q, all a) = 1."""
    q: int
    a: dict  # degree -> tuple of integer numerators, one per equation

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be positive")
        entries = [x for vals in self.a.values() for x in vals]
        if any(not 1 <= x <= self.q for x in entries):
            raise ValueError("numerators must satisfy 1 <= a <= q")
        if math.gcd(self.q, *entries) != 1 and self.q > 1:
            raise ValueError("gcd(q, a) must be 1")


def lambda_theta(sys_: DiagonalSystem, point: RationalPoint, beta: dict):
    """Integer combinations Lambda_j = sum_i c_{i,j} a_i (exact) and real
    offsets theta_j = sum_i c_{i,j} beta_i, per degree."""
    lam = {}
    theta = {}
    for blk in sys_.blocks:
        a = point.a.get(blk.degree)
        b = beta.get(blk.degree, tuple(0.0 for _ in range(blk.num_equations)))
        if a is None or len(a) != blk.num_equations or len(b) != blk.num_equations:
            raise ValueError(f"shape mismatch at degree {blk.degree}")
        lam[blk.degree] = tuple(
            sum(blk.coeffs[i][j] * a[i] for i in range(blk.num_equations))
            for j in range(sys_.s)
        )
        theta[blk.degree] = tuple(
            sum(blk.coeffs[i][j] * b[i] for i in range(blk.num_equations))
            for j in range(sys_.s)
        )
    return lam, theta


# ----------------------------------------------------------------------
# Complete sums mod q
# ----------------------------------------------------------------------

def eval_S(q: int, a: Sequence[int]) -> complex:
    """Complete exponential sum sum_{x=1}^q e((a2 x^2 + ... + ak x^k)/q),
    with a = (a2, ..., ak)."""
    if q < 1:
        raise ValueError("q must be positive")
    roots = np.exp(2j * np.pi * np.arange(q) / q)
    total = 0j
    for x in range(1, q + 1):
        expo = 0
        for l, al in enumerate(a, start=2):
            expo = (expo + al * pow(x, l, q)) % q
        total += roots[expo]
    return complex(total)


def weyl_ratio_S(q: int, a: Sequence[int]) -> float:
    """|S_k(q, a)| divided by its classical bound shape
    gcd(q, a)^{1/k} q^{1 - 1/k}; an empirical bound monitor."""
    if q < 2:
        raise ValueError("q must be >= 2")
    k = len(a) + 1
    g = math.gcd(q, *[int(x) for x in a])
    bound = g ** (1.0 / k) * q ** (1.0 - 1.0 / k)
    return abs(eval_S(q, a)) / bound


def weyl_ratio_max(q: int, k: int) -> float:
    """Maximum of weyl_ratio_S(q, a) over all numerator tuples with
    gcd(q, a) = 1, computed in one pass.

    The complete sum S(q, a) is the (k-1)-dimensional discrete Fourier
    transform, at frequency -a, of the table counting x mod q by its
    residue vector (x^2, ..., x^k); one FFT covers every tuple.
    """
    if q < 2:
        raise ValueError("q must be >= 2")
    if not 2 <= k <= 3:
        raise ValueError("supported degrees: k in {2, 3}")
    xs = np.arange(q, dtype=np.int64)
    if k == 2:
        table = np.zeros(q)
        np.add.at(table, (xs * xs) % q, 1.0)
        mags = np.abs(np.fft.fft(table))
        a_ok = np.array([math.gcd(q, a) == 1 for a in range(q)])
        g = None
    else:
        table = np.zeros((q, q))
        np.add.at(table, ((xs * xs) % q, (xs * xs % q) * xs % q), 1.0)
        mags = np.abs(np.fft.fft2(table))
        gcds = np.gcd.outer(np.gcd(np.arange(q), q), np.arange(q))
        a_ok = np.gcd(gcds, q) == 1
        a_ok[0, 0] = q == 1
    bound = q ** (1.0 - 1.0 / k)
    return float(mags[a_ok].max() / bound)


# ----------------------------------------------------------------------
# Oscillatory integral v(beta; X)
# ----------------------------------------------------------------------

def _v_on_panels(betas: np.ndarray, X: float, panels: int) -> np.ndarray:
    """Gauss-Legendre evaluation of the oscillatory integral for a batch
    of phase rows (shape (m, k-1), degrees 2..k)."""
    edges = np.linspace(-X, X, panels + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1] - edges[0])
    z = (mids[:, None] + half * _GL_NODES[None, :]).ravel()  # (panels*16,)
    w = np.tile(half * _GL_WEIGHTS, panels)
    phase = np.zeros((len(betas), len(z)))
    zp = z.copy()
    for col in range(betas.shape[1]):
        zp = zp * z
        phase += betas[:, col][:, None] * zp[None, :]
    return (np.exp(2j * np.pi * phase) * w[None, :]).sum(axis=1)


def eval_v_batch(betas: np.ndarray, X: float, tol: float = 1e-8,
                 max_panel_evals: int = 4 * 10**6):
    """Vectorized eval_v over rows of ``betas``; returns (values, errors)."""
    betas = np.atleast_2d(np.asarray(betas, dtype=np.float64))
    sizes = np.abs(betas) * (X ** np.arange(2, 2 + betas.shape[1]))[None, :]
    panels = max(4, int(math.ceil(2.0 * (1.0 + sizes.sum(axis=1).max()))))
    if panels * 16 * len(betas) > max_panel_evals:
        raise QuadratureError("tolerance unreachable within panel budget")
    prev = _v_on_panels(betas, X, panels)
    while True:
        panels *= 2
        if panels * 16 * len(betas) > max_panel_evals and panels > 8:
            raise QuadratureError("tolerance unreachable within panel budget")
        cur = _v_on_panels(betas, X, panels)
        err = np.abs(cur - prev)
        if err.max() < tol:
            return cur, err
        prev = cur


def eval_v(betas: Sequence[float], X: float, tol: float = 1e-8) -> ComplexSample:
    """Oscillatory integral over [-X, X] of e(b2 z^2 + ... + bk z^k),
    betas = (b2, ..., bk), with an a-posteriori error estimate."""
    if X <= 0:
        raise ValueError("X must be positive")
    vals, errs = eval_v_batch(np.array([list(betas)]), X, tol)
    return ComplexSample(complex(vals[0]), float(errs[0]))


def decay_ratio_v(betas: Sequence[float], X: float, tol: float = 1e-8) -> float:
    """|v(beta; X)| * (1 + sum_l |b_l| X^l)^{1/k} / X: an empirical
    monitor for the stationary-phase decay bound."""
    k = len(betas) + 1
    size = 1.0 + sum(abs(b) * X**l for l, b in enumerate(betas, start=2))
    return abs(eval_v(betas, X, tol).value) * size ** (1.0 / k) / X


# ----------------------------------------------------------------------
# Major-arc approximation of the one-variable sum
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class MajorArcComparison:
    approx: ComplexSample
    exact: ComplexSample
    residual: float


def major_arc_approx(
    sys_: DiagonalSystem,
    j: int,
    point: RationalPoint,
    beta: dict,
    X: int,
    Q: float,
) -> MajorArcComparison:
    """Compare the exact one-variable sum at gamma_j = Lambda_j/q + theta_j
    with its major-arc approximation q^{-1} S(q, Lambda_j) v(theta_j; X).

    Requires alpha = a/q + beta to lie in the major-arc box of cutoff Q
    at scale X (|beta_i| <= Q X^{-l}, q <= Q).
    """
    if point.q > Q:
        raise ValueError("point outside the major arc: q > Q")
    for blk in sys_.blocks:
        b = beta.get(blk.degree, tuple(0.0 for _ in range(blk.num_equations)))
        if any(abs(x) > Q * X ** (-blk.degree) + 1e-15 for x in b):
            raise ValueError("point outside the major arc: beta box violated")
    lam, theta = lambda_theta(sys_, point, beta)
    degrees = [blk.degree for blk in sys_.blocks]
    kmax = max(degrees)
    lam_j = [0] * (kmax - 1)
    th_j = [0.0] * (kmax - 1)
    gam_j = [0.0] * (kmax - 1)
    for l in degrees:
        lam_j[l - 2] = lam[l][j - 1]
        th_j[l - 2] = theta[l][j - 1]
        gam_j[l - 2] = lam[l][j - 1] / point.q + theta[l][j - 1]
    S = eval_S(point.q, lam_j)
    v = eval_v(th_j, float(X))
    approx = S / point.q * v.value
    exact = eval_g(gam_j, X)
    return MajorArcComparison(
        approx=ComplexSample(approx, v.error),
        exact=exact,
        residual=abs(exact.value - approx),
    )
