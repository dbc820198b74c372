"""Growth-rate diagnostics: log-log exponent fits, comparison of counts
against the conjectured main plus diagonal terms, and a report of which
mean value ranges the implemented theory certifies for a given system.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .counting import count_difference, count_homogeneous
from .systems import DiagonalSystem, derived_constants, validate_system


@dataclass(frozen=True)
class ExponentFit:
    X_values: tuple
    counts: tuple
    slope: float
    intercept: float
    rms_residual: float


def fit_exponent(X_values: Sequence[int], counts: Sequence[int]) -> ExponentFit:
    """Least-squares slope of log N against log X."""
    if len(X_values) != len(counts):
        raise ValueError("length mismatch")
    if len(X_values) < 2:
        raise ValueError("need at least two points")
    if any(x <= 0 for x in X_values) or any(c <= 0 for c in counts):
        raise ValueError("fit requires positive X and positive counts")
    lx = np.log(np.asarray(X_values, dtype=float))
    ly = np.array([float(np.log(float(c))) for c in counts])
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    return ExponentFit(
        X_values=tuple(int(x) for x in X_values),
        counts=tuple(int(c) for c in counts),
        slope=float(slope), intercept=float(intercept),
        rms_residual=float(np.sqrt(np.mean(resid**2))),
    )


@dataclass(frozen=True)
class ConjectureRow:
    X: int
    count: int
    benchmark: float   # X^s + X^{2s - K}
    ratio: float


def conjecture_ratio(count: int, s: int, K: int, X: int) -> float:
    """A difference-mode count divided by the conjectured benchmark
    X^s + X^{2s-K} (diagonal term plus main term)."""
    if X < 1:
        raise ValueError("X must be >= 1")
    return count / (float(X) ** s + float(X) ** (2 * s - K))


def conjecture_table(sys_: DiagonalSystem, X_values: Sequence[int]) -> list:
    """Difference-mode counts with their conjecture ratios, one row per X."""
    dc = derived_constants(sys_)
    rows = []
    for X in sorted(X_values):
        rep = count_difference(sys_, X)
        bench = float(X) ** sys_.s + float(X) ** (2 * sys_.s - dc.K)
        rows.append(ConjectureRow(X=X, count=rep.count,
                                  benchmark=bench, ratio=rep.count / bench))
    return rows


@dataclass(frozen=True)
class RangeVerdict:
    applicable: bool            # cubic plus quadratics shape, valid blocks
    s_threshold: Optional[int]  # smallest s with the optimal mean value bound
    s_actual: int
    optimal_range: bool         # s at or above threshold
    asymptotic_expected: bool   # s >= 2K + 1, degrees >= 2
    notes: tuple


def established_ranges(sys_: DiagonalSystem) -> RangeVerdict:
    """Which regimes the implemented estimates certify for this system.

    The optimal mean value bound applies to one cubic equation together
    with r - 1 quadratics once s >= 2K + 1 where K is the sum of degrees,
    provided the coefficient matrix is highly non-singular.
    """
    report = validate_system(sys_)
    dc = report.constants
    notes = []
    applicable = bool(report.cubic_quadratic_shape and report.all_blocks_pass)
    if not report.all_blocks_pass:
        notes.append("coefficient matrix fails the non-singularity check")
    if not report.cubic_quadratic_shape:
        notes.append("not of the shape one cubic plus quadratics")
    threshold = 2 * dc.K + 1 if applicable else None
    optimal = applicable and sys_.s >= threshold
    if applicable and not optimal:
        notes.append(f"s = {sys_.s} below the optimal-range threshold {threshold}")
    asym = bool(report.s_ge_2K_plus_1 and report.degrees_ok_for_circle
                and report.all_blocks_pass)
    if not report.degrees_ok_for_circle:
        notes.append("linear equations present: circle-method prediction not applicable")
    return RangeVerdict(
        applicable=applicable, s_threshold=threshold, s_actual=sys_.s,
        optimal_range=optimal, asymptotic_expected=asym, notes=tuple(notes),
    )
