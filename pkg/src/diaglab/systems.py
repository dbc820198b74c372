"""Data model for systems of diagonal equations.

A system consists of s variables and, for each degree l, an integer
coefficient matrix C^(l) whose row i gives the diagonal form

    c_{i,1} x_1^l + ... + c_{i,s} x_s^l.

Degree-1 blocks are accepted by the data model (they are needed for the
full Vinogradov moments and the auxiliary quadratic system), but the
circle-method pipelines require all degrees >= 2.

All validation here is exact integer arithmetic; determinants are
computed by fraction-free (Bareiss) elimination.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

#: cap on exhaustive column-subset enumeration; beyond this the
#: non-singularity checker samples subsets and reports a probabilistic pass
SUBSET_ENUMERATION_CAP = 10**6


class SystemError_(ValueError):
    """Raised for malformed or inconsistent system descriptions."""


@dataclass(frozen=True)
class EquationBlock:
    """All equations of a single degree: an r_l x s integer matrix."""

    degree: int
    coeffs: tuple[tuple[int, ...], ...]

    @property
    def num_equations(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class DiagonalSystem:
    """A diagonal system: variable count s plus one block per degree."""

    s: int
    blocks: tuple[EquationBlock, ...]

    def __post_init__(self):
        if self.s < 1:
            raise SystemError_("variable count s must be positive")
        seen = set()
        prev = 0
        for blk in self.blocks:
            if blk.degree < 1:
                raise SystemError_(f"degree {blk.degree} < 1")
            if blk.degree in seen:
                raise SystemError_(f"duplicate block for degree {blk.degree}")
            if blk.degree <= prev:
                raise SystemError_("blocks must be sorted by increasing degree")
            seen.add(blk.degree)
            prev = blk.degree
            if blk.num_equations < 1:
                raise SystemError_(f"degree-{blk.degree} block has no equations")
            for row in blk.coeffs:
                if len(row) != self.s:
                    raise SystemError_(
                        f"row length mismatch: degree {blk.degree} row has "
                        f"{len(row)} entries, expected s={self.s}"
                    )
                for c in row:
                    if not (INT64_MIN <= c <= INT64_MAX):
                        raise SystemError_("coefficient overflow: entries must fit in 64 bits")

    # -- block access -------------------------------------------------

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(blk.degree for blk in self.blocks)

    @property
    def max_degree(self) -> int:
        return self.blocks[-1].degree if self.blocks else 0

    def block(self, degree: int) -> Optional[EquationBlock]:
        for blk in self.blocks:
            if blk.degree == degree:
                return blk
        return None

    def r_l(self, degree: int) -> int:
        blk = self.block(degree)
        return blk.num_equations if blk is not None else 0

    @property
    def num_equations(self) -> int:
        """Total number of equations across all blocks (degree 1 included)."""
        return sum(blk.num_equations for blk in self.blocks)

    def rows(self):
        """Yield (degree, row_index, coefficient_row) in canonical order."""
        for blk in self.blocks:
            for i, row in enumerate(blk.coeffs):
                yield blk.degree, i, row

    def min_degree(self) -> int:
        return self.blocks[0].degree if self.blocks else 0

    def digest(self) -> str:
        """Stable hash of the canonical serialization, for report metadata."""
        return hashlib.sha256(serialize_system(self).encode()).hexdigest()[:16]


def make_system(s: int, equations: Sequence[tuple[int, Sequence[int]]]) -> DiagonalSystem:
    """Build a system from (degree, coefficient_row) pairs, grouping by degree."""
    by_degree: dict[int, list[tuple[int, ...]]] = {}
    for degree, row in equations:
        by_degree.setdefault(degree, []).append(tuple(int(c) for c in row))
    blocks = tuple(
        EquationBlock(degree, tuple(rows)) for degree, rows in sorted(by_degree.items())
    )
    return DiagonalSystem(s=s, blocks=blocks)


# ----------------------------------------------------------------------
# File format: JSON with fields "s" and "equations"
# ----------------------------------------------------------------------

def parse_system(text: str, strict: bool = False) -> DiagonalSystem:
    """Parse a system-description document.

    The document is JSON with an integer field ``s`` and a list
    ``equations`` of records ``{"degree": int, "coeffs": [int, ...]}``.
    With ``strict=True``, byte-identical duplicate (degree, row) records
    are rejected.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SystemError_(f"malformed document: {exc}") from exc
    if not isinstance(doc, dict) or "s" not in doc or "equations" not in doc:
        raise SystemError_("document must contain fields 's' and 'equations'")
    s = doc["s"]
    if not isinstance(s, int) or isinstance(s, bool) or s < 1:
        raise SystemError_("field 's' must be a positive integer")
    equations = doc["equations"]
    if not isinstance(equations, list) or not equations:
        raise SystemError_("field 'equations' must be a non-empty list")
    records = []
    for rec in equations:
        if not isinstance(rec, dict) or "degree" not in rec or "coeffs" not in rec:
            raise SystemError_("each equation needs fields 'degree' and 'coeffs'")
        degree = rec["degree"]
        coeffs = rec["coeffs"]
        if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
            raise SystemError_(f"degree must be an integer >= 1, got {degree!r}")
        if not isinstance(coeffs, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in coeffs
        ):
            raise SystemError_("coeffs must be a list of integers")
        records.append((degree, tuple(coeffs)))
    if strict and len(set(records)) != len(records):
        raise SystemError_("duplicate (degree, coefficients) record in strict mode")
    return make_system(s, records)


def serialize_system(sys_: DiagonalSystem) -> str:
    """Canonical serialization: blocks sorted by degree, row order preserved."""
    doc = {
        "s": sys_.s,
        "equations": [
            {"degree": degree, "coeffs": list(row)} for degree, _, row in sys_.rows()
        ],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def load_system(path: str, strict: bool = False) -> DiagonalSystem:
    with open(path, encoding="utf-8") as fh:
        return parse_system(fh.read(), strict=strict)


# ----------------------------------------------------------------------
# Derived constants
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class DerivedConstants:
    r: int          # total number of equations of degree >= 2
    K: int          # total degree, sum of l * r_l over all blocks
    kappa: int      # contribution of the degree >= 3 subsystems
    u: int          # number of quadratic equations (r_2)
    v: int          # number of cubic-or-higher chains (r_3)
    k: int          # maximal degree
    t: Optional[int]  # K/u when u >= 1 divides K, else None
    w: Optional[int]  # K mod u when u >= 1, else None
    chain_degrees: tuple[int, ...]  # degrees k_1 >= ... >= k_v of the deep chains


def chain_degrees(sys_: DiagonalSystem) -> tuple[int, ...]:
    """Degrees k_1 >= ... >= k_v (>= 3) of the missing-linear chains.

    For a superposition of Vinogradov-type systems without the linear
    slice, chain j has equations in every degree 3..k_j plus a quadratic,
    so k_j is recovered from the counts r_l via k_j = max{l : r_l >= j}.
    """
    v = sys_.r_l(3)
    out = []
    for j in range(1, v + 1):
        kj = max((blk.degree for blk in sys_.blocks if blk.degree >= 3
                  and blk.num_equations >= j), default=0)
        out.append(kj)
    return tuple(sorted(out, reverse=True))


def derived_constants(sys_: DiagonalSystem) -> DerivedConstants:
    r = sum(blk.num_equations for blk in sys_.blocks if blk.degree >= 2)
    K = sum(blk.degree * blk.num_equations for blk in sys_.blocks)
    u = sys_.r_l(2)
    v = sys_.r_l(3)
    chains = chain_degrees(sys_)
    kappa = sum(kj * (kj + 1) // 2 - 3 for kj in chains)
    t = K // u if u >= 1 and K % u == 0 else None
    w = K % u if u >= 1 else None
    return DerivedConstants(
        r=r, K=K, kappa=kappa, u=u, v=v, k=sys_.max_degree, t=t, w=w,
        chain_degrees=chains,
    )


# ----------------------------------------------------------------------
# Highly non-singular check (exact, fraction-free elimination)
# ----------------------------------------------------------------------

def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix by Bareiss elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [[int(x) for x in row] for row in matrix]
    sign = 1
    prev = 1
    for col in range(n - 1):
        # pivot search
        pivot_row = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot_row is None:
            return 0
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            sign = -sign
        for i in range(col + 1, n):
            for j in range(col + 1, n):
                m[i][j] = (m[i][j] * m[col][col] - m[i][col] * m[col][j]) // prev
            m[i][col] = 0
        prev = m[col][col]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class NonSingularityReport:
    verdict: bool
    exhaustive: bool           # False when subset enumeration was sampled
    subsets_checked: int
    bad_columns: Optional[tuple[int, ...]]  # 1-based singular column set, if any


def check_highly_non_singular(
    matrix: Sequence[Sequence[int]],
    max_subsets: int = SUBSET_ENUMERATION_CAP,
    seed: int = 0,
) -> NonSingularityReport:
    """Check that every r-column submatrix of an r x s matrix is non-singular.

    When C(s, r) exceeds ``max_subsets`` the check samples that many
    subsets uniformly (seeded) and reports a probabilistic verdict.
    """
    rows = [list(row) for row in matrix]
    r = len(rows)
    s = len(rows[0]) if rows else 0
    if r < 1:
        raise SystemError_("matrix must have at least one row")
    if s < r:
        raise SystemError_("too few columns: need s >= r")
    total = math.comb(s, r)
    if total <= max_subsets:
        subsets = itertools.combinations(range(s), r)
        exhaustive = True
        n_checked = total
    else:
        rng = random.Random(seed)
        subsets = (tuple(sorted(rng.sample(range(s), r))) for _ in range(max_subsets))
        exhaustive = False
        n_checked = max_subsets
    for cols in subsets:
        sub = [[row[c] for c in cols] for row in rows]
        if bareiss_determinant(sub) == 0:
            return NonSingularityReport(
                verdict=False, exhaustive=exhaustive,
                subsets_checked=n_checked,
                bad_columns=tuple(c + 1 for c in cols),
            )
    return NonSingularityReport(
        verdict=True, exhaustive=exhaustive, subsets_checked=n_checked,
        bad_columns=None,
    )


def is_highly_non_singular(matrix: Sequence[Sequence[int]], **kwargs) -> bool:
    return check_highly_non_singular(matrix, **kwargs).verdict


# ----------------------------------------------------------------------
# Column selection
# ----------------------------------------------------------------------

def select_columns(sys_: DiagonalSystem, columns: Sequence[int]) -> DiagonalSystem:
    """Restrict the system to the 1-based column indices in ``columns``.

    Indices must be strictly increasing and valid; the result has
    s = len(columns) with the same blocks restricted to those columns.
    """
    cols = list(columns)
    if not cols:
        raise SystemError_("column selection must be non-empty")
    if any(c < 1 or c > sys_.s for c in cols):
        raise SystemError_(f"invalid column index in {cols}; s={sys_.s}")
    if any(b <= a for a, b in zip(cols, cols[1:])):
        raise SystemError_("column indices must be strictly increasing")
    blocks = tuple(
        EquationBlock(
            blk.degree,
            tuple(tuple(row[c - 1] for c in cols) for row in blk.coeffs),
        )
        for blk in sys_.blocks
    )
    return DiagonalSystem(s=len(cols), blocks=blocks)


# ----------------------------------------------------------------------
# Validation report
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    block_verdicts: dict      # degree -> NonSingularityReport
    all_blocks_pass: bool
    degrees_ok_for_circle: bool   # every degree >= 2
    u_ge_2v: bool
    u_divides_K: bool
    exists_u0: bool           # some u0 >= max(2v, 1) with u0 | kappa and u >= u0
    u0_witness: Optional[int]
    s_ge_2K_plus_1: bool
    cubic_quadratic_shape: bool   # u >= 3v and s >= 6v + 4u + 1
    constants: DerivedConstants


def validate_system(sys_: DiagonalSystem, max_subsets: int = SUBSET_ENUMERATION_CAP) -> ValidationReport:
    """Check the non-singularity of each block and the main hypotheses."""
    dc = derived_constants(sys_)
    verdicts = {}
    for blk in sys_.blocks:
        if blk.num_equations <= sys_.s:
            verdicts[blk.degree] = check_highly_non_singular(blk.coeffs, max_subsets=max_subsets)
        else:
            verdicts[blk.degree] = NonSingularityReport(
                verdict=False, exhaustive=True, subsets_checked=0, bad_columns=None
            )
    all_pass = all(rep.verdict for rep in verdicts.values())
    u, v, K, kappa = dc.u, dc.v, dc.K, dc.kappa
    u0_witness = None
    if kappa > 0:
        for u0 in range(max(2 * v, 1), u + 1):
            if kappa % u0 == 0:
                u0_witness = u0
                break
    elif kappa == 0 and u >= max(2 * v, 1):
        # no deep chains: any u0 = u works vacuously
        u0_witness = u
    return ValidationReport(
        block_verdicts=verdicts,
        all_blocks_pass=all_pass,
        degrees_ok_for_circle=sys_.min_degree() >= 2,
        u_ge_2v=u >= 2 * v,
        u_divides_K=u >= 1 and K % u == 0,
        exists_u0=u0_witness is not None,
        u0_witness=u0_witness,
        s_ge_2K_plus_1=sys_.s >= 2 * K + 1,
        cubic_quadratic_shape=(u >= 3 * v and sys_.s >= 6 * v + 4 * u + 1),
        constants=dc,
    )
