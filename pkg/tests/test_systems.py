"""Tests for the system data model, parsing, derived constants, and the
exact non-singularity checker."""

import itertools
import json
import random
from fractions import Fraction

import pytest

from diaglab.systems import (
    DiagonalSystem,
    SystemError_,
    bareiss_determinant,
    check_highly_non_singular,
    derived_constants,
    is_highly_non_singular,
    make_system,
    parse_system,
    select_columns,
    serialize_system,
    validate_system,
)

TEST_FORM = make_system(5, [(2, [1, 1, 1, -1, -1])])
K3U3 = make_system(3, [(2, [1, 1, 1]), (2, [1, -1, 2]), (2, [2, 1, -1]),
                       (3, [1, 1, 1])])


def test_round_trip():
    text = serialize_system(K3U3)
    again = parse_system(text)
    assert again == K3U3
    assert serialize_system(again) == text


def test_parse_orders_blocks():
    text = json.dumps({"s": 2, "equations": [
        {"degree": 3, "coeffs": [1, 2]},
        {"degree": 2, "coeffs": [1, -1]},
    ]})
    sys_ = parse_system(text)
    assert sys_.degrees == (2, 3)


@pytest.mark.parametrize("bad", [
    "not json",
    '{"s": 2}',
    '{"s": 0, "equations": [{"degree": 2, "coeffs": []}]}',
    '{"s": 2, "equations": [{"degree": 2, "coeffs": [1]}]}',
    '{"s": 2, "equations": [{"degree": 0, "coeffs": [1, 2]}]}',
    '{"s": 2, "equations": [{"degree": 2, "coeffs": [1, 1.5]}]}',
])
def test_parse_rejects_malformed(bad):
    with pytest.raises(SystemError_):
        parse_system(bad)


def test_coefficient_overflow_rejected():
    with pytest.raises(SystemError_):
        make_system(2, [(2, [2**63, 1])])


def test_digest_is_stable():
    assert TEST_FORM.digest() == parse_system(serialize_system(TEST_FORM)).digest()
    assert TEST_FORM.digest() != K3U3.digest()


def test_derived_constants_test_form():
    dc = derived_constants(TEST_FORM)
    assert (dc.r, dc.K, dc.u, dc.v, dc.k) == (1, 2, 1, 0, 2)
    assert dc.chain_degrees == ()


def test_derived_constants_k3u3():
    dc = derived_constants(K3U3)
    assert (dc.r, dc.K, dc.u, dc.v, dc.k) == (4, 9, 3, 1, 3)
    assert dc.chain_degrees == (3,)
    assert dc.t == 3 and dc.w == 0


def test_bareiss_matches_fraction_elimination():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 4)
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        det = bareiss_determinant(m)
        # reference: fraction-based Gaussian elimination
        a = [[Fraction(v) for v in row] for row in m]
        ref = Fraction(1)
        for col in range(n):
            piv = next((i for i in range(col, n) if a[i][col]), None)
            if piv is None:
                ref = Fraction(0)
                break
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                ref = -ref
            ref *= a[col][col]
            for i in range(col + 1, n):
                f = a[i][col] / a[col][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
        assert det == ref


def _oracle_hns(matrix):
    r = len(matrix)
    s = len(matrix[0])
    for cols in itertools.combinations(range(s), r):
        sub = [[row[c] for c in cols] for row in matrix]
        if bareiss_determinant(sub) == 0:
            return False
    return True


def test_checker_agrees_with_oracle():
    rng = random.Random(11)
    for _ in range(120):
        r = rng.randint(1, 3)
        s = rng.randint(r, 6)
        m = [[rng.randint(-3, 3) for _ in range(s)] for _ in range(r)]
        assert is_highly_non_singular(m) == _oracle_hns(m)


def test_checker_reports_bad_columns():
    rep = check_highly_non_singular([[1, 1, 2], [2, 2, 3]])
    assert not rep.verdict
    assert rep.bad_columns == (1, 2)


def test_checker_sampling_path():
    m = [[1, 2, 3, 5, 7, 11, 13, 17]]
    rep = check_highly_non_singular(m, max_subsets=4)
    assert rep.verdict and not rep.exhaustive


def test_select_columns():
    sub = select_columns(K3U3, [1, 3])
    assert sub.s == 2
    assert sub.block(2).coeffs[0] == (1, 1)
    assert sub.block(3).coeffs[0] == (1, 1)
    with pytest.raises(ValueError):
        select_columns(K3U3, [3, 1])


def test_validate_system_flags():
    rep = validate_system(TEST_FORM)
    assert rep.all_blocks_pass
    assert rep.degrees_ok_for_circle
    assert rep.s_ge_2K_plus_1

    dup = make_system(3, [(2, [1, 1, 2]), (2, [3, 3, 1])])
    dup_rep = validate_system(dup)
    assert not dup_rep.all_blocks_pass
    assert dup_rep.block_verdicts[2].bad_columns == (1, 2)

    linear = make_system(2, [(1, [1, 1]), (2, [1, -1])])
    assert not validate_system(linear).degrees_ok_for_circle
