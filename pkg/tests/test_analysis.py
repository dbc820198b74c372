"""Tests for growth-rate fitting, conjecture ratios, and the certified
range report."""

import pytest

from diaglab.analysis import (
    conjecture_ratio,
    conjecture_table,
    established_ranges,
    fit_exponent,
)
from diaglab.systems import make_system

TEST_FORM = make_system(5, [(2, [1, 1, 1, -1, -1])])
K3U3 = make_system(3, [(2, [1, 1, 1]), (2, [1, -1, 2]), (2, [2, 1, -1]),
                       (3, [1, 1, 1])])


def test_fit_synthetic_power_law():
    xs = [2, 4, 8, 16, 32]
    fit = fit_exponent(xs, [7 * x**5 for x in xs])
    assert fit.slope == pytest.approx(5.0, abs=1e-9)
    assert fit.rms_residual < 1e-9


def test_fit_input_validation():
    with pytest.raises(ValueError):
        fit_exponent([1], [1])
    with pytest.raises(ValueError):
        fit_exponent([1, 2], [0, 5])
    with pytest.raises(ValueError):
        fit_exponent([1, 2], [5])


def test_conjecture_ratio_algebra():
    # diagonal-only count at the benchmark scale
    s, K, X = 3, 2, 10
    count = (2 * X + 1) ** s
    ratio = conjecture_ratio(count, s, K, X)
    assert ratio <= 3**s * X**s / float(X) ** (2 * s - K)
    with pytest.raises(ValueError):
        conjecture_ratio(count, s, K, 0)


def test_conjecture_table_rows():
    rows = conjecture_table(TEST_FORM, [2, 4])
    assert [r.X for r in rows] == [2, 4]
    for r in rows:
        assert r.ratio == pytest.approx(r.count / r.benchmark)


def test_ranges_test_form():
    verdict = established_ranges(TEST_FORM)
    assert verdict.applicable
    assert verdict.s_threshold == 5
    assert verdict.optimal_range
    assert verdict.asymptotic_expected


def test_ranges_k3u3_below_threshold():
    verdict = established_ranges(K3U3)
    assert verdict.s_actual == 3
    assert not verdict.optimal_range


def test_ranges_linear_system():
    linear = make_system(3, [(1, [1, 1, 1]), (2, [1, 2, -1])])
    verdict = established_ranges(linear)
    assert not verdict.asymptotic_expected
    assert any("linear" in n for n in verdict.notes)
