"""Tests for exponential sums, oscillatory integrals, and the major-arc
approximation of the one-variable generating sum."""

import cmath
import math
import random

import numpy as np
import pytest

from diaglab.expsums import (
    QuadratureError,
    RationalPoint,
    decay_ratio_v,
    eval_K,
    eval_S,
    eval_f,
    eval_g,
    eval_v,
    gamma_transform,
    lambda_theta,
    major_arc_approx,
    weyl_ratio_S,
    weyl_ratio_max,
)
from diaglab.systems import make_system

TEST_FORM = make_system(5, [(2, [1, 1, 1, -1, -1])])


def test_trivial_phase_identities():
    for X in (0, 1, 7):
        assert eval_f((0.0, 0.0), X).value == pytest.approx(2 * X + 1)
        assert eval_g((0.0,), X).value == pytest.approx(2 * X + 1)
    assert eval_K((0.0, 0.0), 3, 5).value == pytest.approx(11 * 7)
    assert eval_S(1, (1,)) == pytest.approx(1.0)


def _brute_f(phases, X):
    return sum(cmath.exp(2j * math.pi * sum(a * x**l for l, a in
                                            enumerate(phases, start=1)))
               for x in range(-X, X + 1))


def test_f_matches_brute_force():
    rng = random.Random(5)
    for _ in range(10):
        phases = [rng.uniform(0, 1) for _ in range(rng.randint(1, 3))]
        X = rng.randint(1, 30)
        assert eval_f(phases, X).value == pytest.approx(_brute_f(phases, X),
                                                        abs=1e-9)


def test_K_matches_brute_force():
    rng = random.Random(6)
    for _ in range(5):
        phases = [rng.uniform(0, 1) for _ in range(2)]
        X, H = rng.randint(1, 8), rng.randint(1, 8)
        ref = 0j
        for h in range(-H, H + 1):
            for z in range(-X, X + 1):
                expo = phases[0] * h
                expo += sum(l * h * z ** (l - 1) * phases[l - 1]
                            for l in range(2, len(phases) + 1))
                ref += cmath.exp(2j * math.pi * expo)
        assert eval_K(phases, X, H).value == pytest.approx(ref, abs=1e-9)


def test_gamma_transform_linearity():
    phases = {2: (0.3,)}
    g = gamma_transform(TEST_FORM, phases)
    assert np.allclose(g[2], [0.3, 0.3, 0.3, -0.3, -0.3])


def test_lambda_theta_consistency():
    point = RationalPoint(q=4, a={2: (3,)})
    beta = {2: (1e-3,)}
    lam, theta = lambda_theta(TEST_FORM, point, beta)
    assert lam[2] == (3, 3, 3, -3, -3)
    assert np.allclose(theta[2], [1e-3, 1e-3, 1e-3, -1e-3, -1e-3])


def test_gauss_sum_modulus():
    # |S(q, a)| = sqrt(q) for odd prime q and a coprime to q
    for q in (3, 5, 7, 11, 13, 97):
        for a in (1, 2, q - 1):
            assert abs(eval_S(q, (a,))) == pytest.approx(math.sqrt(q), rel=1e-9)
            assert weyl_ratio_S(q, (a,)) == pytest.approx(1.0, rel=1e-9)


def test_S_degenerate_numerators():
    q = 6
    assert eval_S(q, (q, q)) == pytest.approx(q)


def test_weyl_ratio_max_dominates_samples():
    rng = random.Random(8)
    for _ in range(20):
        q = rng.randint(2, 40)
        a = (rng.randint(1, q), rng.randint(1, q))
        if math.gcd(q, *a) != 1:
            continue
        assert weyl_ratio_S(q, a) <= weyl_ratio_max(q, 3) + 1e-9


def test_v_against_fine_riemann_grid():
    rng = random.Random(9)
    for _ in range(5):
        betas = [rng.uniform(-2, 2) for _ in range(rng.randint(1, 2))]
        z = np.linspace(-1, 1, 200001)
        phase = sum(b * z ** l for l, b in enumerate(betas, start=2))
        ref = np.trapezoid(np.exp(2j * np.pi * phase), z)
        assert eval_v(betas, 1.0).value == pytest.approx(ref, abs=1e-6)


def test_v_zero_phase():
    assert eval_v((0.0,), 3.0).value == pytest.approx(6.0)


def test_v_budget_guard():
    with pytest.raises(QuadratureError):
        eval_v((1e9,), 1.0, tol=1e-14)


def test_decay_ratio_log_grid():
    # documented scan: fixed direction, |beta| X^k up to 1e4
    for k, direction in ((2, (1.0,)), (3, (0.5, 1.0))):
        for mag in np.logspace(0, 4, 9):
            betas = tuple(mag * d for d in direction)
            assert decay_ratio_v(betas, 1.0) <= 10.0


def test_major_arc_residual_small():
    point = RationalPoint(q=3, a={2: (2,)})
    comp = major_arc_approx(TEST_FORM, 1, point, {2: (1e-4,)}, 50.0, 3.0)
    assert comp.residual <= 50 * 3.0**2
    assert abs(comp.exact.value) > 0


def test_major_arc_rejects_minor_arc_point():
    point = RationalPoint(q=3, a={2: (2,)})
    with pytest.raises(ValueError):
        major_arc_approx(TEST_FORM, 1, point, {2: (0.3,)}, 50.0, 3.0)


def test_rational_point_invariants():
    with pytest.raises(ValueError):
        RationalPoint(q=4, a={2: (2,)})   # gcd(4, 2) != 1
    with pytest.raises(ValueError):
        RationalPoint(q=4, a={2: (5,)})   # numerator out of range
