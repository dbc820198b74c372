"""Acceptance suite: the ten headline checks, one test per criterion.

Each test prints a single PASS/FAIL line (run pytest with -s to see
them).  Thresholds marked "chosen" are fixed constants for this
artifact, standing in for asymptotic inequalities with unquantified
constants; they are documented in the README.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from diaglab.analysis import conjecture_ratio, fit_exponent
from diaglab.circle import (
    A_count,
    A_exp,
    M_count,
    chi_infinity_quadrature,
    chi_infinity_schmidt,
    chi_p,
    compare,
    local_solubility_p,
    predict,
)
from diaglab.cli import main as cli_main
from diaglab.counting import (
    aux_quadratic_bruteforce,
    aux_quadratic_oracle,
    count_aux_quadratic,
    count_difference,
    count_homogeneous,
    count_vinogradov,
    enumerate_oracle,
)
from diaglab.expsums import (
    RationalPoint,
    decay_ratio_v,
    eval_K,
    eval_S,
    eval_f,
    eval_g,
    major_arc_approx,
    weyl_ratio_S,
    weyl_ratio_max,
)
from diaglab.systems import make_system

TEST_FORM = make_system(5, [(2, [1, 1, 1, -1, -1])])
TEST_COEFFS = (1, 1, 1, -1, -1)


def _report(name, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    print(f"{tag}: {name}" + (f" ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


def _random_instance(rng):
    s = rng.randint(1, 4)
    degrees = sorted(rng.sample([1, 2, 3], rng.randint(1, 2)))
    eqs = [(l, [rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(s)])
           for l in degrees]
    # keep the difference-mode oracle grid below ~6e6 points
    X = rng.randint(1, 5)
    while (2 * X + 1) ** (2 * s) > 6 * 10**6:
        X -= 1
    return make_system(s, eqs), X


def test_acceptance_01_oracle_equivalence():
    rng = random.Random(0)
    t0 = time.time()
    for _ in range(50):
        sys_, X = _random_instance(rng)
        hom = count_homogeneous(sys_, X).count
        dif = count_difference(sys_, X).count
        assert hom == enumerate_oracle(sys_, X, mode="homogeneous").count
        assert dif == enumerate_oracle(sys_, X, mode="difference").count
    dt = time.time() - t0
    _report("oracle equivalence on 50 seeded systems", dt < 60,
            f"{dt:.1f}s")


def test_acceptance_02_closed_forms():
    quad1 = make_system(1, [(2, [1])])
    ok = all(count_difference(quad1, X).count == 4 * X + 1 for X in range(6))
    ok &= all(count_vinogradov(1, l, X).count == 2 * X + 1
              for l in (1, 2, 3) for X in (0, 3, 9))
    ok &= abs(eval_f((0.0, 0.0), 11).value - 23) < 1e-12
    ok &= abs(eval_g((0.0,), 11).value - 23) < 1e-12
    ok &= abs(eval_K((0.0, 0.0), 4, 3).value - 7 * 9) < 1e-12
    ok &= abs(eval_S(1, (1, 1)) - 1) < 1e-12
    ok &= A_count(TEST_FORM, 1) == 1
    _report("closed-form identities", ok)


def test_acceptance_03_aux_quadratic_system():
    t0 = time.time()
    ok = True
    detail = []
    for X, H in ((6, 6), (10, 10), (20, 40)):
        count = count_aux_quadratic(X, H).count
        oracle = aux_quadratic_oracle(X, H)
        bound = 100 * X**2 * (X + H) ** 1.1   # chosen constant
        ok &= count == oracle and count <= bound
        detail.append(f"({X},{H})={count}")
    # spot-check the algebraic oracle against blind enumeration
    ok &= aux_quadratic_oracle(6, 6) == aux_quadratic_bruteforce(6, 6)
    dt = time.time() - t0
    _report("auxiliary quadratic system vs oracle", ok and dt < 30,
            ", ".join(detail) + f", {dt:.1f}s")


def test_acceptance_04_singular_series_cross_method():
    worst = max(abs(A_exp(TEST_FORM, q) - float(A_count(TEST_FORM, q)))
                for q in range(1, 51))
    ok = worst <= 1e-9
    for q1 in range(2, 13):
        for q2 in range(q1 + 1, 13):
            if math.gcd(q1, q2) == 1:
                ok &= (A_count(TEST_FORM, q1 * q2)
                       == A_count(TEST_FORM, q1) * A_count(TEST_FORM, q2))
    for p in (2, 3, 5):
        h = 1
        while p ** (h + 1) <= 243:
            h += 1
        lhs = sum(A_count(TEST_FORM, p**i) for i in range(h + 1))
        ok &= lhs == Fraction(M_count(TEST_FORM, p**h), (p**h) ** 4)
    _report("singular series cross-method and identities", ok,
            f"max |A_exp - A_count| = {worst:.2e}")


def test_acceptance_05_chi_p_stabilization():
    t0 = time.time()
    ok = True
    detail = []
    for p in (2, 3, 5, 7):
        rep = chi_p(TEST_FORM, p, i_max=6, tol=1e-6)
        ok &= rep.stabilized and rep.i_used <= 6
        wit = local_solubility_p(TEST_FORM, p, depth=3)
        ok &= wit.found
        detail.append(f"chi_{p}={rep.chi_p:.6f}@i{rep.i_used}")
    dt = time.time() - t0
    _report("chi_p stabilization and p-adic witnesses", ok and dt < 60,
            ", ".join(detail) + f", {dt:.1f}s")


def test_acceptance_06_singular_integral_cross_method():
    quad = chi_infinity_quadrature(TEST_FORM, Q=128.0, tol=1e-6)
    deviations = []
    agree = None
    for T in (8.0, 16.0, 32.0):
        mc = chi_infinity_schmidt(TEST_FORM, T=T, samples=10**8, seed=0)
        deviations.append(abs(mc.value - quad.value))
        if T == 32.0:
            agree = abs(mc.value - quad.value) <= mc.error + quad.error
    monotone = deviations[0] > deviations[1] > deviations[2]
    _report("singular integral quadrature vs weighted-volume Monte Carlo",
            bool(agree and monotone),
            f"chi_inf={quad.value:.4f}, deviations="
            + "/".join(f"{d:.4f}" for d in deviations))


def test_acceptance_07_end_to_end_asymptotic():
    t0 = time.time()
    rep = predict(TEST_FORM, P0=100, i_max=6, chi_inf_method="quadrature",
                  quad_Q=128.0)
    row = compare(TEST_FORM, [512], rep)[0]
    dt = time.time() - t0
    ok = abs(row.ratio - 1.0) <= 0.10 and dt <= 600
    _report("end-to-end asymptotic at X=512", ok,
            f"N={row.count}, C={rep.constant:.4f}, ratio={row.ratio:.4f}, "
            f"{dt:.0f}s")


def test_acceptance_08_exponent_fits():
    quad3 = make_system(3, [(2, [1, 1, 1])])
    xs = [16, 32, 64, 128, 256]
    fit = fit_exponent(xs, [count_difference(quad3, X).count for X in xs])
    ok = 3.7 <= fit.slope <= 4.2

    k3u3 = make_system(3, [(2, [1, 1, 1]), (2, [1, -1, 2]), (2, [2, 1, -1]),
                           (3, [1, 1, 1])])
    counts = {X: count_difference(k3u3, X).count
              for X in (4, 5, 6, 7, 8, 10, 12, 14)}
    worst = 0.0
    for X in (4, 5, 6, 7):
        r1 = conjecture_ratio(counts[X], 3, 9, X)
        r2 = conjecture_ratio(counts[2 * X], 3, 9, 2 * X)
        worst = max(worst, r2 / r1)
    ok &= worst <= 2**0.5   # chosen epsilon proxy
    _report("exponent fits", ok,
            f"slope={fit.slope:.3f}, worst doubling ratio={worst:.3f}")


def test_acceptance_09_bound_monitors():
    worst_weyl = max(weyl_ratio_max(q, k)
                     for q in range(2, 201) for k in (2, 3))
    rng = random.Random(1)
    spot_ok = True
    for _ in range(25):
        q = rng.randint(2, 200)
        a = (rng.randint(1, q), rng.randint(1, q))
        if math.gcd(q, *a) != 1:
            continue
        spot_ok &= weyl_ratio_S(q, a) <= weyl_ratio_max(q, 3) + 1e-9

    worst_decay = 0.0
    for k, direction in ((2, (1.0,)), (3, (0.5, 1.0))):
        for mag in np.logspace(0, 4, 13):
            betas = tuple(mag * d for d in direction)
            worst_decay = max(worst_decay, decay_ratio_v(betas, 1.0))

    rng = random.Random(2)
    X, Q = 40.0, 3.0
    worst_res = 0.0
    points = 0
    while points < 100:
        q = rng.randint(1, int(Q))
        a = rng.randint(1, q)
        if math.gcd(q, a) != 1:
            continue
        beta = rng.uniform(-Q * X**-2, Q * X**-2)
        comp = major_arc_approx(TEST_FORM, 1, RationalPoint(q=q, a={2: (a,)}),
                                {2: (beta,)}, X, Q)
        worst_res = max(worst_res, comp.residual)
        points += 1
    ok = worst_weyl <= 4 and spot_ok and worst_decay <= 10 \
        and worst_res <= 50 * Q**2
    _report("bound monitors", ok,
            f"weyl={worst_weyl:.2f}, decay={worst_decay:.2f}, "
            f"residual={worst_res:.2f}")


def test_acceptance_10_determinism(tmp_path):
    form = tmp_path / "form.json"
    form.write_text('{"s": 5, "equations": '
                    '[{"degree": 2, "coeffs": [1, 1, 1, -1, -1]}]}')
    outs = [str(tmp_path / f"o{i}.csv") for i in range(3)]
    base = ["count", "--system", str(form), "--X", "2,4,8",
            "--mode", "difference", "--format", "csv"]
    assert cli_main(base + ["--out", outs[0]]) == 0
    assert cli_main(base + ["--out", outs[1]]) == 0
    assert cli_main(base + ["--workers", "2", "--out", outs[2]]) == 0
    b = [open(o, "rb").read() for o in outs]
    same = b[0] == b[1]
    data = lambda blob: [ln for ln in blob.splitlines()
                         if not ln.startswith(b"#")]
    same_across_workers = data(b[0]) == data(b[2])
    mc1 = chi_infinity_schmidt(TEST_FORM, T=8.0, samples=3 * 10**6, seed=9)
    mc2 = chi_infinity_schmidt(TEST_FORM, T=8.0, samples=3 * 10**6, seed=9)
    ok = same and same_across_workers and mc1.value == mc2.value
    _report("deterministic reruns", ok)
