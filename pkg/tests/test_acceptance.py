"""Acceptance gate: one test group per criterion, each printing a PASS/FAIL line.

The summary lines appear under "acceptance criteria" at the end of the run.
"""
import math
import time

import numpy as np
import pytest

from conftest import cval, record
from hardyz import checks
from hardyz.jet import parse_point
from hardyz.recursion import g_value, h_jet, z_derivatives
from hardyz.special import digamma, log_gamma, tan_jet, theta
from hardyz.zeros import (
    Rectangle,
    ZEvaluator,
    count_zeros,
    interlace_check,
    pole_order_estimate,
    ratio_monotonicity_probe,
    winding_count,
)
from hardyz.zeta import zeta, zeta_jet

SEED = 2024


def test_criterion_1_functional_equation():
    t0 = time.perf_counter()
    res = checks.f_functional_equation(SEED, count=200, nmax=4)
    dt = time.perf_counter() - t0
    record(1, "residual", res.max_residual <= 1e-8, f"max {res.max_residual:.2e} <= 1e-8 at {res.samples} points")
    record(1, "runtime", dt < 60, f"{dt:.1f}s < 60s")
    assert res.max_residual <= 1e-8
    assert dt < 60


def test_criterion_2_identities():
    t0 = time.perf_counter()
    a = checks.theta_omega_identity(SEED, count=100)
    b = checks.ratio_identity(SEED, count=100, nmax=3)
    dt = time.perf_counter() - t0
    record(2, "theta'/omega", a.passed, f"max {a.max_residual:.2e} <= 1e-10")
    record(2, "ratio identity n<=3", b.passed, f"max {b.max_residual:.2e} <= 1e-6")
    record(2, "runtime", dt < 120, f"{dt:.1f}s < 120s")
    assert a.max_residual <= 1e-10
    assert b.max_residual <= 1e-6
    assert dt < 120


def _rel(got, ref):
    # log Gamma(1) = 0 is compared absolutely
    return abs(got - ref) / abs(ref) if ref != 0 else abs(got)


def test_criterion_3_oracle(oracle):
    cases = {
        "zeta": (lambda r: zeta(parse_point(r["s"])), 1e-10, True),
        "zeta_prime": (lambda r: zeta_jet(parse_point(r["s"]), 1).coeffs[1], 1e-10, True),
        "log_gamma": (lambda r: log_gamma(parse_point(r["s"])), 1e-10, True),
        "digamma": (lambda r: digamma(parse_point(r["s"])), 1e-10, True),
        "theta": (lambda r: theta(float(r["t"])), 1e-10, False),
        "Z": (lambda r: z_derivatives(0, float(r["t"]))[0][0], 1e-8, False),
        "Z_prime": (lambda r: z_derivatives(1, float(r["t"]))[0][1], 1e-8, False),
    }
    total, bad = 0, []
    for key, (fn, tol, is_complex) in cases.items():
        worst = 0.0
        for r in oracle[key]:
            ref = cval(r["value"]) if is_complex else float(r["value"])
            worst = max(worst, _rel(fn(r), ref))
            total += 1
        if worst > tol:
            bad.append(f"{key} {worst:.1e}")
        record(3, key, worst <= tol, f"max rel {worst:.1e} <= {tol:g}")
    record(3, "fixture size", total >= 60, f"{total} values")
    assert total >= 60
    assert not bad, bad


@pytest.fixture(scope="module")
def ev4():
    return ZEvaluator(4)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_criterion_4_interlacing(n, ev4):
    t0 = time.perf_counter()
    rep = interlace_check(n, 30.0, 500.0, evaluator=ev4)
    dt = time.perf_counter() - t0
    record(
        4, f"n={n}", rep.ok and dt < 600,
        f"gaps={len(rep.gaps)} violations={len(rep.violations)} ambiguous={len(rep.ambiguous)} {dt:.0f}s",
    )
    assert not rep.violations and not rep.ambiguous
    assert dt < 600


@pytest.fixture(scope="module")
def ev2():
    return ZEvaluator(2)


def test_criterion_5_census_at_100(ev2):
    rep = count_zeros(0, 100.0, evaluator=ev2)
    ok = rep.observed == 29 and abs(rep.residual - 0.87) < 0.01 and abs(rep.main_term - 28.13) < 0.01
    record(5, "N(100)", ok, f"observed={rep.observed} main={rep.main_term:.3f} residual={rep.residual:.4f}")
    assert rep.observed == 29
    assert rep.main_term == pytest.approx(28.13, abs=0.01)
    assert rep.residual == pytest.approx(0.87, abs=0.01)


@pytest.mark.parametrize("n", [0, 1, 2])
@pytest.mark.parametrize("T", [100.0, 500.0, 1000.0])
def test_criterion_5_census_envelope(n, T, ev2):
    rep = count_zeros(n, T, evaluator=ev2)
    r = abs(rep.residual_over_log)
    record(5, f"n={n},T={T:g}", r <= 3, f"observed={rep.observed} |res|/logT={r:.3f}")
    assert r <= 3


# family, center, expected pole order (negative winding on a small square)
POLES = [("H", c, lambda n: n) for c in (1.0, 3.0, 0.0, -2.0)] + [
    ("F", 1.0, lambda n: n + 1),
    ("F", 3.0, lambda n: n),
    ("F", -2.0, lambda n: n - 1),
]


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("kind,center,order", POLES)
def test_criterion_6_pole_structure(kind, center, order, n):
    fam = f"{kind}({n})"
    p = pole_order_estimate(fam, center)
    w = winding_count(fam, Rectangle.square(center, 0.25))
    expected = order(n)
    ok = p == expected and w == -expected
    record(6, f"{fam}@{center:g}", ok, f"order {p} winding {w} expected {expected}")
    assert p == expected
    assert w == -expected


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_criterion_7_h_envelope(n):
    s = complex(2, 1e4)
    ratio = abs(h_jet(n, s).value) / (0.5 * math.log(abs(s))) ** n
    ok = 0.75 <= ratio <= 1.25
    record(7, f"|h_{n}|/L^{n}", ok, f"{ratio:.4f} in [0.75, 1.25]")
    assert 0.75 <= ratio <= 1.25


def test_criterion_7_g_limit():
    worst = max(
        abs(g_value(n, complex(30, t)) - 1.0) for n in range(5) for t in (5.0, 50.0, 500.0, 5000.0)
    )
    record(7, "g_n(30+it)", worst <= 1e-6, f"max |g-1| {worst:.1e} <= 1e-6")
    assert worst <= 1e-6


def test_criterion_7_tan_bound():
    t = 50.0
    c = np.array(tan_jet(complex(1.0, t), 3).coeffs)
    c[0] -= 1j
    dev = float(np.max(np.abs(c)))
    ok = dev <= 10 * math.exp(-2 * t)
    record(7, "tan at t=50", ok, f"{dev / math.exp(-2 * t):.2f} x e^(-2t) <= 10")
    assert ok


@pytest.mark.parametrize("n", [0, 1, 2])
def test_criterion_8_monotonicity_probe(n):
    rep = ratio_monotonicity_probe(n, 100.0, 300.0)
    ok = rep.fraction_negative >= 0.999
    record(8, f"n={n}", ok, f"{100 * rep.fraction_negative:.2f}% negative of {len(rep.samples)}")
    assert ok
