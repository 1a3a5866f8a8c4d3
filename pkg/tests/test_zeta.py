import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import cval
from hardyz.errors import DomainViolation, PoleError, PoleProximity, PrecisionExhausted
from hardyz.jet import parse_point
from hardyz.special import chi
from hardyz.zeta import (
    PrecisionConfig,
    estimate_em_params,
    remainder_bound,
    zeta,
    zeta_em,
    zeta_jet,
)


def test_zeta_oracle(oracle):
    for rec in oracle["zeta"]:
        s, ref = parse_point(rec["s"]), cval(rec["value"])
        assert abs(zeta(s) - ref) <= 1e-10 * abs(ref), rec["s"]


def test_zeta_prime_oracle(oracle):
    for rec in oracle["zeta_prime"]:
        s, ref = parse_point(rec["s"]), cval(rec["value"])
        assert abs(zeta_jet(s, 1).coeffs[1] - ref) <= 1e-10 * abs(ref), rec["s"]


def test_closed_forms():
    assert zeta(2.0) == pytest.approx(math.pi ** 2 / 6, rel=1e-14)
    assert zeta(4.0) == pytest.approx(math.pi ** 4 / 90, rel=1e-14)
    assert zeta(0.0) == pytest.approx(-0.5, abs=1e-14)
    assert zeta(-1.0) == pytest.approx(-1 / 12, rel=1e-12)
    assert abs(zeta(-2.0)) < 1e-12


def test_first_zero():
    assert abs(zeta(complex(0.5, 14.134725141734693))) < 1e-12


def test_pole():
    with pytest.raises(PoleError):
        zeta(1.0)
    with pytest.raises(PoleProximity):
        zeta_jet(1.0005, 2)


def test_jet_near_pole_is_still_accurate():
    # zeta(s) - 1/(s-1) -> Euler's gamma at s = 1
    j = zeta_jet(1.01, 0)
    assert j.value - 1 / 0.01 == pytest.approx(0.5772156649015329, abs=1e-2)
    assert zeta_jet(1.01, 0).value == pytest.approx(zeta_em(1.01), rel=1e-12)


@given(st.floats(-3, 4), st.floats(10, 100))
@settings(max_examples=60, deadline=None)
def test_functional_equation(x, y):
    s = complex(x, y)
    z = zeta(s)
    assert abs(z - chi(s) * zeta(1 - s)) <= 1e-9 * abs(z)


def test_conjugate_symmetry():
    s = complex(0.7, 33.0)
    assert zeta(s.conjugate()) == pytest.approx(zeta(s).conjugate(), rel=1e-13)


def test_jet_coefficients_match_finite_differences():
    s, h = complex(0.5, 50.0), 1e-4
    j = zeta_jet(s, 2)
    fd2 = (zeta(s + h) - 2 * zeta(s) + zeta(s - h)) / h ** 2
    assert 2 * j.coeffs[2] == pytest.approx(fd2, rel=1e-5)


def test_jet_order_is_independent_of_request():
    s = complex(-2.5, 12.0)
    a, b = zeta_jet(s, 2), zeta_jet(s, 6)
    assert np.allclose(a.coeffs, b.coeffs[:3], rtol=1e-10)


@pytest.mark.parametrize("t", [0.0, 100.0, 1e4])
def test_estimated_params_meet_bound(t):
    s = complex(0.5, t)
    cfg = estimate_em_params(s, 1e-13)
    assert cfg.em_cutoff >= max(10, t / 2)
    assert remainder_bound(s, cfg.em_cutoff, cfg.em_depth) < 1e-13


def test_estimate_rejects_too_tight_eps():
    with pytest.raises(DomainViolation):
        estimate_em_params(2.0, 1e-14)


def test_fixed_params_that_miss_target_are_rejected():
    cfg = PrecisionConfig(em_cutoff=10, em_depth=2)
    with pytest.raises(PrecisionExhausted):
        zeta(complex(0.5, 500.0), cfg)


def test_fixed_params_agree_with_auto():
    cfg = PrecisionConfig(em_cutoff=80, em_depth=12)
    s = complex(0.5, 30.0)
    assert zeta(s, cfg) == pytest.approx(zeta(s), rel=1e-12)


@pytest.mark.parametrize(
    "kw",
    [
        {"em_cutoff": 1},
        {"em_depth": 0},
        {"em_depth": 31},
        {"cauchy_radius": 0.3},
        {"cauchy_nodes": 32},
        {"target_eps": 1e-15},
    ],
)
def test_config_validation(kw):
    with pytest.raises(DomainViolation):
        PrecisionConfig(**kw)


def test_remainder_bound_decreases_with_cutoff():
    s = complex(0.5, 100.0)
    b = [remainder_bound(s, M, 6) for M in (50, 100, 200, 400)]
    assert all(x > y for x, y in zip(b, b[1:]))
    assert remainder_bound(0.0, 10, 3) == 0.0


def test_jet_at_zero_and_two():
    assert zeta_jet(0.0, 1).coeffs[1] == pytest.approx(-0.5 * math.log(2 * math.pi), rel=1e-12)
    j = zeta_jet(2.0, 2)
    # mpmath, 50 digits
    assert j.coeffs[1] == pytest.approx(-0.9375482543158437537, rel=1e-12)
    assert 2 * j.coeffs[2] == pytest.approx(1.989280234298901023, rel=1e-11)
    assert zeta_jet(3.0).value == pytest.approx(zeta_em(3.0), rel=1e-13)


def test_estimates_at_specific_points():
    cfg = estimate_em_params(2.0, 1e-10)
    assert abs(zeta(2.0, cfg) - math.pi ** 2 / 6) < 1e-10
    assert estimate_em_params(complex(0.5, 1000), 1e-10).em_cutoff >= 500
    cfg = estimate_em_params(30.0, 1e-12)
    assert cfg.em_cutoff <= 20
    assert zeta(30.0, cfg) == pytest.approx(1 + 2 ** -30 + 3 ** -30, rel=1e-15)
