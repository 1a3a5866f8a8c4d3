"""Seeded invariant checks shared by ``hardyz selfcheck`` and the test-suite.

Each check draws its sample points from ``numpy.random.default_rng(seed)``
and returns a :class:`CheckResult` carrying the worst residual seen.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import HardyError
from .recursion import a_coeffs, f_jets, g_value, h_jet, ratio_identity_residual, z_derivatives
from .special import DEFAULT_DOMAIN, chi, digamma_jet, log_gamma, omega_jet, tan_jet, theta_jet
from .zeta import DEFAULT_CONFIG, zeta_em, zeta_jet


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_residual: float
    tolerance: float
    samples: int

    def __post_init__(self):
        object.__setattr__(self, "max_residual", float(self.max_residual))

    @property
    def passed(self):
        return bool(self.max_residual <= self.tolerance)


def _points_in_d(rng, count, sig_lo, sig_hi, t_lo, t_hi, dom=DEFAULT_DOMAIN):
    pts = []
    while len(pts) < count:
        s = complex(rng.uniform(sig_lo, sig_hi), rng.uniform(t_lo, t_hi))
        if dom.contains(s):
            pts.append(s)
    return pts


def omega_reflection(seed=0, count=1000):
    """|omega(1-s) - omega(s)| for s in D with |s| <= 100."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    n = 0
    while n < count:
        r, a = 100 * math.sqrt(rng.uniform()), rng.uniform(0, 2 * math.pi)
        s = complex(r * math.cos(a), r * math.sin(a))
        if not DEFAULT_DOMAIN.contains(s):
            continue
        d = abs(omega_jet(1 - s).value - omega_jet(s).value)
        worst = max(worst, d)
        n += 1
    return CheckResult("omega(1-s) = omega(s)", worst, 1e-9, count)


def theta_omega_identity(seed=0, count=100):
    """|theta'(t) + omega(1/2+it)/2| for t in [10, 1000]."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for t in rng.uniform(10, 1000, count):
        d = theta_jet(t, 1).coeffs[1].real + 0.5 * omega_jet(complex(0.5, t)).value
        worst = max(worst, abs(d))
    return CheckResult("omega(1/2+it) = -2 theta'(t)", worst, 1e-10, count)


def chi_functional_equation(cfg=DEFAULT_CONFIG, count=100):
    """|zeta(s) - chi(s) zeta(1-s)| / |zeta(s)| on a grid in -3<=sigma<=4, 5<=t<=50."""
    sig = np.linspace(-3, 4, 10)
    ts = np.linspace(5, 50, math.ceil(count / 10))
    worst, n = 0.0, 0
    for a in sig:
        for t in ts:
            s = complex(a, t)
            if not DEFAULT_DOMAIN.contains(s):
                continue
            z = zeta_em(s, cfg)
            worst = max(worst, abs(z - chi(s) * zeta_em(1 - s, cfg)) / abs(z))
            n += 1
    return CheckResult("zeta(s) = chi(s) zeta(1-s)", worst, 1e-9, n)


def f_functional_equation(seed=0, count=200, nmax=4, cfg=DEFAULT_CONFIG):
    """Relative residual of chi(s) f_n(1-s) = (-1)^n f_n(s), n <= nmax."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for s in _points_in_d(rng, count, -3, 4, 10, 100):
        c = chi(s)
        fl = [j.value for j in f_jets(nmax, 1 - s, 0, cfg)]
        fr = [j.value for j in f_jets(nmax, s, 0, cfg)]
        for n in range(nmax + 1):
            r = abs(c * fl[n] - (-1) ** n * fr[n]) / abs(fr[n])
            worst = max(worst, r)
    return CheckResult("chi(s) f_n(1-s) = (-1)^n f_n(s)", worst, 1e-8, count)


def z_reality(seed=0, count=500, nmax=4, cfg=DEFAULT_CONFIG):
    """Worst |Im(i^n f_n e^{i theta})| / (1 + |Z^(n)|) for t in [10, 2000]."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for t in rng.uniform(10, 2000, count):
        _, q = z_derivatives(nmax, t, cfg, check=False)
        worst = max(worst, q)
    return CheckResult("Z^(n)(t) is real", worst, 1e-8, count)


def ratio_identity(seed=0, count=100, nmax=3, cfg=DEFAULT_CONFIG, t_lo=10.0, t_hi=500.0):
    """Residual of Z^(n+1)/Z^(n) = iG_n'/G_n + ih_n'/h_n - F'/F away from zeros."""
    rng = np.random.default_rng(seed)
    worst, n_ok = 0.0, 0
    while n_ok < count:
        t = rng.uniform(t_lo, t_hi)
        zs, _ = z_derivatives(nmax, t, cfg, check=False)
        # stay clear of zeros of any Z^(n) that appears as a denominator
        if np.min(np.abs(zs[:nmax + 1])) < 1e-3:
            continue
        for n in range(nmax + 1):
            worst = max(worst, ratio_identity_residual(n, t, cfg))
        n_ok += 1
    return CheckResult("Z^(n+1)/Z^(n) ratio identity", worst, 1e-6, count)


def h_asymptotic(nmax=3, heights=(1e2, 1e3, 1e4), bound=4.0):
    """|h_n(s) - L^n| / L^(n-1) with L = log|s|/2 at s = 2+it: the O-term of h_n."""
    worst = 0.0
    for t in heights:
        s = complex(2, t)
        L = 0.5 * math.log(abs(s))
        for n in range(1, nmax + 1):
            worst = max(worst, abs(h_jet(n, s).value - L ** n) / L ** (n - 1))
    return CheckResult("h_n = (log|s|/2)^n + O((log|s|)^(n-1))", worst, bound, len(heights) * nmax)


def large_sigma_limit(nmax=4, sigma=30.0, ts=(5.0, 50.0, 500.0), cfg=DEFAULT_CONFIG):
    """|g_n(sigma+it) - 1| at sigma = 30."""
    worst = 0.0
    for t in ts:
        for n in range(nmax + 1):
            worst = max(worst, abs(g_value(n, complex(sigma, t), cfg) - 1.0))
    return CheckResult("g_n(30+it) -> 1", worst, 1e-6, len(ts) * (nmax + 1))


def tan_bound(ts=(5.0, 20.0, 50.0), order=3):
    """max_k |tan jet - i delta_k0| e^{2t}, the constant in tan s = i + O(e^{-2t})."""
    worst = 0.0
    for t in ts:
        c = tan_jet(complex(1.0, t), order).coeffs.copy()
        c[0] -= 1j
        worst = max(worst, float(np.max(np.abs(c))) * math.exp(2 * t))
    return CheckResult("tan s = i + O(e^{-2t})", worst, 10.0, len(ts))


def omega_envelope(heights=(1e2, 1e3, 1e4)):
    """max of |omega(s) + log|s|| / 6 and |omega'(s)| / 2 at s = 2+it."""
    worst = 0.0
    for t in heights:
        s = complex(2, t)
        j = omega_jet(s, 1)
        worst = max(worst, abs(j.value + math.log(abs(s))) / 6.0, abs(j.coeffs[1]) / 2.0)
    return CheckResult("omega = -log|s| + O(1), omega' = O(1)", worst, 1.0, len(heights))


def a_coefficient_identity(nmax=5, seed=0, count=10, cfg=DEFAULT_CONFIG):
    """|a_{n,0} - h_n| / |h_n| for n <= nmax."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for s in _points_in_d(rng, count, -3, 4, 5, 100):
        for n in range(1, nmax + 1):
            h = h_jet(n, s).value
            worst = max(worst, abs(a_coeffs(n, s, cfg).values[0] - h) / abs(h))
    return CheckResult("a_{n,0} = h_n", worst, 1e-12, count)


def jet_consistency(seed=0, count=10, step=1e-5, cfg=DEFAULT_CONFIG):
    """Order-1 jet coefficient vs central difference of the value, every kernel."""
    rng = np.random.default_rng(seed)
    kernels = (
        lambda s, K: digamma_jet(s, K),
        lambda s, K: omega_jet(s, K),
        lambda s, K: zeta_jet(s, K, cfg),
    )

    def rel(fn, s):
        d1 = fn(s, 1).coeffs[1]
        fd = (fn(s + step, 0).value - fn(s - step, 0).value) / (2 * step)
        return abs(d1 - fd) / abs(d1)

    worst = 0.0
    for s in _points_in_d(rng, count, 0.3, 4, 2, 60):
        worst = max(worst, *(rel(fn, s) for fn in kernels))
    # tan' ~ e^{-2|Im s|} is below difference noise far from the real axis
    for s in _points_in_d(rng, count, -3, 3, -1.5, 1.5):
        if DEFAULT_DOMAIN.contains(2 * s / math.pi):
            worst = max(worst, rel(tan_jet, s))
    for t in rng.uniform(5, 500, count):
        d1 = theta_jet(t, 1).coeffs[1].real
        fd = (theta_jet(t + step).value.real - theta_jet(t - step).value.real) / (2 * step)
        worst = max(worst, abs(d1 - fd) / abs(d1))
    return CheckResult("jet order-1 vs central difference", worst, 1e-6, count)


def log_gamma_sanity():
    """log Gamma(1) = 0 and log Gamma(1/2) = log sqrt(pi)."""
    r = max(abs(log_gamma(1.0)), abs(log_gamma(0.5) - 0.5 * math.log(math.pi)))
    return CheckResult("log Gamma classical values", r, 1e-14, 2)


def run_suite(seed=0, cfg=DEFAULT_CONFIG, quick=True):
    """Run every invariant; sample counts shrink when ``quick`` is set."""
    k = 5 if quick else 1
    checks = [
        lambda: log_gamma_sanity(),
        lambda: omega_reflection(seed, 1000 // k),
        lambda: theta_omega_identity(seed, 100 // k),
        lambda: chi_functional_equation(cfg, 100),
        lambda: f_functional_equation(seed, 200 // k, 4, cfg),
        lambda: z_reality(seed, 500 // k, 4, cfg),
        lambda: ratio_identity(seed, 100 // k, 3, cfg),
        lambda: h_asymptotic(),
        lambda: large_sigma_limit(cfg=cfg),
        lambda: tan_bound(),
        lambda: omega_envelope(),
        lambda: a_coefficient_identity(cfg=cfg, seed=seed),
        lambda: jet_consistency(seed, cfg=cfg),
    ]
    out = []
    for c in checks:
        try:
            out.append(c())
        except HardyError as exc:
            name = getattr(c, "__name__", "check")
            out.append(CheckResult(f"{name}: {exc}", math.inf, 0.0, 0))
    return out
