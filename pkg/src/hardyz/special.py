"""Gamma-family kernels, tan jets, chi, omega and theta.

Every routine works in double precision with explicit truncation control:
Stirling-type series are only used after shifting the argument far enough
from the origin that the stored Bernoulli table converges to below one
ulp.
"""
import cmath
import math
from dataclasses import dataclass
from math import factorial

import numpy as np

from .bernoulli import B2K, MAX_K
from .errors import DomainViolation, PoleError
from .jet import Jet, as_point

LOG_PI = math.log(math.pi)
LOG_2PI = math.log(2.0 * math.pi)
HALF_LOG_2PI = 0.5 * LOG_2PI
EULER_GAMMA = 0.57721566490153286061

# Stirling series for log Gamma is used once Re z >= SHIFT_SIGMA or |Im z| >= SHIFT_T.
SHIFT_SIGMA = 10.0
SHIFT_T = 10.0
# digamma and its derivatives always shift to Re z >= 10
PSI_SHIFT_SIGMA = 10.0
# log Gamma switches from recurrence to reflection for Re s <= -REFLECT_BELOW
REFLECT_BELOW = 30.0

_K = np.arange(1, MAX_K + 1)
# B_{2k} / (2k (2k-1)), Stirling coefficients for log Gamma
_STIRLING = B2K / (2 * _K * (2 * _K - 1))


@dataclass(frozen=True)
class DomainSpec:
    """The set D: the plane minus disks of radius ``exclusion_radius`` about
    the odd positive and the even non-positive integers."""

    exclusion_radius: float = 0.1

    def __post_init__(self):
        d = self.exclusion_radius
        if not (0.0 < d < 0.5):
            raise DomainViolation(f"exclusion radius must lie in (0, 0.5), got {d}")

    @staticmethod
    def distance(s):
        """Distance from ``s`` to the nearest excluded center."""
        s = complex(s)
        x = s.real
        best = math.inf
        for n in range(math.floor(x) - 2, math.ceil(x) + 3):
            if (n > 0 and n % 2 == 1) or (n <= 0 and n % 2 == 0):
                best = min(best, abs(s - n))
        return best

    def contains(self, s):
        # closed boundary, with slack so that s and 1-s agree after rounding
        return self.distance(s) >= self.exclusion_radius * (1 - 1e-12)

    def check(self, s):
        d = self.distance(s)
        if not self.contains(s):
            raise DomainViolation(
                f"s={complex(s)} lies within {d:.3g} of an excluded point "
                f"(radius {self.exclusion_radius})"
            )
        return complex(s)


DEFAULT_DOMAIN = DomainSpec()


def _is_nonpositive_integer(z, tol=0.0):
    if abs(z.imag) > tol:
        return False
    r = round(z.real)
    return r <= 0 and abs(z.real - r) <= tol


def _log_sin_pi(z):
    """Some logarithm of sin(pi z), overflow-free for large |Im z|."""
    if abs(z.imag) < 20.0:
        return cmath.log(cmath.sin(math.pi * z))
    if z.imag > 0:
        # sin(pi z) = e^{-i pi z} (e^{2 pi i z} - 1) / (2i)
        return -1j * math.pi * z + cmath.log((cmath.exp(2j * math.pi * z) - 1.0) / 2j)
    return 1j * math.pi * z + cmath.log((1.0 - cmath.exp(-2j * math.pi * z)) / 2j)


def _stirling_log_gamma(z):
    w = 1.0 / z
    w2 = w * w
    # series sum_k B_2k / (2k(2k-1) z^{2k-1})
    total = 0j
    p = w
    for c in _STIRLING:
        term = c * p
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
        p *= w2
    return (z - 0.5) * cmath.log(z) - z + HALF_LOG_2PI + total


def log_gamma(s, reflect=True):
    """log Gamma(s) on the standard branch (continuous off the negative axis).

    For Re s > 0 the argument is shifted upward by the recurrence
    ``log Gamma(s) = log Gamma(s+1) - log s`` until the Stirling series
    converges.  For Re s <= 0 the same recurrence is used down to
    Re s = -30 and the reflection formula beyond, with the branch aligned
    to the Stirling asymptote.
    """
    s = as_point(s)
    if _is_nonpositive_integer(s):
        raise PoleError(f"log Gamma has a pole at {s}")
    if s.real <= 0.0:
        if not reflect:
            raise DomainViolation("Re s <= 0 needs the reflection formula, which is disabled")
        if s.real > -REFLECT_BELOW:
            # recurrence keeps the standard branch exactly
            return _shifted_log_gamma(s)
        v = LOG_PI - _log_sin_pi(s) - log_gamma(1.0 - s)
        rough = (s - 0.5) * cmath.log(s) - s + HALF_LOG_2PI
        return v + 2j * math.pi * round((rough.imag - v.imag) / (2 * math.pi))
    return _shifted_log_gamma(s)


def _shifted_log_gamma(s):
    shift = 0.0j
    z = s
    while z.real < SHIFT_SIGMA and abs(z.imag) < SHIFT_T:
        shift += cmath.log(z)
        z += 1.0
    return _stirling_log_gamma(z) - shift


def gamma(s):
    return cmath.exp(log_gamma(s))


def _psi_asymptotic(z, K):
    """Taylor coefficients psi^(m)(z)/m!, m=0..K, from the asymptotic series."""
    w = 1.0 / z
    out = np.empty(K + 1, dtype=complex)
    two_k = 2 * _K
    # powers w^j for j up to 2*MAX_K + K + 1
    pw = w ** np.arange(2 * MAX_K + K + 2)
    out[0] = cmath.log(z) - 0.5 * w - np.sum(B2K / two_k * pw[two_k])
    for m in range(1, K + 1):
        # (2k+m-1)! / ((2k)! m!)
        ratio = np.array(
            [math.comb(2 * k + m - 1, m) / (2 * k) for k in _K]
        )
        series = np.sum(B2K * ratio * pw[two_k + m])
        val = pw[m] / m + 0.5 * pw[m + 1] + series
        out[m] = -val if m % 2 == 0 else val
    return out


def digamma_jet(s, K=0):
    """Jet of the digamma function: ``coeffs[m] = psi^(m)(s)/m!``."""
    s = as_point(s)
    if _is_nonpositive_integer(s, tol=1e-14):
        raise PoleError(f"digamma has a pole at {s}")
    n_shift = max(0, math.ceil(PSI_SHIFT_SIGMA - s.real))
    c = _psi_asymptotic(s + n_shift, K)
    if n_shift:
        # psi^(m)(s) = psi^(m)(s+N) - sum_j (-1)^m m! / (s+j)^(m+1)
        inv = 1.0 / (s + np.arange(n_shift))
        p = inv.copy()
        for m in range(K + 1):
            c[m] -= (-1) ** m * np.sum(p)
            p = p * inv
    return Jet(s, c)


def digamma(s):
    return digamma_jet(s, 0).value


def polygamma(m, s):
    return digamma_jet(s, m).derivative_value(m)


def _tan_upper(x, K):
    """Tan jet for Im x >= 0 written in terms of w = e^{2ix}, |w| <= 1."""
    w = cmath.exp(2j * x)
    c = np.zeros(K + 1, dtype=complex)
    c[0] = 1j * (1.0 - w) / (1.0 + w)
    if K >= 1:
        # sec^2 directly; 1 + tan^2 cancels catastrophically when tan ~ i
        c[1] = 4.0 * w / (1.0 + w) ** 2
    for k in range(1, K):
        acc = 2.0 * c[0] * c[k]
        for j in range(1, k):
            acc += c[j] * c[k - j]
        c[k + 1] = acc / (k + 1)
    return c


def tan_jet(x, K=0, dom=DEFAULT_DOMAIN):
    """Jet of tan at ``x`` from the Taylor form of tan' = 1 + tan^2.

    Raises :class:`PoleError` within ``dom.exclusion_radius * pi/2`` of an
    odd multiple of pi/2.
    """
    x = as_point(x)
    half_pi = 0.5 * math.pi
    k = round((x.real - half_pi) / math.pi)
    # same closed boundary as D, with slack for the rounding of pi/2 * s
    if abs(x - (half_pi + k * math.pi)) < dom.exclusion_radius * half_pi * (1 - 1e-12):
        raise PoleError(f"tan has a pole near {x}")
    if x.imag >= 0:
        return Jet(x, _tan_upper(x, K))
    return Jet(x, np.conj(_tan_upper(x.conjugate(), K)))


def chi(s):
    """chi(s) = pi^{s-1/2} Gamma((1-s)/2) / Gamma(s/2), so zeta(s) = chi(s) zeta(1-s)."""
    s = as_point(s)
    a, b = 0.5 * (1.0 - s), 0.5 * s
    if _is_nonpositive_integer(a) or _is_nonpositive_integer(b):
        raise PoleError(f"chi is singular or degenerate at {s}")
    return cmath.exp((s - 0.5) * LOG_PI + log_gamma(a) - log_gamma(b))


def omega_jet(s, K=0, dom=DEFAULT_DOMAIN):
    """Jet of omega = chi'/chi = log 2pi + (pi/2) tan(pi s/2) - psi(s).

    Points with Re s < 1/4 go through omega(1-s) = omega(s), which keeps
    the digamma argument in the right half-plane.
    """
    s = dom.check(as_point(s))
    if s.real < 0.25:
        return omega_jet(1.0 - s, K, dom).reflect(s)
    half_pi = 0.5 * math.pi
    t = tan_jet(half_pi * s, K, dom).coeffs
    scale = half_pi ** np.arange(1, K + 2)
    c = scale * t - digamma_jet(s, K).coeffs
    c[0] += LOG_2PI
    return Jet(s, c)


def omega(s, dom=DEFAULT_DOMAIN):
    return omega_jet(s, 0, dom).value


def log_h_jet(s, K=0):
    """Jet of log h(s), h(s) = pi^{-s/2} Gamma(s/2)."""
    s = as_point(s)
    c = np.empty(K + 1, dtype=complex)
    c[0] = -0.5 * s * LOG_PI + log_gamma(0.5 * s)
    if K >= 1:
        psi = digamma_jet(0.5 * s, K - 1).coeffs
        # d^k/ds^k log Gamma(s/2) = 2^{-k} psi^{(k-1)}(s/2)
        for k in range(1, K + 1):
            c[k] = 0.5 ** k * psi[k - 1] * factorial(k - 1) / factorial(k)
        c[1] -= 0.5 * LOG_PI
    return Jet(s, c)


def theta_jet(t, K=0):
    """Jet in t of theta(t) = arg h(1/2 + it) on the branch with theta(0) = 0.

    Coefficients are real (stored as complex with zero imaginary part).
    """
    t = float(t)
    if not math.isfinite(t) or t < 0:
        raise DomainViolation(f"theta is evaluated for t >= 0, got {t}")
    z = 0.25 + 0.5j * t
    c = np.zeros(K + 1, dtype=complex)
    c[0] = log_gamma(z).imag - 0.5 * t * LOG_PI
    if K >= 1:
        psi = digamma_jet(z, K - 1).coeffs
        for k in range(1, K + 1):
            # d^k/dt^k log Gamma(1/4 + it/2) = (i/2)^k psi^{(k-1)}
            dk = (0.5j) ** k * psi[k - 1] * factorial(k - 1)
            c[k] = dk.imag / factorial(k)
        c[1] -= 0.5 * LOG_PI
    return Jet(t, c.real)


def theta(t):
    return theta_jet(t, 0).value.real
