"""Euler-Maclaurin evaluation of zeta and Cauchy-circle zeta jets."""
import math
from dataclasses import dataclass, replace

import numpy as np

from .bernoulli import B2K_OVER_FACT, MAX_K
from .errors import DomainViolation, PoleError, PoleProximity, PrecisionExhausted
from .jet import Jet, as_point, pole_jet
from .kernels import em_sum
from .special import chi

ZETA3 = 1.2020569031595942
# 10 * 2**14; enough for |t| up to ~1.6e5
MAX_CUTOFF = 163840
# zeta jets refuse centers closer than this to s = 1
POLE_GUARD = 1e-3


@dataclass(frozen=True)
class PrecisionConfig:
    """Numerical knobs for zeta evaluation.

    ``em_cutoff`` and ``em_depth`` left as ``None`` are tuned per point by
    :func:`estimate_em_params`.
    """

    em_cutoff: int | None = None
    em_depth: int | None = None
    cauchy_radius: float = 0.2
    cauchy_nodes: int = 64
    target_eps: float = 1e-13
    reflect_below: float = -4.0

    def __post_init__(self):
        if self.em_cutoff is not None and self.em_cutoff < 2:
            raise DomainViolation("em_cutoff must be >= 2")
        if self.em_depth is not None and not 1 <= self.em_depth <= MAX_K:
            raise DomainViolation(f"em_depth must lie in [1, {MAX_K}]")
        if not 0.0 < self.cauchy_radius <= 0.25:
            raise DomainViolation("cauchy_radius must lie in (0, 0.25]")
        if self.cauchy_nodes < 64:
            raise DomainViolation("cauchy_nodes must be >= 64")
        if not self.target_eps >= 1e-13:
            raise DomainViolation("target_eps must be >= 1e-13")

    @property
    def auto(self):
        return self.em_cutoff is None or self.em_depth is None


DEFAULT_CONFIG = PrecisionConfig()


def remainder_bound(s, M, K):
    """Upper bound on the Euler-Maclaurin tail after ``K`` Bernoulli terms.

    Uses ``|B_{2K+1}(x)| <= 2 (2K+1)! zeta(2K+1) / (2 pi)^{2K+1}``, so the
    tail integral is at most
    ``|s(s+1)...(s+2K)| 2 zeta(3) M^{-sigma-2K} / ((2 pi)^{2K+1} (sigma+2K))``.
    """
    s = complex(s)
    sig = s.real + 2 * K
    if sig <= 0:
        return math.inf
    factors = [abs(s + j) for j in range(2 * K + 1)]
    if min(factors) == 0.0:
        # the tail vanishes identically at s = 0, -1, ..., -2K
        return 0.0
    log_poch = sum(math.log(f) for f in factors)
    log_b = (
        log_poch
        + math.log(2 * ZETA3)
        - (2 * K + 1) * math.log(2 * math.pi)
        - sig * math.log(M)
        - math.log(sig)
    )
    return math.exp(log_b) if log_b < 700 else math.inf


def estimate_em_params(s, eps=1e-13, base=DEFAULT_CONFIG):
    """Smallest cutoff ``M = 10 * 2**j`` (and a depth) meeting ``eps`` at ``s``.

    The cutoff also respects the floor ``M >= max(10, |t|/2)``.
    """
    s = as_point(s)
    if eps < 1e-13:
        raise DomainViolation("eps must be >= 1e-13")
    floor = max(10.0, abs(s.imag) / 2.0)
    M = 10
    while M < floor:
        M *= 2
    while M <= MAX_CUTOFF:
        for K in range(1, MAX_K + 1):
            if remainder_bound(s, M, K) < eps:
                return replace(base, em_cutoff=M, em_depth=K, target_eps=eps)
        M *= 2
    raise PrecisionExhausted(f"no Euler-Maclaurin parameters reach {eps:g} at s={s}")


def _resolve(points, cfg):
    """Cutoff and depth valid at every point of ``points``."""
    if not cfg.auto:
        for p in points:
            b = remainder_bound(p, cfg.em_cutoff, cfg.em_depth)
            if not b < cfg.target_eps:
                raise PrecisionExhausted(
                    f"remainder bound {b:.3g} exceeds target {cfg.target_eps:g} at s={p}"
                )
        return cfg.em_cutoff, cfg.em_depth
    # worst corner: smallest sigma, largest |t|
    sig = min(p.real for p in points)
    tmax = max(abs(p.imag) for p in points)
    c = estimate_em_params(complex(sig, tmax), cfg.target_eps, cfg)
    return c.em_cutoff, c.em_depth


def zeta_em(s, cfg=DEFAULT_CONFIG):
    """zeta(s) by Euler-Maclaurin summation.

    Left of ``cfg.reflect_below`` the functional equation is applied first,
    since the Dirichlet terms there cancel catastrophically.
    """
    s = as_point(s)
    if s == 1:
        raise PoleError("zeta has a pole at s=1")
    if s.real < cfg.reflect_below:
        return chi(s) * zeta_em(1.0 - s, cfg)
    M, K = _resolve([s], cfg)
    return complex(em_sum(np.array([s]), M, B2K_OVER_FACT[:K])[0])


def _regular_part(points, cfg):
    """zeta(z) - 1/(z-1) at every point, as one kernel call."""
    pts = np.asarray(points, dtype=complex)
    left = pts.real < cfg.reflect_below
    out = np.empty(pts.size, dtype=complex)
    if np.any(~left):
        direct = pts[~left]
        M, K = _resolve(list(direct), cfg)
        out[~left] = em_sum(direct, M, B2K_OVER_FACT[:K], True)
    for i in np.flatnonzero(left):
        z = complex(pts[i])
        out[i] = zeta_em(z, cfg) - 1.0 / (z - 1.0)
    return out


def zeta_jet(s, K=0, cfg=DEFAULT_CONFIG):
    """Taylor jet of zeta at ``s`` of order ``K``.

    The entire function ``zeta(z) - 1/(z-1)`` is sampled at equispaced
    nodes on a circle about ``s`` and its coefficients extracted with the
    trapezoid rule (an FFT); the exact pole jet is added back.
    """
    s = as_point(s)
    if abs(s - 1.0) < POLE_GUARD:
        raise PoleProximity(f"s={s} is within {POLE_GUARD} of the pole at 1")
    r = cfg.cauchy_radius
    Q = max(cfg.cauchy_nodes, 8 * K)
    nodes = s + r * np.exp(2j * np.pi * np.arange(Q) / Q)
    vals = _regular_part(nodes, cfg)
    coeffs = np.fft.fft(vals)[: K + 1] / Q
    coeffs /= r ** np.arange(K + 1)
    return Jet(s, coeffs) + pole_jet(s, 1.0, K)


def zeta(s, cfg=DEFAULT_CONFIG):
    return zeta_em(s, cfg)
