"""Zeros of Z^(n) on the critical line, interlacing, censuses and windings."""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BoundaryTooClose,
    DomainViolation,
    FitAmbiguous,
    HardyError,
    UnstableScan,
    WindingUnresolved,
)
from .recursion import MAX_ORDER, FamilyId, Kind, family_value, z_derivatives
from .special import DEFAULT_DOMAIN, DomainSpec
from .zeta import DEFAULT_CONFIG

BRACKET_TOL = 1e-10
AMBIGUITY_TOL = 1e-8
MAX_HALVINGS = 3
# the low-height part of a census is scanned from here with this step
SMALL_T_START = 1e-3
SMALL_T_STEP = 0.05
SMALL_T_END = 10.0


@dataclass(frozen=True)
class ZeroRecord:
    n: int
    t: float
    bracket_width: float
    sign_before: int
    sign_after: int


@dataclass(frozen=True)
class Gap:
    left: float
    right: float
    count: int
    inside: tuple = ()
    ambiguous: bool = False


@dataclass
class InterlaceReport:
    n: int
    t_lo: float
    t_hi: float
    gaps: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    ambiguous: list = field(default_factory=list)
    holds_from: float | None = None
    quality: float = 0.0

    @property
    def ok(self):
        return not self.violations and not self.ambiguous


@dataclass
class CountReport:
    n: int
    T: float
    observed: int
    main_term: float
    residual: float
    residual_over_log: float
    small_t_count: int = 0
    quality: float = 0.0


@dataclass(frozen=True)
class Rectangle:
    sigma_lo: float
    sigma_hi: float
    t_lo: float
    t_hi: float

    def __post_init__(self):
        if not (self.sigma_lo < self.sigma_hi and self.t_lo < self.t_hi):
            raise DomainViolation("rectangle needs sigma_lo < sigma_hi and t_lo < t_hi")

    @classmethod
    def square(cls, center, side):
        c = complex(center)
        h = side / 2.0
        return cls(c.real - h, c.real + h, c.imag - h, c.imag + h)

    def split(self, axis="sigma", at=None):
        """Two rectangles sharing the cut ``sigma = at`` (or ``t = at``)."""
        if axis == "sigma":
            at = 0.5 * (self.sigma_lo + self.sigma_hi) if at is None else at
            return (
                Rectangle(self.sigma_lo, at, self.t_lo, self.t_hi),
                Rectangle(at, self.sigma_hi, self.t_lo, self.t_hi),
            )
        at = 0.5 * (self.t_lo + self.t_hi) if at is None else at
        return (
            Rectangle(self.sigma_lo, self.sigma_hi, self.t_lo, at),
            Rectangle(self.sigma_lo, self.sigma_hi, at, self.t_hi),
        )

    def boundary(self, per_unit):
        """Counter-clockwise boundary nodes, corners included once."""
        a = complex(self.sigma_lo, self.t_lo)
        b = complex(self.sigma_hi, self.t_lo)
        c = complex(self.sigma_hi, self.t_hi)
        d = complex(self.sigma_lo, self.t_hi)
        pts = []
        for p, q in ((a, b), (b, c), (c, d), (d, a)):
            m = max(4, math.ceil(abs(q - p) * per_unit))
            pts.append(p + (q - p) * np.arange(m) / m)
        return np.concatenate(pts)


class ZEvaluator:
    """Memoizing evaluator of Z, Z', ..., Z^(nmax) on the critical line.

    One zeta/omega jet per abscissa serves every order, so scans of
    neighbouring orders over the same grid share their work.
    """

    def __init__(self, nmax, cfg=DEFAULT_CONFIG, workers=1):
        if not 0 <= nmax <= MAX_ORDER:
            raise DomainViolation(f"order must lie in [0, {MAX_ORDER}]")
        self.nmax = nmax
        self.cfg = cfg
        self.workers = max(1, int(workers))
        self.quality = 0.0
        self._cache = {}

    def _compute(self, t):
        vals, q = z_derivatives(self.nmax, t, self.cfg)
        return vals, q

    def values(self, t):
        t = float(t)
        hit = self._cache.get(t)
        if hit is None:
            vals, q = self._compute(t)
            self.quality = max(self.quality, q)
            self._cache[t] = vals
            hit = vals
        return hit

    def __call__(self, n, t):
        return float(self.values(t)[n])

    def grid(self, n, ts):
        ts = [float(t) for t in ts]
        todo = [t for t in dict.fromkeys(ts) if t not in self._cache]
        if todo:
            if self.workers > 1:
                with ThreadPoolExecutor(self.workers) as pool:
                    results = list(pool.map(self._compute, todo))
            else:
                results = [self._compute(t) for t in todo]
            for t, (vals, q) in zip(todo, results):
                self._cache[t] = vals
                self.quality = max(self.quality, q)
        return np.array([self._cache[t][n] for t in ts])


def _sign(x):
    return 1 if x >= 0 else -1


def _sign_changes(vals):
    s = np.where(np.asarray(vals) >= 0, 1, -1)
    return np.flatnonzero(s[:-1] != s[1:])


def refine_bracket(func, a, b, fa, fb, tol=BRACKET_TOL, maxiter=200):
    """Shrink a sign-change bracket [a, b] to width <= tol.

    Illinois false-position steps, with a bisection step whenever the
    bracket fails to halve; the final bracket always straddles the root.
    """
    if _sign(fa) == _sign(fb):
        raise ValueError("endpoints do not bracket a sign change")
    side = 0
    for _ in range(maxiter):
        width = b - a
        if width <= tol:
            break
        if fb != fa:
            x = b - fb * (b - a) / (fb - fa)
        else:
            x = 0.5 * (a + b)
        # keep the trial point strictly inside and not glued to an end
        lo, hi = a + 0.25 * tol, b - 0.25 * tol
        if not lo < x < hi:
            x = 0.5 * (a + b)
        fx = func(x)
        if _sign(fx) == _sign(fa):
            a, fa = x, fx
            if side == -1:
                fb *= 0.5
            side = -1
        else:
            b, fb = x, fx
            if side == 1:
                fa *= 0.5
            side = 1
        if b - a > 0.5 * width:
            # false position stalled; force a bisection
            m = 0.5 * (a + b)
            fm = func(m)
            if _sign(fm) == _sign(fa):
                a, fa = m, fm
            else:
                b, fb = m, fm
            side = 0
    return a, b


def _scan(n, t_lo, t_hi, step, ev):
    """Sign-change brackets of Z^(n), verified by a double-density pass."""
    for _ in range(MAX_HALVINGS + 1):
        m = max(2, math.ceil((t_hi - t_lo) / step))
        coarse = np.linspace(t_lo, t_hi, m + 1)
        fine = np.linspace(t_lo, t_hi, 2 * m + 1)
        vc = ev.grid(n, coarse)
        vf = ev.grid(n, fine)
        ic, jf = _sign_changes(vc), _sign_changes(vf)
        if ic.size == jf.size:
            return fine, vf, jf
        step /= 2.0
    raise UnstableScan(
        f"Z^({n}) on [{t_lo}, {t_hi}]: double-density pass still finds extra "
        f"sign changes after {MAX_HALVINGS} halvings"
    )


def _records(n, grid, vals, idx, ev):
    out = []
    func = lambda x: ev(n, x)  # noqa: E731
    for i in idx:
        a, b = float(grid[i]), float(grid[i + 1])
        fa, fb = float(vals[i]), float(vals[i + 1])
        lo, hi = refine_bracket(func, a, b, fa, fb)
        out.append(
            ZeroRecord(
                n=n,
                t=0.5 * (lo + hi),
                bracket_width=hi - lo,
                sign_before=_sign(fa),
                sign_after=_sign(fb),
            )
        )
    return out


def scan_step(t_hi):
    return 0.5 / math.log(t_hi)


def _check_range(t_lo, t_hi):
    if not (10.0 <= t_lo < t_hi <= 1e4):
        raise DomainViolation(f"scan range must satisfy 10 <= t_lo < t_hi <= 1e4, got [{t_lo}, {t_hi}]")


def scan_zeros(n, t_lo, t_hi, cfg=DEFAULT_CONFIG, evaluator=None, workers=1):
    """Zeros of Z^(n) in [t_lo, t_hi], sorted by ordinate."""
    _check_range(t_lo, t_hi)
    ev = evaluator or ZEvaluator(n, cfg, workers)
    grid, vals, idx = _scan(n, t_lo, t_hi, scan_step(t_hi), ev)
    return _records(n, grid, vals, idx, ev)


def interlace_check(n, t_lo, t_hi, cfg=DEFAULT_CONFIG, evaluator=None, workers=1):
    """Count zeros of Z^(n+1) strictly between consecutive zeros of Z^(n)."""
    _check_range(t_lo, t_hi)
    ev = evaluator or ZEvaluator(n + 1, cfg, workers)
    lower = scan_zeros(n, t_lo, t_hi, cfg, ev)
    upper = scan_zeros(n + 1, t_lo, t_hi, cfg, ev)
    ts = np.array([z.t for z in upper])
    rep = InterlaceReport(n=n, t_lo=t_lo, t_hi=t_hi)
    last_bad = None
    for a, b in zip(lower, lower[1:]):
        near = np.any(np.abs(ts - a.t) < AMBIGUITY_TOL) or np.any(np.abs(ts - b.t) < AMBIGUITY_TOL)
        inside = ts[(ts > a.t + AMBIGUITY_TOL) & (ts < b.t - AMBIGUITY_TOL)] if ts.size else ts
        gap = Gap(a.t, b.t, int(inside.size), tuple(float(x) for x in inside), bool(near))
        rep.gaps.append(gap)
        if gap.ambiguous:
            rep.ambiguous.append(gap)
            last_bad = gap
        elif gap.count != 1:
            rep.violations.append(gap)
            last_bad = gap
    if rep.gaps:
        rep.holds_from = rep.gaps[0].left if last_bad is None else last_bad.right
    rep.quality = ev.quality
    return rep


def main_term(T):
    x = T / (2 * math.pi)
    return x * math.log(x) - x


def count_zeros(n, T, cfg=DEFAULT_CONFIG, evaluator=None, workers=1):
    """Zeros of Z^(n) in (0, T) against T/2pi log(T/2pi) - T/2pi.

    The main scan covers [10, T]; zeros below 10 come from a fixed fine
    grid and are reported separately as ``small_t_count``.
    """
    if not 20.0 <= T <= 1e4:
        raise DomainViolation(f"T must lie in [20, 1e4], got {T}")
    ev = evaluator or ZEvaluator(n, cfg, workers)
    zs = scan_zeros(n, 10.0, T, cfg, ev)
    small = _small_t_zeros(n, ev)
    observed = len(zs) + len(small)
    mt = main_term(T)
    res = observed - mt
    return CountReport(
        n=n,
        T=T,
        observed=observed,
        main_term=mt,
        residual=res,
        residual_over_log=res / math.log(T),
        small_t_count=len(small),
        quality=ev.quality,
    )


def _small_t_zeros(n, ev):
    grid, vals, idx = _scan(n, SMALL_T_START, SMALL_T_END, SMALL_T_STEP, ev)
    return _records(n, grid, vals, idx, ev)


def _boundary_values(family, nodes, cfg, dom):
    vals = np.empty(nodes.size, dtype=complex)
    for i, s in enumerate(nodes):
        s = complex(s)
        if not dom.contains(s) or abs(s - 1.0) < 0.1:
            raise BoundaryTooClose(f"boundary node {s} is within the exclusion radius of a pole")
        try:
            v = family_value(family, s, cfg, dom)
        except HardyError as exc:
            raise BoundaryTooClose(f"cannot evaluate {family} at boundary node {s}: {exc}") from exc
        if abs(v) <= 1e-10:
            raise BoundaryTooClose(f"{family} nearly vanishes at boundary node {s}")
        vals[i] = v
    return vals


def winding_count(family, rect, nodes_per_unit=40, cfg=DEFAULT_CONFIG, dom=DEFAULT_DOMAIN):
    """Zeros minus poles of ``family`` inside ``rect`` (argument principle)."""
    if isinstance(family, str):
        family = FamilyId.parse(family)
    per_unit = float(nodes_per_unit)
    for _ in range(5):
        nodes = rect.boundary(per_unit)
        vals = _boundary_values(family, nodes, cfg, dom)
        steps = np.angle(np.roll(vals, -1) / vals)
        if np.max(np.abs(steps)) < 0.5 * math.pi:
            w = steps.sum() / (2 * math.pi)
            return int(round(w))
        per_unit *= 2
    raise WindingUnresolved(
        f"argument increments of {family} stay >= pi/2 after 4 refinements"
    )


POLE_RADII = (0.05, 0.07, 0.1)


def pole_order_estimate(family, center, cfg=DEFAULT_CONFIG, angles=32):
    """Order of the pole of ``family`` at ``center`` from the growth of log|value|.

    The circle mean of log|f| over radius r equals ``const - p log r`` when
    f has a pole of order p at the center and no zeros within r, so the
    least-squares slope against ``-log r`` is p.
    """
    if isinstance(family, str):
        family = FamilyId.parse(family)
    if family.kind is Kind.G:
        raise DomainViolation("pole orders are estimated for the F and H families only")
    center = complex(center)
    dom = DomainSpec(0.5 * min(POLE_RADII))
    phi = 2 * math.pi * (np.arange(angles) + 0.5) / angles
    x, y = [], []
    for r in POLE_RADII:
        pts = center + r * np.exp(1j * phi)
        logs = [math.log(abs(family_value(family, complex(p), cfg, dom))) for p in pts]
        x.append(-math.log(r))
        y.append(float(np.mean(logs)))
    slope = float(np.polyfit(x, y, 1)[0])
    p = round(slope)
    if abs(slope - p) > 0.2:
        raise FitAmbiguous(f"slope {slope:.3f} is not close to an integer", slope=slope)
    return int(p)


@dataclass
class ProbeReport:
    n: int
    samples: list
    excluded: list
    fraction_negative: float


def ratio_monotonicity_probe(
    n, t_lo, t_hi, samples=500, cfg=DEFAULT_CONFIG, evaluator=None, step=1e-4, exclusion=0.05
):
    """Central-difference slope of Z^(n+1)/Z^(n) at evenly spaced abscissae.

    Abscissae within ``exclusion`` of a zero of Z^(n) are skipped.
    """
    ev = evaluator or ZEvaluator(n + 1, cfg)
    # pad the scan so zeros sitting on an endpoint are still seen
    lo, hi = max(10.0, t_lo - exclusion), min(1e4, t_hi + exclusion)
    zeros = np.array([z.t for z in scan_zeros(n, lo, hi, cfg, ev)])
    ratio = lambda t: ev(n + 1, t) / ev(n, t)  # noqa: E731
    out, skipped = [], []
    for t in np.linspace(t_lo, t_hi, samples):
        t = float(t)
        if zeros.size and np.min(np.abs(zeros - t)) < exclusion:
            skipped.append(t)
            continue
        d = (ratio(t + step) - ratio(t - step)) / (2 * step)
        out.append((t, d))
    neg = sum(1 for _, d in out if d < 0)
    frac = neg / len(out) if out else float("nan")
    return ProbeReport(n=n, samples=out, excluded=skipped, fraction_negative=frac)
