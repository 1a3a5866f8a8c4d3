"""The f_n / h_n / g_n families and the derivatives of Z(t).

With ``omega = chi'/chi``, both families obey

    F_{n+1} = F_n' - omega F_n / 2,

seeded by ``f_0 = zeta`` and ``h_0 = 1``.  Each step consumes one order of
the jets it acts on, so a value-level ``f_n`` needs zeta and omega jets of
order ``n`` (plus whatever extra order the caller asks for).
"""
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainViolation, NearZeroDenominator, RealityCheckFailed
from .jet import Jet, as_point
from .special import DEFAULT_DOMAIN, log_h_jet, omega_jet, theta_jet
from .zeta import DEFAULT_CONFIG, zeta_jet

MAX_ORDER = 6
# |Im| allowed in Z^(n), relative to 1 + |Z^(n)|
REALITY_TOL = 1e-8


class Kind(str, Enum):
    F = "F"
    H = "H"
    G = "G"


@dataclass(frozen=True)
class FamilyId:
    """Selects f_n, h_n or g_n."""

    kind: Kind
    n: int

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if not 0 <= self.n <= MAX_ORDER:
            raise DomainViolation(f"family order must lie in [0, {MAX_ORDER}]")

    @classmethod
    def parse(cls, text):
        """``"F(2)"``, ``"h3"`` or ``"G:1"`` -> FamilyId."""
        t = text.strip().upper().replace("(", " ").replace(")", " ").replace(":", " ")
        kind, n = t[0], t[1:].strip()
        return cls(Kind(kind), int(n))

    def __str__(self):
        return f"{self.kind.value}({self.n})"


@dataclass(frozen=True)
class CoeffTable:
    """``a_{n,k}(s)``, k=0..n, with ``f_n = sum_k a_{n,k} zeta^(k)``."""

    n: int
    s: complex
    values: np.ndarray


def _check_order(n):
    if not 0 <= n <= MAX_ORDER:
        raise DomainViolation(f"order n must lie in [0, {MAX_ORDER}], got {n}")


def _recurse(seed, om, n):
    """Apply F -> F' - omega F/2 ``n`` times; return every intermediate jet."""
    out = [seed]
    cur = seed
    for _ in range(n):
        d = cur.derivative()
        cur = d - 0.5 * (om.truncate(d.order) * cur.truncate(d.order))
        out.append(cur)
    return out


def f_jets(n, s, K=0, cfg=DEFAULT_CONFIG, dom=DEFAULT_DOMAIN):
    """Jets of f_0..f_n at ``s``; ``f_j`` comes back with order ``n - j + K``."""
    _check_order(n)
    s = dom.check(as_point(s))
    z = zeta_jet(s, n + K, cfg)
    om = omega_jet(s, n + K, dom)
    return _recurse(z, om, n)


def f_jet(n, s, K=0, cfg=DEFAULT_CONFIG, dom=DEFAULT_DOMAIN):
    """Jet of order ``K`` of f_n at ``s``."""
    return f_jets(n, s, K, cfg, dom)[-1]


def h_jets(n, s, K=0, dom=DEFAULT_DOMAIN):
    _check_order(n)
    s = dom.check(as_point(s))
    om = omega_jet(s, n + K, dom)
    return _recurse(Jet.constant(s, 1.0, n + K), om, n)


def h_jet(n, s, K=0, dom=DEFAULT_DOMAIN):
    """Jet of order ``K`` of h_n at ``s``."""
    return h_jets(n, s, K, dom)[-1]


def a_coeffs(n, s, cfg=DEFAULT_CONFIG, dom=DEFAULT_DOMAIN):
    """Values of a_{n,k}(s) from ``a_{m+1,k} = a_{m,k}' + a_{m,k-1} - omega a_{m,k}/2``."""
    _check_order(n)
    s = dom.check(as_point(s))
    om = omega_jet(s, n, dom)
    table = [Jet.constant(s, 1.0, n)]
    for m in range(n):
        order = n - m - 1
        w = om.truncate(order)
        nxt = []
        for k in range(m + 2):
            acc = Jet.constant(s, 0.0, order)
            if k <= m:
                a = table[k]
                acc = acc + a.derivative() - 0.5 * (w * a.truncate(order))
            if k >= 1:
                acc = acc + table[k - 1].truncate(order)
            nxt.append(acc)
        table = nxt
    return CoeffTable(n, s, np.array([a.value for a in table]))


def _h_floor(n, s):
    return 1e-12 * max(1.0, math.log(abs(s))) ** n if abs(s) > 0 else 1e-12


def g_value(n, s, cfg=DEFAULT_CONFIG, dom=DEFAULT_DOMAIN):
    """g_n(s) = f_n(s) / h_n(s)."""
    s = as_point(s)
    f = f_jet(n, s, 0, cfg, dom).value
    h = h_jet(n, s, 0, dom).value
    if abs(h) <= _h_floor(n, s):
        raise NearZeroDenominator(f"|h_{n}({s})| = {abs(h):.3g} is too small")
    return f / h


def g_jet(n, s, K=0, cfg=DEFAULT_CONFIG, dom=DEFAULT_DOMAIN):
    s = as_point(s)
    f = f_jet(n, s, K, cfg, dom)
    h = h_jet(n, s, K, dom)
    if abs(h.value) <= _h_floor(n, s):
        raise NearZeroDenominator(f"|h_{n}({s})| = {abs(h.value):.3g} is too small")
    return f / h


def family_value(family, s, cfg=DEFAULT_CONFIG, dom=DEFAULT_DOMAIN):
    """Value of the family member named by ``family`` at ``s``."""
    if family.kind is Kind.F:
        return f_jet(family.n, s, 0, cfg, dom).value
    if family.kind is Kind.H:
        return h_jet(family.n, s, 0, dom).value
    return g_value(family.n, s, cfg, dom)


def _rotate(n, t, fvals):
    """i^j f_j(1/2+it) e^{i theta(t)} for every f_j in ``fvals``."""
    rot = np.exp(1j * theta_jet(t, 0).value.real)
    return np.array([(1j) ** j * fv * rot for j, fv in enumerate(fvals)])


def z_derivatives(n, t, cfg=DEFAULT_CONFIG, check=True):
    """Z(t), Z'(t), ..., Z^(n)(t) and the worst relative imaginary residue.

    Returns ``(values, quality)`` where ``quality`` is the largest
    ``|Im| / (1 + |Re|)`` over the orders.
    """
    t = float(t)
    jets = f_jets(n, complex(0.5, t), 0, cfg)
    raw = _rotate(n, t, [j.value for j in jets])
    quality = np.abs(raw.imag) / (1.0 + np.abs(raw.real))
    q = float(quality.max())
    if check and q > REALITY_TOL:
        j = int(quality.argmax())
        raise RealityCheckFailed(
            f"Im Z^({j})({t}) = {raw[j].imag:.3g} exceeds tolerance",
            value=raw[j].real,
            imag=raw[j].imag,
        )
    return raw.real.copy(), q


def z_derivative(n, t, cfg=DEFAULT_CONFIG, with_quality=False):
    """Z^(n)(t) = Re[i^n f_n(1/2+it) e^{i theta(t)}]."""
    _check_order(n)
    vals, q = z_derivatives(n, t, cfg)
    if with_quality:
        return float(vals[n]), q
    return float(vals[n])


def hardy_z(t, cfg=DEFAULT_CONFIG):
    return z_derivative(0, t, cfg)


def ratio_identity_residual(n, t, cfg=DEFAULT_CONFIG, dom=DEFAULT_DOMAIN):
    """Residual of Z^(n+1)/Z^(n) = i G_n'/G_n + i h_n'/h_n - F'/F at 1/2+it.

    ``G_n = h g_n`` and ``F(t) = |h(1/2+it)|``.  The left side comes from
    :func:`z_derivatives`, the right side from jets of h, h_n and g_n.
    """
    t = float(t)
    zs, _ = z_derivatives(n + 1, t, cfg)
    if abs(zs[n]) <= 1e-10 * (1.0 + abs(zs[n + 1])):
        raise NearZeroDenominator(f"Z^({n})({t}) is numerically zero")
    lhs = zs[n + 1] / zs[n]
    s = complex(0.5, t)
    dlog_h = log_h_jet(s, 1).coeffs[1]
    hn = h_jet(n, s, 1, dom)
    gn = g_jet(n, s, 1, cfg, dom)
    dlog_g = gn.coeffs[1] / gn.coeffs[0]
    dlog_hn = hn.coeffs[1] / hn.coeffs[0]
    dlog_G = dlog_h + dlog_g
    dlog_F = (1j * dlog_h).real
    rhs = 1j * dlog_G + 1j * dlog_hn - dlog_F
    return abs(lhs - rhs) / (1.0 + abs(lhs))
