"""Truncated Taylor expansions ("jets") and point validation.

A :class:`Jet` of order K at a center ``s`` stores ``c_k = f^(k)(s)/k!`` for
k = 0..K.  Arithmetic is the usual truncated power-series algebra: sums act
coefficient-wise, products are Cauchy convolutions, and differentiation
shifts the coefficients down by one and drops the top order.
"""
import math
from math import factorial

import numpy as np


def as_point(s):
    """Coerce ``s`` to a finite Python complex.

    Points are plain ``complex`` values throughout the package; this is the
    single gate that rejects NaN and infinities.
    """
    if isinstance(s, str):
        s = parse_point(s)
    z = complex(s)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"point must be finite, got {z!r}")
    return z


def parse_point(text):
    """Parse ``"2"``, ``"4+9i"``, ``"0.5-14.1j"`` or ``"3i"`` into a complex."""
    t = text.strip().replace(" ", "").replace("I", "j").replace("i", "j")
    if t in ("j", "+j"):
        return 1j
    if t == "-j":
        return -1j
    return complex(t)


class Jet:
    """Truncated Taylor expansion of an analytic function about ``center``.

    Parameters
    ----------
    center : complex
        Expansion point.
    coeffs : array_like
        Taylor coefficients ``c_0 .. c_K``.
    """

    __slots__ = ("center", "coeffs")

    def __init__(self, center, coeffs):
        self.center = complex(center)
        c = np.array(coeffs, dtype=complex, copy=True).reshape(-1)
        if c.size == 0:
            raise ValueError("a jet needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("jet coefficients must be finite")
        c.setflags(write=False)
        self.coeffs = c

    # constructors
    @classmethod
    def constant(cls, center, value, order):
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return cls(center, c)

    @classmethod
    def identity(cls, center, order):
        """Jet of the function ``z -> z`` at ``center``."""
        c = np.zeros(order + 1, dtype=complex)
        c[0] = center
        if order >= 1:
            c[1] = 1.0
        return cls(center, c)

    @classmethod
    def from_derivatives(cls, center, derivs):
        d = np.asarray(derivs, dtype=complex)
        fact = np.array([factorial(k) for k in range(d.size)], dtype=float)
        return cls(center, d / fact)

    # basic accessors
    @property
    def order(self):
        return self.coeffs.size - 1

    @property
    def value(self):
        return complex(self.coeffs[0])

    def derivatives(self):
        """Return ``f^(k)(center)`` for k = 0..K."""
        fact = np.array([factorial(k) for k in range(self.coeffs.size)], dtype=float)
        return self.coeffs * fact

    def derivative_value(self, k):
        return complex(self.coeffs[k]) * factorial(k)

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot raise jet order {self.order} to {order}")
        return Jet(self.center, self.coeffs[: order + 1])

    def conj(self):
        """Jet of ``conj(f(conj(z)))`` at ``conj(center)``."""
        return Jet(self.center.conjugate(), np.conj(self.coeffs))

    def real(self):
        return np.real(self.coeffs).copy()

    # calculus
    def derivative(self):
        """Jet of f' of order K-1."""
        if self.order == 0:
            raise ValueError("differentiating an order-0 jet loses all information")
        k = np.arange(1, self.coeffs.size)
        return Jet(self.center, self.coeffs[1:] * k)

    def reflect(self, new_center):
        """Jet of ``z -> f(a - z)`` at ``new_center`` where ``a = center + new_center``.

        Coefficients pick up alternating signs.
        """
        signs = (-1.0) ** np.arange(self.coeffs.size)
        return Jet(new_center, self.coeffs * signs)

    def scale_argument(self, factor, new_center):
        """Jet of ``z -> f(factor * z)`` at ``new_center`` (``center = factor*new_center``)."""
        powers = complex(factor) ** np.arange(self.coeffs.size)
        return Jet(new_center, self.coeffs * powers)

    def __call__(self, z):
        """Evaluate the truncated polynomial at ``z`` (Horner)."""
        dz = complex(z) - self.center
        acc = 0j
        for c in self.coeffs[::-1]:
            acc = acc * dz + c
        return acc

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Jet):
            if abs(other.center - self.center) > 1e-12 * (1 + abs(self.center)):
                raise ValueError("jets expanded about different centers")
            return other
        return None

    def _common(self, other):
        k = min(self.order, other.order)
        return self.coeffs[: k + 1], other.coeffs[: k + 1]

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            c = self.coeffs.copy()
            c[0] += other
            return Jet(self.center, c)
        a, b = self._common(o)
        return Jet(self.center, a + b)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.center, -self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return Jet(self.center, self.coeffs * other)
        a, b = self._common(o)
        return Jet(self.center, np.convolve(a, b)[: a.size])

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return Jet(self.center, self.coeffs / other)
        a, b = self._common(o)
        if b[0] == 0:
            raise ZeroDivisionError("jet division by a function vanishing at the center")
        q = np.zeros_like(a)
        for k in range(a.size):
            q[k] = (a[k] - np.dot(b[1 : k + 1], q[:k][::-1])) / b[0]
        return Jet(self.center, q)

    def __rtruediv__(self, other):
        return Jet.constant(self.center, other, self.order) / self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = Jet.constant(self.center, 1.0, self.order)
        for _ in range(n):
            out = out * self
        return out

    def log_derivative(self):
        """Jet of f'/f, order K-1."""
        return self.derivative() / self.truncate(self.order - 1)

    def __repr__(self):
        return f"Jet(center={self.center!r}, order={self.order}, coeffs={self.coeffs!r})"

    def allclose(self, other, rtol=1e-12, atol=0.0):
        a, b = self._common(other)
        return bool(np.allclose(a, b, rtol=rtol, atol=atol))


def pole_jet(center, pole, order, residue=1.0):
    """Jet of ``residue / (z - pole)`` at ``center``."""
    d = complex(center) - complex(pole)
    if d == 0:
        raise ZeroDivisionError("center coincides with the pole")
    k = np.arange(order + 1)
    return Jet(center, residue * (-1.0) ** k / d ** (k + 1))

