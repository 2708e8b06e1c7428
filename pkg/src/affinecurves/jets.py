"""Truncated Taylor-series (jet) arithmetic of fixed order 6.

A :class:`Jet` stores the seven Taylor coefficients ``c0..c6`` of a scalar
function about an expansion point, so ``f(x0 + t) = sum c_n t^n`` and the
n-th derivative at the point is ``n! * c_n``.  Arithmetic on jets carries
all derivatives through exactly (to rounding): sums, products, quotients,
the elementary functions and composition all follow the classical power
series recurrences, truncated at order 6.

Order 6 is fixed throughout the package: curvature needs derivatives up to
order 5, its invariant derivative and the Frenet system need order 6, and
nothing here needs more.

A :class:`GraphJet` is the jet of a plane curve written as a graph
``y = y(x)``: the base point ``(x, y)`` plus the six derivatives
``y1..y6`` of y with respect to x.  :func:`graph_from_parametric` converts
a parametric jet pair ``(x(t), y(t))`` into graph form by repeated
division by ``dx/dt``, which is how parametric curves (orbits, spirals,
reconstructions) feed the invariant machinery.

All values are immutable after construction and every operation is a pure
function, so the module is safe to use from concurrent callers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

ORDER = 6
_NCOEF = ORDER + 1

__all__ = [
    "ORDER",
    "Jet",
    "GraphJet",
    "DivisionByZeroJet",
    "DomainError",
    "NotAGraph",
    "exp",
    "log",
    "sin",
    "cos",
    "atan",
    "sqrt",
    "absolute",
    "power",
    "compose",
    "graph_from_parametric",
]


class DivisionByZeroJet(ZeroDivisionError):
    """Division by a jet whose constant term is zero."""


class DomainError(ValueError):
    """Jet function evaluated outside its domain (log of 0, sqrt of negative, ...)."""


class NotAGraph(ValueError):
    """Parametric jet has a vertical tangent; the curve is not locally y(x)."""


class Jet:
    """Taylor coefficients c0..c6 of a scalar function at a point.

    ``Jet(coeffs)`` pads short coefficient lists with zeros.  Supports
    ``+ - * / **`` against jets and scalars; elementary functions are the
    module-level :func:`exp`, :func:`log`, etc.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = np.zeros(_NCOEF)
        a = np.asarray(coeffs, dtype=float)
        if a.ndim != 1 or len(a) > _NCOEF:
            raise ValueError(f"expected at most {_NCOEF} coefficients, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("jet coefficients must be finite")
        c[: len(a)] = a
        c.flags.writeable = False
        self.c = c

    @staticmethod
    def constant(v: float) -> "Jet":
        return Jet([float(v)])

    @staticmethod
    def variable(x0: float) -> "Jet":
        """The jet of the identity function x at x0."""
        return Jet([float(x0), 1.0])

    @staticmethod
    def from_derivatives(values) -> "Jet":
        """Build a jet from [f, f', f'', ...] by dividing out the factorials."""
        vals = list(values)
        return Jet([v / math.factorial(n) for n, v in enumerate(vals)])

    def derivatives(self) -> np.ndarray:
        """[f, f', ..., f^(6)] at the expansion point."""
        return self.c * np.array([math.factorial(n) for n in range(_NCOEF)], dtype=float)

    def deriv(self) -> "Jet":
        """Jet of f'.  The order-6 coefficient is unknown and left at zero."""
        d = np.zeros(_NCOEF)
        d[:ORDER] = self.c[1:] * np.arange(1, _NCOEF)
        return Jet(d)

    def __repr__(self):
        return f"Jet({self.c.tolist()})"

    def __eq__(self, other):
        return isinstance(other, Jet) and np.array_equal(self.c, other.c)

    def __hash__(self):
        return hash(self.c.tobytes())

    # arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else Jet(self.c + o.c)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else Jet(self.c - o.c)

    def __rsub__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else Jet(o.c - self.c)

    def __neg__(self):
        return Jet(-self.c)

    def __mul__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else Jet(_mul(self.c, o.c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else Jet(_div(self.c, o.c))

    def __rtruediv__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else Jet(_div(o.c, self.c))

    def __pow__(self, r):
        if isinstance(r, Jet):
            return NotImplemented
        return power(self, float(r))


def _coerce(v):
    if isinstance(v, Jet):
        return v
    if isinstance(v, (int, float, np.integer, np.floating)):
        return Jet.constant(float(v))
    return None


def _mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.convolve(a, b)[:_NCOEF]

def _div(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if b[0] == 0.0:
        raise DivisionByZeroJet("jet division by zero constant term")
    q = np.empty(_NCOEF)
    q[0] = a[0] / b[0]
    for n in range(1, _NCOEF):
        q[n] = (a[n] - np.dot(b[1 : n + 1], q[n - 1 :: -1])) / b[0]
    return q


# elementary functions ----------------------------------------------------

def exp(a: Jet) -> Jet:
    f = a.c
    g = np.empty(_NCOEF)
    g[0] = math.exp(f[0])
    for n in range(1, _NCOEF):
        # n*g_n = sum_{k=1..n} k f_k g_{n-k}
        k = np.arange(1, n + 1)
        g[n] = np.dot(k * f[1 : n + 1], g[n - 1 :: -1]) / n
    return Jet(g)


def log(a: Jet) -> Jet:
    f = a.c
    if f[0] <= 0.0:
        raise DomainError(f"log requires a positive constant term, got {f[0]}")
    g = np.empty(_NCOEF)
    g[0] = math.log(f[0])
    for n in range(1, _NCOEF):
        # n*f0*g_n = n f_n - sum_{k=1..n-1} k g_k f_{n-k}
        acc = n * f[n]
        for k in range(1, n):
            acc -= k * g[k] * f[n - k]
        g[n] = acc / (n * f[0])
    return Jet(g)


def _sincos(a: Jet):
    f = a.c
    s = np.empty(_NCOEF)
    c = np.empty(_NCOEF)
    s[0] = math.sin(f[0])
    c[0] = math.cos(f[0])
    for n in range(1, _NCOEF):
        k = np.arange(1, n + 1)
        kf = k * f[1 : n + 1]
        s[n] = np.dot(kf, c[n - 1 :: -1]) / n
        c[n] = -np.dot(kf, s[n - 1 :: -1]) / n
    return Jet(s), Jet(c)


def sin(a: Jet) -> Jet:
    return _sincos(a)[0]


def cos(a: Jet) -> Jet:
    return _sincos(a)[1]


def atan(a: Jet) -> Jet:
    # g' = f' / (1 + f^2), integrated coefficient by coefficient
    w = 1.0 + a * a
    u = _div(a.deriv().c, w.c)
    g = np.empty(_NCOEF)
    g[0] = math.atan(a.c[0])
    g[1:] = u[:ORDER] / np.arange(1, _NCOEF)
    return Jet(g)


def sqrt(a: Jet) -> Jet:
    f = a.c
    if f[0] <= 0.0:
        raise DomainError(f"sqrt requires a positive constant term, got {f[0]}")
    g = np.empty(_NCOEF)
    g[0] = math.sqrt(f[0])
    for n in range(1, _NCOEF):
        acc = f[n]
        for k in range(1, n):
            acc -= g[k] * g[n - k]
        g[n] = acc / (2.0 * g[0])
    return Jet(g)


def absolute(a: Jet) -> Jet:
    """sign(c0) * a.  Differentiating |.| through a zero is refused."""
    if a.c[0] == 0.0:
        raise DomainError("abs of a jet with zero constant term")
    return a if a.c[0] > 0.0 else -a


def power(a: Jet, r: float) -> Jet:
    """a**r.  Integer r works for any nonzero base; otherwise c0 must be positive."""
    if r == int(r):
        return _int_power(a, int(r))
    f = a.c
    if f[0] <= 0.0:
        raise DomainError(f"non-integer power requires a positive constant term, got {f[0]}")
    g = np.empty(_NCOEF)
    g[0] = f[0] ** r
    for n in range(1, _NCOEF):
        # n*f0*g_n = sum_{k=1..n} (r*k - (n-k)) f_k g_{n-k}
        acc = 0.0
        for k in range(1, n + 1):
            acc += (r * k - (n - k)) * f[k] * g[n - k]
        g[n] = acc / (n * f[0])
    return Jet(g)


def _int_power(a: Jet, n: int) -> Jet:
    if n < 0:
        if a.c[0] == 0.0:
            raise DivisionByZeroJet("negative power of a jet with zero constant term")
        return _int_power(Jet(_div(Jet.constant(1.0).c, a.c)), -n)
    out = Jet.constant(1.0)
    base = a
    while n:
        if n & 1:
            out = out * base
        base = base * base
        n >>= 1
    return out


def compose(outer: Jet, inner: Jet) -> Jet:
    """Jet of outer(inner(t)), with outer expanded at inner's constant term.

    The inner constant term is subtracted before substitution, so callers
    must pass ``outer`` expanded at ``inner.c[0]``.
    """
    u = np.array(inner.c)
    u[0] = 0.0
    uj = Jet(u)
    out = Jet.constant(outer.c[ORDER])
    for k in range(ORDER - 1, -1, -1):
        out = out * uj + outer.c[k]
    return out


# graph-form jets ---------------------------------------------------------

@dataclass(frozen=True)
class GraphJet:
    """Curve jet in graph form: base point (x, y) and derivatives y1..y6 of y(x)."""

    x: float
    y: float
    d: tuple  # (y1, y2, y3, y4, y5, y6)

    def __post_init__(self):
        if len(self.d) != ORDER:
            raise ValueError(f"expected {ORDER} derivatives, got {len(self.d)}")
        object.__setattr__(self, "d", tuple(float(v) for v in self.d))
        vals = (self.x, self.y) + self.d
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("graph jet entries must be finite")

    @property
    def y1(self):
        return self.d[0]

    @property
    def y2(self):
        return self.d[1]

    @property
    def y3(self):
        return self.d[2]

    @property
    def y4(self):
        return self.d[3]

    @property
    def y5(self):
        return self.d[4]

    @property
    def y6(self):
        return self.d[5]

    @property
    def point(self):
        return np.array([self.x, self.y])

    def y_jet(self) -> Jet:
        """Jet of y as a function of x about the base point."""
        return Jet.from_derivatives((self.y,) + self.d)

    def deriv_jet(self, m: int) -> Jet:
        """Jet of the m-th derivative y^(m)(x) about the base point.

        Coefficients beyond order 6-m are unknown and left at zero; callers
        only ever read the low-order part.
        """
        vals = ((self.y,) + self.d)[m:]
        return Jet.from_derivatives(vals)

    @staticmethod
    def from_jet(xj_or_x, yj: Jet) -> "GraphJet":
        """Graph jet from the jet of y(x); first argument is x0 or Jet.variable(x0)."""
        x0 = xj_or_x.c[0] if isinstance(xj_or_x, Jet) else float(xj_or_x)
        dv = yj.derivatives()
        return GraphJet(x=x0, y=dv[0], d=tuple(dv[1:]))


def graph_from_parametric(xj: Jet, yj: Jet) -> GraphJet:
    """Convert parameter jets (x(t), y(t)) into a graph jet of y(x).

    Climbs the orders by repeated division: dy/dx = ydot/xdot, then each
    next derivative in x is (d/dt of the previous)/xdot.  Each climb
    consumes one valid order, so order-6 inputs give all six derivatives.
    """
    xdot = xj.deriv()
    if abs(xdot.c[0]) <= 1e-12:
        raise NotAGraph(f"dx/dt = {xdot.c[0]:g} at the base point")
    derivs = []
    g = yj.deriv() / xdot
    derivs.append(g.c[0])
    for _ in range(ORDER - 1):
        g = g.deriv() / xdot
        derivs.append(g.c[0])
    return GraphJet(x=xj.c[0], y=yj.c[0], d=tuple(derivs))
