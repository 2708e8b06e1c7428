"""The plane affine group: point action, jet prolongation, one-parameter subgroups.

An :class:`AffineMap` is an invertible linear part plus a translation.  Its
action on curves induces an action on graph jets, implemented twice on
purpose:

* :func:`prolong_closed_form` evaluates the explicit rational formulas for
  the transformed derivatives through order 5 (order 6 comes from the
  generic path, which has no published closed form);
* :func:`prolong` transports the jet generically: write the curve as
  parameter jets, apply the map, convert back to graph form.

The two paths are kept permanently as mutual oracles, since the order-4/5
polynomials are long enough that a transcription slip must be detectable.

One-parameter subgroups exp(tX) of the group are generated by 3x3 matrices
X with zero last row; their orbits are exactly the constant-curvature
curves, which is what makes them worth sampling (:func:`orbit_curve`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .jets import ORDER, GraphJet, Jet, NotAGraph, graph_from_parametric
from .matexp import expm

__all__ = [
    "AffineMap",
    "VerticalTangent",
    "prolong_closed_form",
    "prolong",
    "one_param_subgroup",
    "orbit_curve",
    "OrbitSample",
    "validate_generator",
]

_GAMMA_TOL = 1e-12


class VerticalTangent(ValueError):
    """The transformed curve leaves graph form (a11 + a12*y1 ~ 0)."""


@dataclass(frozen=True)
class AffineMap:
    """x' = a11 x + a12 y + x0,  y' = a21 x + a22 y + y0, with det != 0."""

    a11: float
    a12: float
    a21: float
    a22: float
    x0: float = 0.0
    y0: float = 0.0

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22", "x0", "y0"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if abs(self.det) <= 1e-12:
            raise ValueError(f"affine map is singular: det = {self.det:g}")

    @property
    def det(self) -> float:
        return self.a11 * self.a22 - self.a21 * self.a12

    @property
    def orientation(self) -> int:
        return 1 if self.det > 0 else -1

    @property
    def linear(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]])

    @property
    def translation(self) -> np.ndarray:
        return np.array([self.x0, self.y0])

    def matrix(self) -> np.ndarray:
        """Homogeneous 3x3 form."""
        return np.array(
            [[self.a11, self.a12, self.x0], [self.a21, self.a22, self.y0], [0.0, 0.0, 1.0]]
        )

    @staticmethod
    def identity() -> "AffineMap":
        return AffineMap(1.0, 0.0, 0.0, 1.0)

    @staticmethod
    def translate(x0: float, y0: float) -> "AffineMap":
        return AffineMap(1.0, 0.0, 0.0, 1.0, x0, y0)

    @staticmethod
    def from_linear(m, x0: float = 0.0, y0: float = 0.0) -> "AffineMap":
        m = np.asarray(m, dtype=float)
        return AffineMap(m[0, 0], m[0, 1], m[1, 0], m[1, 1], x0, y0)

    @staticmethod
    def from_matrix(h) -> "AffineMap":
        h = np.asarray(h, dtype=float)
        return AffineMap(h[0, 0], h[0, 1], h[1, 0], h[1, 1], h[0, 2], h[1, 2])

    def apply_point(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        return self.linear @ p + self.translation

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other: (self.compose(other))(p) = self(other(p))."""
        return AffineMap.from_matrix(self.matrix() @ other.matrix())

    def inverse(self) -> "AffineMap":
        inv = np.linalg.inv(self.linear)
        t = -inv @ self.translation
        return AffineMap.from_linear(inv, t[0], t[1])


def compose(a: AffineMap, b: AffineMap) -> AffineMap:
    return a.compose(b)


def inverse(a: AffineMap) -> AffineMap:
    return a.inverse()


# prolongation ------------------------------------------------------------

def prolong_closed_form(a: AffineMap, j: GraphJet, _n_bias: float = 0.0) -> GraphJet:
    """Transformed jet through order 5 by the explicit formulas; order 6 generic.

    Requires a pure linear map (zero translation).  ``_n_bias`` is a fault
    hook for the verification CLI: it perturbs the order-5 numerator
    polynomial multiplicatively so the sweep can demonstrate it would catch
    a transcription error.
    """
    if a.x0 != 0.0 or a.y0 != 0.0:
        raise ValueError("closed-form prolongation expects a linear map (x0 = y0 = 0)")
    y1, y2, y3, y4, y5 = j.d[:5]
    a11, a12, a21, a22 = a.a11, a.a12, a.a21, a.a22
    delta = a.det
    g = a11 + a12 * y1
    if abs(g) <= _GAMMA_TOL:
        raise VerticalTangent(f"a11 + a12*y1 = {g:g}")
    t1 = (a21 + a22 * y1) / g
    t2 = delta * y2 / g**3
    t3 = delta * (a11 * y3 + a12 * y1 * y3 - 3.0 * a12 * y2**2) / g**5
    m = g**2 * y4 - 10.0 * a12 * g * y2 * y3 + 15.0 * a12**2 * y2**3
    t4 = delta * m / g**7
    n = (
        g**3 * y5
        - 15.0 * a12 * g**2 * y2 * y4
        - 10.0 * a12 * g**2 * y3**2
        + 105.0 * a12**2 * g * y2**2 * y3
        - 105.0 * a12**3 * y2**4
    )
    n *= 1.0 + _n_bias
    t5 = delta * n / g**9
    t6 = prolong(a, j).y6
    p = a.apply_point(j.point)
    return GraphJet(x=p[0], y=p[1], d=(t1, t2, t3, t4, t5, t6))


def prolong(a: AffineMap, j: GraphJet) -> GraphJet:
    """Transformed jet via generic transport: parametrize, map, re-graph."""
    g = a.a11 + a.a12 * j.y1
    if abs(g) <= _GAMMA_TOL:
        raise VerticalTangent(f"a11 + a12*y1 = {g:g}")
    xj = Jet.variable(j.x)
    yj = j.y_jet()
    xit = a.a11 * xj + a.a12 * yj + a.x0
    eta = a.a21 * xj + a.a22 * yj + a.y0
    return graph_from_parametric(xit, eta)


# one-parameter subgroups --------------------------------------------------

def validate_generator(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (3, 3):
        raise ValueError(f"generator must be 3x3, got shape {x.shape}")
    if np.any(x[2] != 0.0):
        raise ValueError("generator must have a zero last row")
    return x


def one_param_subgroup(x, t: float) -> AffineMap:
    """exp(t*X) as an affine map.

    Always computes the scaling-and-squaring exponential; when X matches
    one of the recognized canonical generator shapes, the closed form is
    used instead and cross-checked against the series result to 1e-10.
    """
    x = validate_generator(x)
    series = expm(t * x)
    closed = _closed_form_exp(x, t)
    if closed is not None:
        if np.max(np.abs(closed - series)) > 1e-10 * max(1.0, np.max(np.abs(closed))):
            raise ArithmeticError("closed-form subgroup disagrees with the series exponential")
        return AffineMap.from_matrix(closed)
    return AffineMap.from_matrix(series)


def _closed_form_exp(x: np.ndarray, t: float):
    """Closed forms for the canonical fixed-point generator shapes, else None."""
    tol = 1e-12
    b = x[:2, :2]
    if np.max(np.abs(x[:2, 2])) > tol:
        # shapes with a translation part are handled numerically; the one
        # published closed form for them is not internally consistent
        return None
    h = np.eye(3)
    if abs(b[0, 1]) <= tol and abs(b[1, 0]) <= tol:
        h[0, 0] = math.exp(b[0, 0] * t)
        h[1, 1] = math.exp(b[1, 1] * t)
        return h
    if abs(b[0, 0] - b[1, 1]) <= tol and abs(b[1, 0]) <= tol and abs(b[0, 1] - 1.0) <= tol:
        e = math.exp(b[0, 0] * t)
        h[0, 0] = h[1, 1] = e
        h[0, 1] = t * e
        return h
    if abs(b[0, 0] - b[1, 1]) <= tol and abs(b[0, 1] + b[1, 0]) <= tol:
        lam, mu = b[0, 0], b[1, 0]
        e = math.exp(lam * t)
        c, s = math.cos(mu * t), math.sin(mu * t)
        h[0, 0] = h[1, 1] = e * c
        h[0, 1] = -e * s
        h[1, 0] = e * s
        return h
    return None


@dataclass(frozen=True)
class OrbitSample:
    """One sample of an orbit curve; jet is None at vertical-tangent samples."""

    t: float
    point: tuple
    jet: GraphJet | None


def orbit_curve(x, p, t_grid) -> list[OrbitSample]:
    """Sample the orbit t -> exp(t*X) p with graph jets where they exist.

    The jet at parameter t is obtained by expanding s -> exp((t+s)X) p as
    order-6 jets in s (the matrix series in s is exact through order 6)
    and converting to graph form.  Samples with a vertical tangent carry
    jet=None instead of aborting the sweep.
    """
    x = validate_generator(x)
    p = np.asarray(p, dtype=float)
    ph = np.array([p[0], p[1], 1.0])
    # coefficient matrices of the jet of exp(sX): X^k / k!
    powers = [np.eye(3)]
    for k in range(1, ORDER + 1):
        powers.append(powers[-1] @ x / k)
    local = [m @ ph for m in powers]  # jets of exp(sX) p, one 3-vector per order
    out = []
    for t in t_grid:
        g = expm(float(t) * x)
        coeffs = np.stack([g @ v for v in local])  # shape (7, 3)
        xj = Jet(coeffs[:, 0])
        yj = Jet(coeffs[:, 1])
        pt = (coeffs[0, 0], coeffs[0, 1])
        try:
            jet = graph_from_parametric(xj, yj)
        except NotAGraph:
            jet = None
        out.append(OrbitSample(t=float(t), point=pt, jet=jet))
    return out
