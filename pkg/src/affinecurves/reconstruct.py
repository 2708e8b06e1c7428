"""Rebuild curves from curvature data; classify constant-curvature families.

A regular curve is determined up to an orientation-preserving affine map
by its curvature profile k(s) and signature sigma.  The carrier of that
statement is the Frenet system

    dF/ds = F . X(s),     F = [t | n | r] over a fixed (0, 0, 1) row,

with X = :func:`frenet_generator`(k, dk/ds, sigma).  For constant k the
solution is the matrix exponential F(s) = F(0) exp(s X), whose orbits are
exactly the one-parameter subgroup curves: power curves, x log x curves,
logarithmic spirals, exponentials, conics.  :func:`classify_constant`
inverts the closed-form curvature values of those families, including the
reciprocal-exponent pair {a, 1/a} of congruent power curves.

General profiles integrate with classical RK4; constant profiles are also
available in closed form for cross-checking the integrator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import jets as jetlib
from .expressions import Expr, eval_expr
from .jets import ORDER, GraphJet, Jet, NotAGraph, graph_from_parametric
from .matexp import expm

__all__ = [
    "K_XLOGX",
    "K_EXP",
    "StepTooLarge",
    "ConstantProfile",
    "SampledProfile",
    "ExpressionProfile",
    "CurvatureProfile",
    "Family",
    "FrenetPath",
    "frenet_generator",
    "validate_frenet_state",
    "integrate_frenet",
    "reconstruct_constant",
    "flow_graph_jets",
    "classify_constant",
]

# family-boundary curvature magnitudes of the constant-curvature catalog
K_XLOGX = 4.0 * math.sqrt(3.0) / 3.0
K_EXP = math.sqrt(6.0) / 3.0

_BOUNDARY_TOL = 1e-9


class StepTooLarge(RuntimeError):
    """RK4 state grew by more than 1e6 in a single step."""


def frenet_generator(k: float, k_s: float, sigma: int) -> np.ndarray:
    """Frenet system matrix X for curvature k, derivative dk/ds and signature."""
    return np.array(
        [
            [0.0, -0.5 * k * k + 0.5 * k_s - sigma / 3.0, 1.0],
            [1.0, 1.5 * k, 0.0],
            [0.0, 0.0, 0.0],
        ]
    )


def validate_frenet_state(f: np.ndarray) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.shape != (3, 3):
        raise ValueError(f"Frenet state must be 3x3, got {f.shape}")
    if not np.array_equal(f[2], [0.0, 0.0, 1.0]):
        raise ValueError("Frenet state must have last row (0, 0, 1)")
    if abs(np.linalg.det(f[:2, :2])) == 0.0:
        raise ValueError("Frenet state has a degenerate (t, n) block")
    return f


# curvature profiles -------------------------------------------------------

@dataclass(frozen=True)
class ConstantProfile:
    k: float
    sigma: int

    def k_and_slope(self, s: float) -> tuple[float, float]:
        return self.k, 0.0


@dataclass(frozen=True)
class SampledProfile:
    """Curvature given on a strictly increasing grid; linear interpolation."""

    s_grid: np.ndarray
    k_values: np.ndarray
    sigma: int

    def __post_init__(self):
        object.__setattr__(self, "s_grid", np.asarray(self.s_grid, dtype=float))
        object.__setattr__(self, "k_values", np.asarray(self.k_values, dtype=float))
        if len(self.s_grid) != len(self.k_values):
            raise ValueError("grid and values must have equal length")
        if len(self.s_grid) < 2 or np.any(np.diff(self.s_grid) <= 0):
            raise ValueError("profile grid must be strictly increasing")

    def k_and_slope(self, s: float) -> tuple[float, float]:
        k = float(np.interp(s, self.s_grid, self.k_values))
        slopes = np.gradient(self.k_values, self.s_grid)
        return k, float(np.interp(s, self.s_grid, slopes))


@dataclass(frozen=True)
class ExpressionProfile:
    """Curvature as an expression in the arc length (variable letter x)."""

    expr: Expr
    sigma: int

    def k_and_slope(self, s: float) -> tuple[float, float]:
        kj = eval_expr(self.expr, Jet.variable(s))
        return float(kj.c[0]), float(kj.c[1])


CurvatureProfile = Union[ConstantProfile, SampledProfile, ExpressionProfile]


def _generator_at(profile: CurvatureProfile, s: float) -> np.ndarray:
    k, ks = profile.k_and_slope(s)
    return frenet_generator(k, ks, profile.sigma)


# integration ---------------------------------------------------------------

@dataclass(frozen=True)
class FrenetPath:
    """Integrated Frenet states F(s) = [t | n | r] on a sample grid."""

    s: np.ndarray
    states: np.ndarray  # shape (len(s), 3, 3)

    @property
    def points(self) -> np.ndarray:
        """Curve samples r(s), shape (len(s), 2)."""
        return self.states[:, :2, 2]

    def tangents(self) -> np.ndarray:
        return self.states[:, :2, 0]


def integrate_frenet(
    profile: CurvatureProfile,
    f0: np.ndarray,
    s_span: tuple[float, float],
    h: float = 1e-3,
) -> FrenetPath:
    """Classical RK4 for dF/ds = F X(s) from F(s0) = f0.

    The homogeneous last row is re-pinned to (0, 0, 1) after every step.
    Raises :class:`StepTooLarge` if the state norm grows by more than 1e6
    within one step.
    """
    if h <= 0:
        raise ValueError("step must be positive")
    f = validate_frenet_state(f0).copy()
    s0, s1 = float(s_span[0]), float(s_span[1])
    span = s1 - s0
    if span == 0.0:
        return FrenetPath(s=np.array([s0]), states=np.array([f]))
    n = max(1, round(abs(span) / h))
    dt = span / n
    grid = s0 + dt * np.arange(n + 1)
    states = np.empty((n + 1, 3, 3))
    states[0] = f
    for i in range(n):
        s = grid[i]
        k1 = f @ _generator_at(profile, s)
        k2 = (f + 0.5 * dt * k1) @ _generator_at(profile, s + 0.5 * dt)
        k3 = (f + 0.5 * dt * k2) @ _generator_at(profile, s + 0.5 * dt)
        k4 = (f + dt * k3) @ _generator_at(profile, s + dt)
        nxt = f + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        nxt[2] = (0.0, 0.0, 1.0)
        if np.linalg.norm(nxt) > 1e6 * max(np.linalg.norm(f), 1e-30):
            raise StepTooLarge(f"state norm exploded at s = {s:g}")
        f = nxt
        states[i + 1] = f
    return FrenetPath(s=grid, states=states)


def reconstruct_constant(
    k: float,
    sigma: int,
    s_span: tuple[float, float],
    f0: np.ndarray | None = None,
    n: int = 201,
) -> FrenetPath:
    """Closed-form constant-curvature curve F(s) = F0 exp(s X) on a sample grid.

    Default initial frame is the identity frame at the origin.
    """
    x = frenet_generator(k, 0.0, sigma)
    f = np.eye(3) if f0 is None else validate_frenet_state(f0)
    s = np.linspace(float(s_span[0]), float(s_span[1]), n)
    states = np.stack([f @ expm(si * x) for si in s])
    states[:, 2] = (0.0, 0.0, 1.0)
    return FrenetPath(s=s, states=states)


def _profile_matrix_jet(profile: CurvatureProfile, s: float) -> list[np.ndarray]:
    """Taylor coefficients in u of X(s + u), one 3x3 matrix per order."""
    if isinstance(profile, ConstantProfile):
        out = [np.zeros((3, 3)) for _ in range(ORDER + 1)]
        out[0] = frenet_generator(profile.k, 0.0, profile.sigma)
        return out
    if isinstance(profile, ExpressionProfile):
        kj = eval_expr(profile.expr, Jet.variable(s))
        entry = -0.5 * kj * kj + 0.5 * kj.deriv() - profile.sigma / 3.0
        diag = 1.5 * kj
        out = []
        for m in range(ORDER + 1):
            xm = np.zeros((3, 3))
            xm[0, 1] = entry.c[m]
            xm[1, 1] = diag.c[m]
            if m == 0:
                xm[0, 2] = 1.0
                xm[1, 0] = 1.0
            out.append(xm)
        return out
    raise TypeError("jet transport needs a constant or expression profile")


def flow_graph_jets(profile: CurvatureProfile, path: FrenetPath) -> list[GraphJet | None]:
    """Graph jets of the reconstructed curve at every path sample.

    Expands the flow map around each state by the jet recurrence
    Phi_{m+1} = (1/(m+1)) sum Phi_i X_{m-i}, reads off the position column
    as parameter jets and converts to graph form.  This is how curvature
    is recomputed along reconstructions without refitting points; entries
    are None at vertical-tangent samples.
    """
    out: list[GraphJet | None] = []
    for s, f in zip(path.s, path.states):
        xc = _profile_matrix_jet(profile, float(s))
        phi = [np.eye(3)]
        for m in range(ORDER):
            acc = np.zeros((3, 3))
            for i in range(m + 1):
                acc += phi[i] @ xc[m - i]
            phi.append(acc / (m + 1))
        cols = np.stack([f @ p for p in phi])  # (7, 3, 3)
        xj = Jet(cols[:, 0, 2])
        yj = Jet(cols[:, 1, 2])
        try:
            out.append(graph_from_parametric(xj, yj))
        except NotAGraph:
            out.append(None)
    return out


# classification -------------------------------------------------------------

@dataclass(frozen=True)
class Family:
    """Constant-curvature family tag with solved parameters."""

    family: str
    params: dict = field(default_factory=dict)
    congruent_params: dict | None = None

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "congruent_params": self.congruent_params,
        }


def _power_roots(k: float, sigma: int) -> tuple[float, float]:
    """Exponent pair {a, 1/a} with curvature magnitude |k| at signature sigma.

    |k| = (2 sqrt(3)/3) |a+1| / sqrt(|(2a-1)(a-2)|) squares to the
    reciprocal-symmetric quadratic A a^2 - B a + A = 0 with
    A = 6k^2 + 4 sigma', B = 15k^2 - 8 sigma' (sigma' = +1 inside the
    exponent band (1/2, 2), -1 outside), so the two roots are exact
    reciprocals and one stable root suffices.
    """
    q = k * k
    if sigma > 0:
        a_coef = 6.0 * q + 4.0
        b_coef = 15.0 * q - 8.0
    else:
        a_coef = 6.0 * q - 4.0
        b_coef = 15.0 * q + 8.0
    disc = b_coef * b_coef - 4.0 * a_coef * a_coef
    disc = max(disc, 0.0)
    root = (b_coef + math.sqrt(disc)) / (2.0 * a_coef)
    if abs(root) < 1.0:
        root = 1.0 / root
    return root, 1.0 / root


def classify_constant(k: float, sigma: int) -> Family:
    """Family of the constant-curvature curve with invariants (k, sigma).

    Decision is on |k| (the sign of k is an orientation choice); family
    boundaries |k| = 4 sqrt(3)/3 (x log x) and sqrt(6)/3 (exponential) are
    matched with absolute tolerance 1e-9.  Total: never raises.
    """
    ak = abs(k)
    if sigma > 0:
        if ak <= _BOUNDARY_TOL:
            return Family("Ellipse/Circle")
        if abs(ak - K_XLOGX) <= _BOUNDARY_TOL:
            return Family("XLogX")
        if ak < K_XLOGX:
            # |k| = K_XLOGX * |rho| / sqrt(rho^2 + 9) for the spiral ratio rho = a/b
            ratio = k / K_XLOGX
            rho = -3.0 * ratio / math.sqrt(1.0 - ratio * ratio)
            return Family("LogSpiral", {"a_over_b": rho})
        a, inv = _power_roots(k, +1)
        return Family("PowerCurve", {"a": a}, {"a": inv})
    if ak <= _BOUNDARY_TOL:
        return Family("Hyperbola", {"a": -1.0})
    if abs(ak - K_EXP) <= _BOUNDARY_TOL:
        return Family("Exponential")
    a, inv = _power_roots(k, -1)
    return Family("PowerCurve", {"a": a}, {"a": inv})
