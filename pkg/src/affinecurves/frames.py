"""Moving frames: right frame, jet normalization, left frame, Frenet frame.

The right frame at a regular point is the unique orientation-preserving
affine map A (applied to the curve translated to the origin) that puts the
jet into the canonical form

    x' = y' = y1' = y3' = 0,   y2' = 1,   y4' = sigma = sign(S2),

after which y5' is the curvature.  Its entries are rational in y1..y4:

    a22 = |S2| / (3 y2^3)                 a21 = -y1 a22
    a12 = y3 |S2|^(1/2) / (3 sqrt(3) y2^3)
    a11 = -(y1 y3 - 3 y2^2) |S2|^(1/2) / (3 sqrt(3) y2^3)

with det A = sqrt(y2 * a22^3) > 0.  The left frame (e1, e2) consists of
the columns of A^(-1); e1 is the invariant tangent dr/ds.

Moving equations, with d/ds the invariant arc derivative:

    right:   d/ds A = [[-k/2, sigma/3], [-1, -k]] . A
    left:    d/ds (e1 e2) = (e1 e2) . [[k/2, -sigma/3], [1, k]]
    Frenet:  d/ds (t n r) = (t n r) . [[0, -k^2/2 + k_s/2 - sigma/3, 1],
                                       [1, 3k/2, 0],
                                       [0, 0,   0]]

with t = e1 and n = dt/ds = (k/2) t + e2.  The k-carrying signs here
differ from one published form of these systems; they are the ones under
which the finite-difference residuals in :func:`moving_eq_residual`
actually vanish, and they are pinned down by those tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .affine import AffineMap, prolong
from .invariants import (
    SingularPoint,
    arc_element,
    compute_S,
    curvature,
    curvature_jet,
    invariant_derivative,
    regularity,
)
from .jets import GraphJet

__all__ = [
    "FrameRecord",
    "right_frame",
    "normalize_jet",
    "left_frame",
    "frenet",
    "right_matrix",
    "left_matrix",
    "frenet_matrix",
    "moving_eq_residual",
    "MOVING_SYSTEMS",
]

MOVING_SYSTEMS = ("right", "left", "frenet")


@dataclass(frozen=True)
class FrameRecord:
    """Right-frame matrix, left-frame vectors and Frenet vectors at one point."""

    base: tuple
    A: np.ndarray  # right frame, rows alpha1, alpha2, det > 0
    e1: np.ndarray
    e2: np.ndarray
    t: np.ndarray
    n: np.ndarray

    def to_json_dict(self) -> dict:
        return {
            "base": list(self.base),
            "A": self.A.ravel().tolist(),
            "e1": self.e1.tolist(),
            "e2": self.e2.tolist(),
            "t": self.t.tolist(),
            "n": self.n.tolist(),
        }


def _require_regular(j: GraphJet):
    r = regularity(j)
    if not r.regular:
        raise SingularPoint(f"singular point at x = {j.x:g} ({r.kind.value})")


def right_frame(j: GraphJet) -> FrameRecord:
    """Right-frame matrix and the derived left/Frenet vectors at a regular point."""
    _require_regular(j)
    y1, y2, y3 = j.y1, j.y2, j.y3
    _, s2, _ = compute_S(j)
    abs_s2 = abs(s2)
    root_s2 = math.sqrt(abs_s2)
    y2c = y2**3
    a22 = abs_s2 / (3.0 * y2c)
    a21 = -y1 * a22
    a12 = y3 * root_s2 / (3.0 * math.sqrt(3.0) * y2c)
    a11 = -(y1 * y3 - 3.0 * y2 * y2) * root_s2 / (3.0 * math.sqrt(3.0) * y2c)
    a = np.array([[a11, a12], [a21, a22]])
    inv = np.linalg.inv(a)
    e1 = inv[:, 0].copy()
    e2 = inv[:, 1].copy()
    k = curvature(j)
    n = 0.5 * k * e1 + e2
    return FrameRecord(base=(j.x, j.y), A=a, e1=e1, e2=e2, t=e1.copy(), n=n)


def normalize_jet(j: GraphJet) -> tuple[GraphJet, AffineMap]:
    """Map a regular jet to canonical form (0, 0, 0, 1, 0, sigma, k, ...).

    Returns the canonical jet and the affine map achieving it (the right
    frame composed with the translation of the base point to the origin).
    """
    rec = right_frame(j)
    lin = rec.A
    a = AffineMap(
        lin[0, 0], lin[0, 1], lin[1, 0], lin[1, 1],
        x0=-(lin[0, 0] * j.x + lin[0, 1] * j.y),
        y0=-(lin[1, 0] * j.x + lin[1, 1] * j.y),
    )
    return prolong(a, j), a


def left_frame(j: GraphJet) -> tuple[np.ndarray, np.ndarray]:
    """Left-frame vectors by their closed forms.

    e1 = sqrt(3) y2 / |S2|^(1/2) * (1, y1)
    e2 = -y2 / |S2| * (y3, y1 y3 - 3 y2^2)

    These are the columns of the right frame's inverse; the frame record
    computes them that way, and the two must agree to 1e-10.
    """
    _require_regular(j)
    y1, y2, y3 = j.y1, j.y2, j.y3
    _, s2, _ = compute_S(j)
    abs_s2 = abs(s2)
    e1 = math.sqrt(3.0) * y2 / math.sqrt(abs_s2) * np.array([1.0, y1])
    e2 = -y2 / abs_s2 * np.array([y3, y1 * y3 - 3.0 * y2 * y2])
    return e1, e2


def frenet(j: GraphJet) -> tuple[np.ndarray, np.ndarray]:
    """Frenet pair: t = e1 (the arc-length tangent dr/ds) and n = dt/ds."""
    e1, e2 = left_frame(j)
    k = curvature(j)
    return e1, 0.5 * k * e1 + e2


# moving-equation matrices -------------------------------------------------

def right_matrix(k: float, sig: int) -> np.ndarray:
    return np.array([[-0.5 * k, sig / 3.0], [-1.0, -k]])


def left_matrix(k: float, sig: int) -> np.ndarray:
    return np.array([[0.5 * k, -sig / 3.0], [1.0, k]])


def frenet_matrix(k: float, k_s: float, sig: int) -> np.ndarray:
    return np.array(
        [
            [0.0, -0.5 * k * k + 0.5 * k_s - sig / 3.0, 1.0],
            [1.0, 1.5 * k, 0.0],
            [0.0, 0.0, 0.0],
        ]
    )


def _frame_state(j: GraphJet, which: str) -> np.ndarray:
    if which == "right":
        return right_frame(j).A
    if which == "left":
        e1, e2 = left_frame(j)
        return np.column_stack([e1, e2])
    if which == "frenet":
        t, n = frenet(j)
        return np.column_stack([np.append(t, 0.0), np.append(n, 0.0), (j.x, j.y, 1.0)])
    raise ValueError(f"unknown moving system {which!r}; expected one of {MOVING_SYSTEMS}")


def _system_matrix(j: GraphJet, which: str) -> np.ndarray:
    k = curvature(j)
    _, s2, _ = compute_S(j)
    sig = 1 if s2 > 0 else -1
    if which == "right":
        return right_matrix(k, sig)
    if which == "left":
        return left_matrix(k, sig)
    k_s = invariant_derivative(curvature_jet(j), j)
    return frenet_matrix(k, k_s, sig)


def moving_eq_residual(
    curve: Callable[[float], GraphJet],
    x_window: tuple[float, float],
    which: str,
    h: float = 1e-3,
    n_points: int = 9,
) -> float:
    """Max-norm defect of a moving-equation system over a sample window.

    `curve` maps x to the graph jet there.  The s-derivative of the frame
    is formed with a 5-point central difference in x divided by ds/dx (no
    resampling in s, so the only oracle error is the O(h^4) stencil).  The
    result should sit at discretization level when the system matrices are
    correct, which makes this the end test for every sign in them.
    """
    if which not in MOVING_SYSTEMS:
        raise ValueError(f"unknown moving system {which!r}; expected one of {MOVING_SYSTEMS}")
    a, b = x_window
    lo, hi = min(a, b) + 2 * h, max(a, b) - 2 * h
    worst = 0.0
    for x in np.linspace(lo, hi, n_points):
        j = curve(x)
        stencil = [curve(x + m * h) for m in (-2, -1, 1, 2)]
        f = [_frame_state(sj, which) for sj in stencil]
        df_dx = (f[0] - 8.0 * f[1] + 8.0 * f[2] - f[3]) / (12.0 * h)
        df_ds = df_dx / arc_element(j)
        mat = _system_matrix(j, which)
        state = _frame_state(j, which)
        if which == "right":
            defect = df_ds - mat @ state
        else:
            defect = df_ds - state @ mat
        worst = max(worst, float(np.max(np.abs(defect))))
    return worst
