"""Pointwise differential invariants of plane curves under the affine group.

The three basic polynomial expressions in the graph derivatives are

    S1 = y2
    S2 = 3 y2 y4 - 5 y3^2
    S3 = 9 y2^2 y5 - 45 y2 y3 y4 + 40 y3^3

They rescale by Delta^p Gamma^q under a prolonged affine map with weights
(1,-3), (2,-8) and (3,-12), which makes

    ds/dx = |S2|^(1/2) / (sqrt(3) y2)        invariant arc element
    k     = sqrt(3) S3 / (3 |S2|^(3/2))      curvature
    sigma = sign(S2)                         signature

a complete set: k(s) and sigma determine a regular curve up to an
orientation-preserving affine map, and an orientation-reversing map flips
the sign of k while leaving sigma alone.

A point is regular when S1 and S2 are both nonzero; all-singular curves
are affinely congruent to a line (S1 = 0) or a parabola (S2 = 0), which is
what :func:`classify_singular` reports.

Note the sign convention: ds/dx keeps the sign of y2, so the arc length
runs backward in x on arcs with y2 < 0.  That is what makes the tangent
dr/ds coincide with the left-frame vector e1 everywhere.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import jets
from .jets import GraphJet, Jet

__all__ = [
    "EPS_REGULAR",
    "SingularKind",
    "Regularity",
    "SingularPoint",
    "NotAllSingular",
    "S3Zero",
    "InvariantRecord",
    "compute_S",
    "s_scales",
    "regularity",
    "classify_singular",
    "arc_element",
    "curvature",
    "curvature_jet",
    "invariant_derivative",
    "modular_T",
    "invariant_record",
]

EPS_REGULAR = 1e-10
_EPS_S3 = 1e-12


class SingularPoint(ValueError):
    """Invariant requested at a point with S1 ~ 0 or S2 ~ 0."""


class NotAllSingular(ValueError):
    """Singular-curve classification given a window containing a regular point."""


class S3Zero(ValueError):
    """Modular invariants T1, T2 are undefined where S3 vanishes."""


class SingularKind(enum.Enum):
    LINE_LIKE = "LineLike"
    PARABOLA_LIKE = "ParabolaLike"
    MIXED_OR_UNKNOWN = "MixedOrUnknown"


@dataclass(frozen=True)
class Regularity:
    regular: bool
    kind: SingularKind | None = None


def compute_S(j: GraphJet) -> tuple[float, float, float]:
    """The three basic polynomial expressions (S1, S2, S3)."""
    y2, y3, y4, y5 = j.y2, j.y3, j.y4, j.y5
    s1 = y2
    s2 = 3.0 * y2 * y4 - 5.0 * y3 * y3
    s3 = 9.0 * y2 * y2 * y5 - 45.0 * y2 * y3 * y4 + 40.0 * y3**3
    return s1, s2, s3


def s_scales(j: GraphJet) -> tuple[float, float, float]:
    """Natural magnitudes to compare S1, S2, S3 against.

    The raw expressions are not scale free, so thresholds are taken
    relative to same-homogeneity combinations of the derivatives (for S2
    and S3 simply the constituent-term magnitudes).
    """
    y2, y3, y4, y5 = j.y2, j.y3, j.y4, j.y5
    sc1 = abs(y2) + abs(y3) ** (2.0 / 3.0) + abs(y4) ** 0.5 + abs(y5) ** 0.4
    sc2 = 3.0 * abs(y2 * y4) + 5.0 * y3 * y3
    sc3 = 9.0 * y2 * y2 * abs(y5) + 45.0 * abs(y2 * y3 * y4) + 40.0 * abs(y3) ** 3
    return sc1, sc2, sc3


def regularity(j: GraphJet) -> Regularity:
    """Regular iff both S1 and S2 clear their relative thresholds."""
    s1, s2, _ = compute_S(j)
    sc1, sc2, _ = s_scales(j)
    s1_zero = abs(s1) <= EPS_REGULAR * sc1
    s2_zero = abs(s2) <= EPS_REGULAR * sc2
    if not s1_zero and not s2_zero:
        return Regularity(regular=True)
    kind = SingularKind.LINE_LIKE if s1_zero else SingularKind.PARABOLA_LIKE
    return Regularity(regular=False, kind=kind)


def classify_singular(window) -> SingularKind:
    """Classify an all-singular sample window as line-like or parabola-like.

    Requires at least five samples; raises :class:`NotAllSingular` if any
    sample is regular.  Line-like means S1 ~ 0 throughout; everything else
    (including the square-root branch, which is congruent to a parabola)
    is parabola-like.
    """
    window = list(window)
    if len(window) < 5:
        raise ValueError(f"need at least 5 samples, got {len(window)}")
    regs = [regularity(j) for j in window]
    if any(r.regular for r in regs):
        raise NotAllSingular("window contains a regular point")
    if all(r.kind is SingularKind.LINE_LIKE for r in regs):
        return SingularKind.LINE_LIKE
    return SingularKind.PARABOLA_LIKE


def _require_regular(j: GraphJet):
    r = regularity(j)
    if not r.regular:
        raise SingularPoint(f"singular point at x = {j.x:g} ({r.kind.value})")


def arc_element(j: GraphJet) -> float:
    """ds/dx = |S2|^(1/2) / (sqrt(3) y2); signed with y2, see module notes."""
    _require_regular(j)
    s1, s2, _ = compute_S(j)
    return math.sqrt(abs(s2)) / (math.sqrt(3.0) * s1)


def curvature(j: GraphJet) -> float:
    """k = sqrt(3) S3 / (3 |S2|^(3/2))."""
    _require_regular(j)
    _, s2, s3 = compute_S(j)
    return math.sqrt(3.0) * s3 / (3.0 * abs(s2) ** 1.5)


def sigma(j: GraphJet) -> int:
    """Signature sign(S2) at a regular point."""
    _require_regular(j)
    _, s2, _ = compute_S(j)
    return 1 if s2 > 0 else -1


def curvature_jet(j: GraphJet) -> Jet:
    """Curvature as a jet in x along the curve.

    Built by exact jet arithmetic from the derivative jets, so the order-1
    coefficient is dk/dx (it consumes y6).  Coefficients beyond order 1
    are truncation garbage and must not be read.
    """
    _require_regular(j)
    y2j = j.deriv_jet(2)
    y3j = j.deriv_jet(3)
    y4j = j.deriv_jet(4)
    y5j = j.deriv_jet(5)
    s2j = 3.0 * y2j * y4j - 5.0 * y3j * y3j
    s3j = 9.0 * y2j * y2j * y5j - 45.0 * y2j * y3j * y4j + 40.0 * y3j * y3j * y3j
    abs_s2 = jets.absolute(s2j)
    return math.sqrt(3.0) / 3.0 * s3j / jets.power(abs_s2, 1.5)


def invariant_derivative(fjet: Jet, j: GraphJet) -> float:
    """df/ds = (df/dx) / (ds/dx) for a scalar f given as a jet in x at the point."""
    return fjet.c[1] / arc_element(j)


def modular_T(j: GraphJet) -> tuple[float, float]:
    """T1 = S1^4/S3 (weight (1,0)) and T2 = S1 S2/S3 (weight (0,1))."""
    s1, s2, s3 = compute_S(j)
    sc3 = s_scales(j)[2]
    if abs(s3) <= _EPS_S3 * sc3 or s3 == 0.0:
        raise S3Zero(f"S3 = {s3:g} is below threshold at x = {j.x:g}")
    return s1**4 / s3, s1 * s2 / s3


@dataclass(frozen=True)
class InvariantRecord:
    """All pointwise invariants at one sample; None where undefined."""

    x: float
    y: float
    S1: float
    S2: float
    S3: float
    sigma: int | None
    regular: bool
    ds_dx: float | None
    k: float | None
    k_s: float | None
    singular_kind: SingularKind | None = None

    def to_json_dict(self) -> dict:
        return {
            "x": self.x,
            "y": self.y,
            "S1": self.S1,
            "S2": self.S2,
            "S3": self.S3,
            "sigma": self.sigma,
            "regular": self.regular,
            "ds_dx": self.ds_dx,
            "k": self.k,
            "k_s": self.k_s,
        }


def invariant_record(j: GraphJet) -> InvariantRecord:
    """Bundle every pointwise invariant; total (never raises on singular input)."""
    s1, s2, s3 = compute_S(j)
    reg = regularity(j)
    if not reg.regular:
        return InvariantRecord(
            x=j.x, y=j.y, S1=s1, S2=s2, S3=s3, sigma=None, regular=False,
            ds_dx=None, k=None, k_s=None, singular_kind=reg.kind,
        )
    ds = arc_element(j)
    k = curvature(j)
    ks = invariant_derivative(curvature_jet(j), j)
    return InvariantRecord(
        x=j.x, y=j.y, S1=s1, S2=s2, S3=s3, sigma=1 if s2 > 0 else -1,
        regular=True, ds_dx=ds, k=k, k_s=ks,
    )
