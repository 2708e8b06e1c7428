"""Randomized verification sweeps for the transformation laws.

One sweep draws (regular jet, affine map) pairs, transports the jet with
the closed-form prolongation and checks every law at once:

* curvature and signature invariance under orientation-preserving maps,
* the curvature sign flip (signature unchanged) under orientation-
  reversing maps,
* the modular rescaling weights of S1, S2, S3 and T1, T2.

The closed-form path is used deliberately: it is the side of the oracle
pair these sweeps are able to falsify.  ``n_bias`` forwards the fault
hook of :func:`affinecurves.affine.prolong_closed_form`, so a deliberate
perturbation of the order-5 numerator makes the curvature laws fail and
demonstrates the sweep has teeth.

Everything is deterministic under a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .affine import AffineMap, prolong_closed_form
from .invariants import compute_S, curvature, modular_T
from .jets import GraphJet

__all__ = ["LawResult", "VerifyReport", "random_regular_jet", "random_map", "run_invariance_sweep"]

DEFAULT_TOL = 1e-8

# laws checked per trial, in report order
_LAW_NAMES = (
    "curvature invariance (det > 0)",
    "curvature sign flip (det < 0)",
    "signature invariance",
    "S1 weight (1, -3)",
    "S2 weight (2, -8)",
    "S3 weight (3, -12)",
    "T1 weight (1, 0)",
    "T2 weight (0, 1)",
)


@dataclass
class LawResult:
    name: str
    max_rel_err: float
    tol: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "max_rel_err": self.max_rel_err,
            "tol": self.tol,
            "passed": self.passed,
        }


@dataclass
class VerifyReport:
    sweep: str
    trials: int
    seed: int
    laws: list[LawResult] = field(default_factory=list)

    @property
    def max_rel_err(self) -> float:
        return max(law.max_rel_err for law in self.laws)

    @property
    def passed(self) -> bool:
        return all(law.passed for law in self.laws)

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "sweep": self.sweep,
            "trials": self.trials,
            "seed": self.seed,
            "max_rel_err": self.max_rel_err,
            "passed": self.passed,
            "laws": [law.to_json_dict() for law in self.laws],
        }


def random_regular_jet(rng: np.random.Generator) -> GraphJet:
    """Jet with derivative entries in [-2, 2] and |S1|, |S2|, |S3| >= 0.1.

    The margins keep the relative-error checks meaningful (k is bounded
    away from zero and T1, T2 exist).
    """
    while True:
        d = rng.uniform(-2.0, 2.0, size=6)
        j = GraphJet(x=rng.uniform(-1.0, 1.0), y=rng.uniform(-1.0, 1.0), d=tuple(d))
        s1, s2, s3 = compute_S(j)
        if abs(s1) >= 0.1 and abs(s2) >= 0.1 and abs(s3) >= 0.1:
            return j


def random_map(rng: np.random.Generator, j: GraphJet) -> AffineMap:
    """Linear map with entries in [-2, 2], det >= 0.1 and |a11 + a12 y1| >= 0.1."""
    while True:
        m = rng.uniform(-2.0, 2.0, size=4)
        try:
            a = AffineMap(m[0], m[1], m[2], m[3])
        except ValueError:
            continue
        if a.det < 0.1:
            continue
        if abs(a.a11 + a.a12 * j.y1) >= 0.1:
            return a


def run_invariance_sweep(
    trials: int, seed: int, tol: float = DEFAULT_TOL, n_bias: float = 0.0
) -> VerifyReport:
    """Check all transformation laws on `trials` random (jet, map) pairs.

    Each trial tests the drawn map (det > 0) and its first-row negation
    (det < 0), so both orientation laws see every jet.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    errs = dict.fromkeys(_LAW_NAMES, 0.0)
    for _ in range(trials):
        j = random_regular_jet(rng)
        a = random_map(rng, j)
        flipped = AffineMap(-a.a11, -a.a12, a.a21, a.a22)
        k = curvature(j)
        s = compute_S(j)
        t1, t2 = modular_T(j)
        for m, preserve in ((a, True), (flipped, False)):
            jp = prolong_closed_form(m, j, _n_bias=n_bias)
            kp = curvature(jp)
            sp = compute_S(jp)
            t1p, t2p = modular_T(jp)
            det = m.det
            g = m.a11 + m.a12 * j.y1
            if preserve:
                _bump(errs, _LAW_NAMES[0], abs(kp - k) / abs(k))
            else:
                _bump(errs, _LAW_NAMES[1], abs(kp + k) / abs(k))
            _bump(errs, _LAW_NAMES[2], 0.0 if (sp[1] > 0) == (s[1] > 0) else 1.0)
            for name, got, want in (
                (_LAW_NAMES[3], sp[0], det * g**-3 * s[0]),
                (_LAW_NAMES[4], sp[1], det**2 * g**-8 * s[1]),
                (_LAW_NAMES[5], sp[2], det**3 * g**-12 * s[2]),
                (_LAW_NAMES[6], t1p, det * t1),
                (_LAW_NAMES[7], t2p, g * t2),
            ):
                _bump(errs, name, abs(got - want) / max(abs(want), 1e-300))
    laws = [LawResult(name, float(errs[name]), tol, bool(errs[name] <= tol)) for name in _LAW_NAMES]
    return VerifyReport(sweep="prolongation-invariance", trials=trials, seed=seed, laws=laws)


def _bump(errs: dict, name: str, value: float):
    if value > errs[name]:
        errs[name] = value
