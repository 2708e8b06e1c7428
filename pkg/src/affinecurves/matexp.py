"""Matrix exponential for the small fixed-size matrices used here.

Scaling and squaring with a diagonal Pade(6) approximant, which is plenty
for well-scaled 3x3 generators; a plain truncated series is used for very
small norms where no scaling is needed.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["expm"]

# Pade(6) coefficients: c[k+1] = c[k] * (6-k) / ((12-k)(k+1))
_PADE6 = [1.0]
for _k in range(6):
    _PADE6.append(_PADE6[-1] * (6 - _k) / ((12 - _k) * (_k + 1)))


def expm(a: np.ndarray) -> np.ndarray:
    """exp(a) for a small square matrix."""
    a = np.asarray(a, dtype=float)
    norm = np.linalg.norm(a, 1)
    if norm < 1e-4:
        return _series(a)
    # scale so the Pade argument has 1-norm at most 1/2
    s = max(0, int(math.ceil(math.log2(norm / 0.5))))
    e = _pade6(a / (2.0**s))
    for _ in range(s):
        e = e @ e
    return e


def _pade6(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    a2 = a @ a
    even = _PADE6[0] * np.eye(n) + _PADE6[2] * a2
    odd = _PADE6[1] * np.eye(n) + _PADE6[3] * a2
    a4 = a2 @ a2
    even += _PADE6[4] * a4
    odd += _PADE6[5] * a4
    even += _PADE6[6] * (a4 @ a2)
    u = a @ odd
    return np.linalg.solve(even - u, even + u)


def _series(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    out = np.eye(n)
    term = np.eye(n)
    for k in range(1, 12):
        term = term @ a / k
        out = out + term
        if np.max(np.abs(term)) < 1e-18:
            break
    return out
