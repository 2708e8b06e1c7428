"""Curve sources: expression graphs, parametric pairs, and the named catalog.

Catalog members (the constant-curvature families plus their degenerate
relatives):

    line                y = x                             singular (S1 = 0)
    parabola            y = x^2                           singular (S2 = 0)
    power     a         y = x^a on x > 0
    xlogx     a, b      y = b x + a x ln|x|
    exp                 y = e^x
    spiral    a, b      r = e^((a/b) theta) in polar form, sampled in theta
    ellipse   p, q      (p cos t, q sin t)
    hyperbola p, q      (p cosh t, q sinh t)

Graph curves evaluate expressions in x; parametric curves evaluate an
(x(t), y(t)) pair (the expression variable letter doubles as the
parameter) and convert each sample to graph form.  Both expose the same
surface: ``jet(u)``, ``point(u)``, ``arc_density(u)`` (ds per parameter
unit, signed) and a sensible ``default_window``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .expressions import Expr, eval_expr, parse, to_text
from .invariants import arc_element
from .jets import GraphJet, Jet, graph_from_parametric

__all__ = [
    "GraphCurve",
    "ParametricCurve",
    "Curve",
    "catalog_curve",
    "CATALOG_NAMES",
    "trace_arc_length",
]


@dataclass(frozen=True)
class GraphCurve:
    """Curve y = f(x) given by an expression; the parameter is x itself."""

    expr: Expr
    name: str = ""
    default_window: tuple = (0.0, 1.0)

    @staticmethod
    def from_text(src: str, name: str = "", window=(0.0, 1.0)) -> "GraphCurve":
        return GraphCurve(parse(src), name=name or src, default_window=window)

    def jet(self, x: float) -> GraphJet:
        return GraphJet.from_jet(x, eval_expr(self.expr, Jet.variable(x)))

    def point(self, x: float) -> np.ndarray:
        j = self.jet(x)
        return np.array([j.x, j.y])

    def arc_density(self, x: float) -> float:
        return arc_element(self.jet(x))

    def describe(self) -> str:
        return to_text(self.expr)


@dataclass(frozen=True)
class ParametricCurve:
    """Curve (x(t), y(t)) given by two expressions in the parameter."""

    x_expr: Expr
    y_expr: Expr
    name: str = ""
    default_window: tuple = (0.0, 1.0)

    @staticmethod
    def from_text(x_src: str, y_src: str, name: str = "", window=(0.0, 1.0)) -> "ParametricCurve":
        return ParametricCurve(
            parse(x_src), parse(y_src), name=name or f"({x_src}, {y_src})", default_window=window
        )

    def _param_jets(self, t: float) -> tuple[Jet, Jet]:
        var = Jet.variable(t)
        return eval_expr(self.x_expr, var), eval_expr(self.y_expr, var)

    def jet(self, t: float) -> GraphJet:
        xj, yj = self._param_jets(t)
        return graph_from_parametric(xj, yj)

    def point(self, t: float) -> np.ndarray:
        xj, yj = self._param_jets(t)
        return np.array([xj.c[0], yj.c[0]])

    def arc_density(self, t: float) -> float:
        xj, yj = self._param_jets(t)
        return arc_element(graph_from_parametric(xj, yj)) * xj.c[1]

    def describe(self) -> str:
        return f"x = {to_text(self.x_expr)}, y = {to_text(self.y_expr)}"


Curve = GraphCurve | ParametricCurve

CATALOG_NAMES = ("line", "parabola", "power", "xlogx", "exp", "spiral", "ellipse", "hyperbola")


def catalog_curve(name: str, **params) -> Curve:
    """Build a catalog member; unknown names or parameters raise ValueError."""
    maker = _MAKERS.get(name)
    if maker is None:
        raise ValueError(f"unknown catalog curve {name!r}; choices: {', '.join(CATALOG_NAMES)}")
    try:
        return maker(**params)
    except TypeError as err:
        raise ValueError(f"bad parameters for catalog curve {name!r}: {err}") from None


def _line() -> GraphCurve:
    return GraphCurve.from_text("x", name="line", window=(0.0, 1.0))


def _parabola() -> GraphCurve:
    return GraphCurve.from_text("x^2", name="parabola", window=(-1.0, 1.0))


def _power(a: float = 3.0) -> GraphCurve:
    return GraphCurve.from_text(f"x^{float(a)!r}", name=f"power(a={a:g})", window=(0.5, 2.0))


def _xlogx(a: float = 1.0, b: float = 1.0) -> GraphCurve:
    src = f"{float(b)!r}*x + {float(a)!r}*x*ln(abs(x))"
    return GraphCurve.from_text(src, name=f"xlogx(a={a:g}, b={b:g})", window=(0.5, 2.5))


def _exp() -> GraphCurve:
    return GraphCurve.from_text("exp(x)", name="exp", window=(-1.0, 1.0))


def _spiral(a: float = 1.0, b: float = 1.0) -> ParametricCurve:
    if b == 0.0:
        raise ValueError("spiral needs b != 0")
    c = float(a) / float(b)
    return ParametricCurve.from_text(
        f"exp({c!r}*x)*cos(x)",
        f"exp({c!r}*x)*sin(x)",
        name=f"spiral(a={a:g}, b={b:g})",
        window=(0.3, 2.3) if c != 0.0 else (0.3, 2.3),
    )


def _ellipse(p: float = 1.0, q: float = 1.0) -> ParametricCurve:
    if p <= 0 or q <= 0:
        raise ValueError("ellipse needs positive semi-axes")
    return ParametricCurve.from_text(
        f"{float(p)!r}*cos(x)",
        f"{float(q)!r}*sin(x)",
        name=f"ellipse(p={p:g}, q={q:g})",
        window=(0.5, 2.6),
    )


def _hyperbola(p: float = 1.0, q: float = 1.0) -> ParametricCurve:
    if p <= 0 or q <= 0:
        raise ValueError("hyperbola needs positive semi-axes")
    return ParametricCurve.from_text(
        f"{float(p)!r}*(exp(x)+exp(-x))/2",
        f"{float(q)!r}*(exp(x)-exp(-x))/2",
        name=f"hyperbola(p={p:g}, q={q:g})",
        window=(0.3, 1.5),
    )


_MAKERS = {
    "line": _line,
    "parabola": _parabola,
    "power": _power,
    "xlogx": _xlogx,
    "exp": _exp,
    "spiral": _spiral,
    "ellipse": _ellipse,
    "hyperbola": _hyperbola,
}


def trace_arc_length(curve: Curve, u0: float, s_values) -> np.ndarray:
    """Points of the curve at the given arc lengths measured from u0.

    Integrates du/ds = 1 / arc_density(u) with RK4 between consecutive
    requested arc lengths (s_values must start at 0 and be monotone in
    |s|; positive and negative arrays are both fine).  Used as the ground
    truth in reconstruction round trips.
    """
    s_values = np.asarray(s_values, dtype=float)
    pts = np.empty((len(s_values), 2))
    u = float(u0)
    prev_s = 0.0
    if s_values[0] != 0.0:
        raise ValueError("arc-length trace must start at s = 0")
    for i, s in enumerate(s_values):
        target = float(s)
        ds = target - prev_s
        if ds != 0.0:
            n = max(1, round(abs(ds) / 1e-3))
            step = ds / n
            for _ in range(n):
                k1 = 1.0 / curve.arc_density(u)
                k2 = 1.0 / curve.arc_density(u + 0.5 * step * k1)
                k3 = 1.0 / curve.arc_density(u + 0.5 * step * k2)
                k4 = 1.0 / curve.arc_density(u + step * k3)
                u += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        pts[i] = curve.point(u)
        prev_s = target
    return pts
