"""Command-line front end.

Subcommands: ``invariants``, ``classify``, ``reconstruct``, ``orbit``,
``verify``, ``plot``.  Curves come from the named catalog
(``--catalog power --param a=3``), a graph expression (``--curve "x^3"``)
or a parametric pair (``--parametric "cos(x)" "sin(x)"``, where the
expression letter x is the parameter).

Expression syntax: ``+ - * / ^`` with the usual precedence and a
right-associative power, parentheses, decimal numbers, the variable
``x`` and the functions exp, ln, sin, cos, atan, sqrt, abs.  No implicit
multiplication.

Tables print with 9 significant digits; CSV and JSON use the shortest
round-trip float representation, and JSON documents carry "schema": 1.
Exit codes: 0 success, 1 verification failure, 2 parse/domain/usage
error, 3 non-constant curvature in ``classify``.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .affine import orbit_curve, validate_generator
from .catalog import CATALOG_NAMES, Curve, GraphCurve, ParametricCurve, catalog_curve
from .expressions import ParseError, parse
from .frames import frenet, left_frame
from .invariants import SingularKind, invariant_record
from .jets import DivisionByZeroJet, DomainError, NotAGraph
from .reconstruct import (
    ConstantProfile,
    ExpressionProfile,
    classify_constant,
    flow_graph_jets,
    integrate_frenet,
    reconstruct_constant,
    validate_frenet_state,
)
from .svgplot import render_svg
from .verify import run_invariance_sweep

__all__ = ["main"]

K_S_CONSTANT_TOL = 1e-6


def fmt9(v) -> str:
    """9 significant digits for tables; empty for missing values."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.9g}"
    return str(v)


def _print_table(headers, rows, stream=None):
    stream = stream or sys.stdout
    cells = [[fmt9(v) for v in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in cells:
        for i, c in enumerate(row):
            widths[i] = max(widths[i], len(c))
    stream.write("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip() + "\n")
    for row in cells:
        stream.write("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() + "\n")


def _write_csv(path, headers, rows):
    import csv

    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(headers)
        for row in rows:
            w.writerow(["" if v is None else v for v in row])


def _write_json(doc, path=None):
    text = json.dumps(doc, indent=2)
    if path:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# curve selection -----------------------------------------------------------

def _add_curve_flags(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--catalog", metavar="NAME", choices=CATALOG_NAMES,
                     help=f"catalog curve: {', '.join(CATALOG_NAMES)}")
    src.add_argument("--curve", metavar="EXPR", help="graph curve y = EXPR(x)")
    src.add_argument("--parametric", nargs=2, metavar=("XEXPR", "YEXPR"),
                     help="parametric curve (x(t), y(t)); write the parameter as x")
    p.add_argument("--param", action="append", default=[], metavar="K=V",
                   help="catalog parameter, repeatable (e.g. --param a=3)")
    p.add_argument("--window", nargs=2, type=float, metavar=("A", "B"),
                   help="parameter window; defaults to the catalog window")
    p.add_argument("-n", "--samples", type=int, default=9, metavar="COUNT",
                   help="number of samples in the window (default 9)")


def _build_curve(args) -> Curve:
    if args.catalog:
        params = {}
        for item in args.param:
            key, sep, value = item.partition("=")
            if not sep:
                raise ValueError(f"--param expects K=V, got {item!r}")
            params[key.strip()] = float(value)
        return catalog_curve(args.catalog, **params)
    if args.param:
        raise ValueError("--param only applies to --catalog curves")
    if args.curve:
        return GraphCurve.from_text(args.curve)
    return ParametricCurve.from_text(args.parametric[0], args.parametric[1])


def _window_grid(curve: Curve, args) -> np.ndarray:
    window = tuple(args.window) if args.window else curve.default_window
    if args.samples < 2:
        raise ValueError("need at least 2 samples")
    return np.linspace(window[0], window[1], args.samples)


def _sample_jets(curve: Curve, grid):
    """(u, jet-or-None) pairs; vertical-tangent samples are kept as None."""
    out = []
    for u in grid:
        try:
            out.append((float(u), curve.jet(float(u))))
        except NotAGraph:
            print(f"warning: skipping u = {u:.9g} (vertical tangent)", file=sys.stderr)
            out.append((float(u), None))
    return out


# subcommands -----------------------------------------------------------------

def cmd_invariants(args) -> int:
    curve = _build_curve(args)
    samples = _sample_jets(curve, _window_grid(curve, args))
    records = []
    for u, j in samples:
        if j is None:
            continue
        records.append(invariant_record(j))
    headers = ["x", "y", "S1", "S2", "S3", "sigma", "regular", "ds_dx", "k", "k_s", "kind"]
    rows = [
        [r.x, r.y, r.S1, r.S2, r.S3, r.sigma, r.regular, r.ds_dx, r.k, r.k_s,
         r.singular_kind.value if r.singular_kind else ""]
        for r in records
    ]
    if args.out:
        _write_csv(args.out, headers[:10], [row[:10] for row in rows])
    if args.json:
        _write_json({
            "schema": 1,
            "curve": curve.describe(),
            "records": [r.to_json_dict() for r in records],
        })
    else:
        _print_table(headers, rows)
    return 0


def cmd_classify(args) -> int:
    curve = _build_curve(args)
    samples = [(u, j) for u, j in _sample_jets(curve, _window_grid(curve, args)) if j is not None]
    if len(samples) < 2:
        raise ValueError("need at least 2 usable samples")
    records = [invariant_record(j) for _, j in samples]
    irregular = [r for r in records if not r.regular]
    if irregular:
        kinds = {r.singular_kind.value for r in irregular}
        print(
            f"NotConstantCurvature: window contains {len(irregular)} singular sample(s) "
            f"({', '.join(sorted(kinds))})",
            file=sys.stderr,
        )
        return 3
    ks_max = max(abs(r.k_s) for r in records)
    if ks_max > K_S_CONSTANT_TOL:
        print(
            f"NotConstantCurvature: max |k_s| = {ks_max:.9g} exceeds {K_S_CONSTANT_TOL:g}",
            file=sys.stderr,
        )
        return 3
    k_mean = float(np.mean([r.k for r in records]))
    sigma = records[0].sigma
    family = classify_constant(k_mean, sigma)
    doc = {
        "schema": 1,
        "curve": curve.describe(),
        "k": k_mean,
        "sigma": sigma,
        "k_s_max": ks_max,
        **family.to_json_dict(),
    }
    if args.json:
        _write_json(doc)
    else:
        print(f"family: {family.family}")
        if family.params:
            print("params: " + ", ".join(f"{k} = {fmt9(v)}" for k, v in family.params.items()))
        if family.congruent_params:
            print("congruent: " + ", ".join(
                f"{k} = {fmt9(v)}" for k, v in family.congruent_params.items()))
        print(f"k = {fmt9(k_mean)}, sigma = {sigma:+d}, max |k_s| = {fmt9(ks_max)}")
    return 0


def _parse_frame(values) -> np.ndarray:
    f = np.eye(3)
    f[:2, 0] = values[0:2]
    f[:2, 1] = values[2:4]
    f[:2, 2] = values[4:6]
    return validate_frenet_state(f)


def cmd_reconstruct(args) -> int:
    sigma = args.sigma
    f0 = _parse_frame(args.frame) if args.frame else None
    if args.k_expr is not None:
        profile = ExpressionProfile(parse(args.k_expr), sigma)
        start = validate_frenet_state(np.eye(3)) if f0 is None else f0
        path = integrate_frenet(profile, start, tuple(args.span), h=args.step)
    else:
        profile = ConstantProfile(args.k, sigma)
        n = max(2, round(abs(args.span[1] - args.span[0]) / args.step) + 1)
        path = reconstruct_constant(args.k, sigma, tuple(args.span), f0=f0, n=n)
    jets = flow_graph_jets(profile, path)
    rows = []
    for s, p, j in zip(path.s, path.points, jets):
        rec = invariant_record(j) if j is not None else None
        k = rec.k if rec and rec.regular else None
        sg = rec.sigma if rec and rec.regular else None
        rows.append([float(s), float(p[0]), float(p[1]), k, sg])
    headers = ["s", "x", "y", "k", "sigma"]
    if args.out:
        _write_csv(args.out, headers, rows)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as f:
            f.write(render_svg([(path.points, "reconstruction")]))
    if args.json:
        _write_json({
            "schema": 1,
            "profile": {"k": args.k, "k_expr": args.k_expr, "sigma": sigma},
            "span": list(args.span),
            "samples": [dict(zip(headers, row)) for row in rows],
        })
    elif not args.out:
        _print_table(headers, rows)
    return 0


def cmd_orbit(args) -> int:
    gen = np.zeros((3, 3))
    gen[:2] = np.asarray(args.generator, dtype=float).reshape(2, 3)
    validate_generator(gen)
    grid = np.linspace(args.t_range[0], args.t_range[1], args.samples)
    samples = orbit_curve(gen, tuple(args.point), grid)
    skipped = [s.t for s in samples if s.jet is None]
    for t in skipped:
        print(f"warning: skipping t = {t:.9g} (vertical tangent)", file=sys.stderr)
    rows = []
    for s in samples:
        rec = invariant_record(s.jet) if s.jet is not None else None
        k = rec.k if rec and rec.regular else None
        sg = rec.sigma if rec and rec.regular else None
        rows.append([s.t, s.point[0], s.point[1], k, sg])
    headers = ["t", "x", "y", "k", "sigma"]
    if args.out:
        _write_csv(args.out, headers, rows)
    if args.svg:
        pts = np.array([[r[1], r[2]] for r in rows])
        with open(args.svg, "w", encoding="utf-8") as f:
            f.write(render_svg([(pts, "orbit")]))
    if args.json:
        _write_json({
            "schema": 1,
            "generator": gen.ravel().tolist(),
            "point": list(args.point),
            "samples": [dict(zip(headers, row)) for row in rows],
        })
    elif not args.out:
        _print_table(headers, rows)
    return 0


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise ValueError("--trials must be at least 1")
    bias = 1e-6 if args.forced_bug else 0.0
    report = run_invariance_sweep(args.trials, args.seed, n_bias=bias)
    if args.json:
        _write_json(report.to_json_dict())
    else:
        print(f"sweep: {report.sweep} (trials = {report.trials}, seed = {report.seed})")
        _print_table(
            ["law", "max_rel_err", "tol", "status"],
            [[law.name, law.max_rel_err, law.tol, "PASS" if law.passed else "FAIL"]
             for law in report.laws],
        )
        print(f"overall: {'PASS' if report.passed else 'FAIL'} "
              f"(max rel err = {fmt9(report.max_rel_err)})")
    return 0 if report.passed else 1


def cmd_plot(args) -> int:
    if args.k is not None:
        n = max(2, round(abs(args.span[1] - args.span[0]) / args.step) + 1)
        path = reconstruct_constant(args.k, args.sigma, tuple(args.span), n=n)
        curves = [(path.points, "reconstruction")]
        arrows = []
        if args.frames:
            for i in range(0, len(path.s), args.frames):
                f = path.states[i]
                arrows.append((f[:2, 2], [(f[:2, 0], "t"), (f[:2, 1], "n")]))
    else:
        curve = _build_curve(args)
        samples = _sample_jets(curve, _window_grid(curve, args))
        pts, anchors = [], []
        n_regular = 0
        for u, j in samples:
            if j is None:
                continue
            pts.append((j.x, j.y))
            rec = invariant_record(j)
            if rec.regular:
                n_regular += 1
                anchors.append(j)
            else:
                anchors.append(None)
        if len(pts) < 2:
            raise ValueError("nothing to plot: fewer than 2 drawable samples")
        curves = [(np.array(pts), curve.describe())]
        arrows = []
        if args.frames:
            if n_regular == 0:
                print("warning: no regular samples; frame glyphs omitted", file=sys.stderr)
            else:
                for i in range(0, len(anchors), args.frames):
                    j = anchors[i]
                    if j is None:
                        continue
                    e1, e2 = left_frame(j)
                    t, nrm = frenet(j)
                    arrows.append(((j.x, j.y), [(e1, "e1"), (e2, "e2"), (t, "t"), (nrm, "n")]))
    with open(args.out, "w", encoding="utf-8") as f:
        f.write(render_svg(curves, arrows))
    return 0


# parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="affinecurves",
        description="General-affine invariants, moving frames and reconstruction of plane curves.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("invariants", help="invariant table along a curve window")
    _add_curve_flags(sp)
    sp.add_argument("--out", metavar="PATH", help="write samples as CSV")
    sp.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("classify", help="constant-curvature family of a curve window")
    _add_curve_flags(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("reconstruct", help="rebuild a curve from a curvature profile")
    prof = sp.add_mutually_exclusive_group(required=True)
    prof.add_argument("--k", type=float, help="constant curvature value")
    prof.add_argument("--k-expr", metavar="EXPR", help="curvature as an expression in arc length")
    sp.add_argument("--sigma", type=int, choices=(1, -1), required=True)
    sp.add_argument("--span", nargs=2, type=float, default=(0.0, 1.0), metavar=("A", "B"))
    sp.add_argument("--step", type=float, default=1e-3, metavar="H")
    sp.add_argument("--frame", nargs=6, type=float, metavar=("TX", "TY", "NX", "NY", "RX", "RY"),
                    help="initial frame columns t, n, r (default: identity frame at origin)")
    sp.add_argument("--out", metavar="PATH", help="write samples as CSV")
    sp.add_argument("--svg", metavar="PATH", help="write an SVG plot")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_reconstruct)

    sp = sub.add_parser("orbit", help="sample a one-parameter subgroup orbit")
    sp.add_argument("--generator", nargs=6, type=float, required=True,
                    metavar=("X11", "X12", "X13", "X21", "X22", "X23"),
                    help="top two rows of the 3x3 generator, row-major")
    sp.add_argument("--point", nargs=2, type=float, required=True, metavar=("X", "Y"))
    sp.add_argument("--t-range", nargs=2, type=float, default=(0.0, 1.0), metavar=("A", "B"))
    sp.add_argument("-n", "--samples", type=int, default=9, metavar="COUNT")
    sp.add_argument("--out", metavar="PATH")
    sp.add_argument("--svg", metavar="PATH")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("verify", help="randomized invariance and weight-law sweep")
    sp.add_argument("--trials", "-t", type=int, default=1000, metavar="T")
    sp.add_argument("--seed", type=int, default=42, metavar="S")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--forced-bug", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("plot", help="SVG plot of a curve or a reconstruction")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--catalog", metavar="NAME", choices=CATALOG_NAMES)
    src.add_argument("--curve", metavar="EXPR")
    src.add_argument("--parametric", nargs=2, metavar=("XEXPR", "YEXPR"))
    src.add_argument("--k", type=float, help="plot a constant-curvature reconstruction instead")
    sp.add_argument("--param", action="append", default=[], metavar="K=V")
    sp.add_argument("--window", nargs=2, type=float, metavar=("A", "B"))
    sp.add_argument("-n", "--samples", type=int, default=129, metavar="COUNT")
    sp.add_argument("--sigma", type=int, choices=(1, -1), default=1)
    sp.add_argument("--span", nargs=2, type=float, default=(0.0, 10.0), metavar=("A", "B"))
    sp.add_argument("--step", type=float, default=1e-2, metavar="H")
    sp.add_argument("--frames", type=int, metavar="M",
                    help="draw frame vectors at every M-th sample")
    sp.add_argument("--out", metavar="PATH", required=True, help="SVG output path")
    sp.set_defaults(func=cmd_plot)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, DomainError, NotAGraph, DivisionByZeroJet, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
