"""Command line entry point: ``tropci <subcommand> ...``.

Exit codes: 0 success, 1 usage or parse error, 2 precondition failure,
3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .curve import TropicalCurveGraph, components_and_betti, count_cells, curve_genus, intersection_curve
from .dual_complex import hypersurface_complex
from .errors import InternalInconsistency, NotCertified, ParseError, PreconditionError, TropError, WrongDimension
from .quarter_planes import marked_subcomplex, staircase_functions
from .render import render_curve, render_marked, render_subdivision
from .search import SearchConfig, run_search
from .skeleton import Multigraph, classify_genus3, multigraph_genus, skeletonize, skeletonize_graph
from .subdivision import Subdivision, certify_smooth_ci, regular_subdivision
from .trop_core import TropPoly

EXIT_USAGE, EXIT_PRECONDITION, EXIT_INTERNAL = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _read_json(path: str) -> dict:
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _read_poly(path: str) -> TropPoly:
    try:
        return TropPoly.loads(_read_text(path))
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def cmd_subdivide(args) -> int:
    s = regular_subdivision(_read_poly(args.poly))
    _emit(args, render_subdivision(s) if args.format == "svg" else _dump(s.to_json()))
    return 0


def cmd_certify(args) -> int:
    cert = certify_smooth_ci(_read_poly(args.f), _read_poly(args.g))
    _emit(args, _dump(cert.to_json()))
    return 0


def _curve_summary(c: TropicalCurveGraph) -> dict:
    v, e, r = count_cells(c)
    topo = components_and_betti(c)
    try:
        genus = curve_genus(c)
    except TropError:
        genus = None
    return {"V": v, "E": e, "R": r, "genus": genus, "s": topo.s, "t": topo.t, "trivalent": c.is_trivalent()}


def cmd_curve(args) -> int:
    f, g = _read_poly(args.f), _read_poly(args.g)
    cert = certify_smooth_ci(f, g)
    try:
        c = intersection_curve(f, g, cert)
    except NotCertified as exc:
        sys.stderr.write(f"not certified: {exc}\n")
        sys.stderr.write(_dump(cert.to_json()))
        return EXIT_PRECONDITION
    _emit(args, _dump({"curve": c.to_json(), "summary": _curve_summary(c)}))
    return 0


def cmd_skeleton(args) -> int:
    data = _read_json(args.input)
    if "curve" in data:
        data = data["curve"]
    try:
        if "positions" in data or "rays" in data:
            m = skeletonize(TropicalCurveGraph.from_json(data))
        else:
            m = skeletonize_graph(Multigraph.from_json(data))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{args.input}: not a curve or multigraph: {exc}") from exc
    try:
        genus = multigraph_genus(m)
    except TropError:
        genus = None
    _emit(args, _dump({"multigraph": m.to_json(), "genus": genus, "class": classify_genus3(m).value}))
    return 0


def cmd_search(args) -> int:
    try:
        cfg = SearchConfig(
            seed=args.seed,
            attempts=args.attempts,
            degree=args.degree,
            bound=args.bound,
            style=args.style,
            denominator=args.denominator,
            require=args.require,
            quota=args.quota,
        )
    except ValueError as exc:
        sys.stderr.write(f"invalid search config: {exc}\n")
        return EXIT_USAGE
    report = run_search(cfg, workers=args.workers)
    _emit(args, report.dumps())
    agg = report.aggregate
    if agg["finding"]:
        sys.stderr.write(agg["finding"] + "\n")
    return 0


def cmd_render(args) -> int:
    data = _read_json(args.input)
    if "cells" in data:
        svg = render_subdivision(Subdivision.from_json(data))
    else:
        try:
            p = TropPoly.from_json(data)
        except ParseError as exc:
            raise ParseError(f"{args.input}: {exc}") from exc
        if p.n_vars != 2:
            raise WrongDimension("render needs a two-variable polynomial or a planar subdivision")
        if args.kind == "subdivision":
            svg = render_subdivision(regular_subdivision(p))
        elif args.kind == "marked":
            k = marked_subcomplex(p)
            try:
                st = staircase_functions(k)
            except TropError:
                st = None
            svg = render_marked(k, st)
        else:
            svg = render_curve(hypersurface_complex(p))
    _emit(args, svg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tropci", description="Tropical complete-intersection curves on the standard plane.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("subdivide", help="regular subdivision of a polynomial")
    p.add_argument("poly")
    p.add_argument("--format", choices=["json", "svg"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("certify", help="smoothness certificate of V(f) & V(g)")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("curve", help="assemble the intersection curve")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--out")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("skeleton", help="skeleton and genus-3 class of a curve or multigraph")
    p.add_argument("input")
    p.add_argument("--out")
    p.set_defaults(func=cmd_skeleton)

    p = sub.add_parser("search", help="randomized verification campaign")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--attempts", type=int, default=1000)
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--bound", type=int, default=30)
    p.add_argument("--style", choices=["integer", "rational", "concave"], default="integer")
    p.add_argument("--denominator", type=int, default=97)
    p.add_argument("--require", choices=["smooth", "weak"], default="smooth")
    p.add_argument("--quota", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("render", help="SVG of a planar subdivision, marked complex or plane curve")
    p.add_argument("input")
    p.add_argument("--kind", choices=["subdivision", "marked", "curve"], default="subdivision")
    p.add_argument("--format", choices=["svg"], default="svg")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except PreconditionError as exc:
        sys.stderr.write(f"precondition failed: {type(exc).__name__}: {exc}\n")
        return EXIT_PRECONDITION
    except InternalInconsistency as exc:
        sys.stderr.write(f"internal inconsistency: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
