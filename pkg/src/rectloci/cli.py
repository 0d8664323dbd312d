"""Command-line front end.

Exit codes: 0 success, 1 oracle failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from .catalog import catalog_loci
from .errors import RectLocusError, SceneError
from .geom import ConicCoeffs, Point2, SymMat2
from .locus import compute_locus, locus_from_dict, rectangle_at
from .metric import InnerProduct, locus_in_metric
from .oracle import verify_locus
from .realization import realize
from .render import Panel, RenderStyle, render_svg
from .scene import Scene, line_pair, load_scene, parse_pair


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _floats(n: int):
    def parse(text: str) -> tuple[float, ...]:
        try:
            vals = tuple(float(x) for x in text.split(","))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}")
        if len(vals) != n or not all(math.isfinite(v) for v in vals):
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated finite numbers, got {text!r}")
        return vals

    return parse


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rectloci", description="Rectangle loci of pairs of lines.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_pairs(sp, required=False):
        sp.add_argument("scene", type=Path, help="scene JSON file")
        nargs = None if required else "?"
        sp.add_argument("p1", nargs=nargs, help='first pair, e.g. "AC" or "A,C"')
        sp.add_argument("p2", nargs=nargs, help="second pair")

    sp = sub.add_parser("locus", help="locus of two pairs as JSON")
    with_pairs(sp)
    sp.add_argument("--metric", type=_floats(3), help="inner product m11,m12,m22")
    sp.add_argument("--count-degenerate", action="store_true")

    sp = sub.add_parser("catalog", help="all 21 loci of a four-line scene")
    sp.add_argument("scene", type=Path)
    sp.add_argument("--oracle", action="store_true", help="verify each entry by brute force")

    sp = sub.add_parser("realize", help="line pairs whose locus is a given hyperbola")
    sp.add_argument("--conic", type=_floats(6), required=True, help="a,b,c,d,e,f of ax^2+bxy+cy^2+dx+ey+f")
    sp.add_argument("--u", type=float, default=None)
    sp.add_argument("--v-sign", type=int, choices=(1, -1), default=1)
    sp.add_argument("--b-sign", type=int, choices=(1, -1), default=1)
    sp.add_argument("--t", type=float, default=0.0, help="apex position along its branch")

    sp = sub.add_parser("rect-at", help="rectangle centred at a locus point")
    with_pairs(sp)
    sp.add_argument("--point", type=_floats(2), required=True)
    sp.add_argument("--angle", type=float, default=None, help="chord direction across the first parallel pair")

    sp = sub.add_parser("check", help="brute-force check of the computed (or a given) locus")
    with_pairs(sp)
    sp.add_argument("--claim", type=Path, help="JSON locus to check instead of the computed one")
    sp.add_argument("--tol", type=float, default=1e-6)

    sp = sub.add_parser("render", help="SVG figure")
    with_pairs(sp)
    sp.add_argument("--out", type=Path)
    sp.add_argument("--catalog", action="store_true", help="21-panel grid of all loci")
    sp.add_argument("--mark", type=_floats(2), action="append", default=[], help="point to mark, x,y")
    sp.add_argument("--metric", type=_floats(3))
    return p


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _pairs(scene: Scene, args):
    if args.p1 is not None and args.p2 is not None:
        return line_pair(scene, args.p1, "p1"), line_pair(scene, args.p2, "p2"), f"{args.p1}|{args.p2}"
    if args.p1 is not None:
        raise SceneError("give both pairs or neither", "p2")
    for p in scene.pairings:
        groups = p.split("|")
        if len(groups) == 2:
            return line_pair(scene, groups[0], "pairings[0]"), line_pair(scene, groups[1], "pairings[0]"), p
    raise SceneError("no pairs given and the scene has no two-pair pairing", "pairings")


def _metric(scene: Scene, flag) -> Optional[InnerProduct]:
    if flag is not None:
        try:
            return InnerProduct(SymMat2(*flag))
        except RectLocusError as e:
            raise SceneError(str(e), "--metric") from e
    return scene.metric


def _locus(scene, args):
    p1, p2, _ = _pairs(scene, args)
    ip = _metric(scene, getattr(args, "metric", None))
    cd = getattr(args, "count_degenerate", False)
    return locus_in_metric(ip, p1, p2, cd) if ip is not None else compute_locus(p1, p2, cd)


def _render(scene: Scene, args) -> str:
    if args.catalog:
        entries = catalog_loci(scene.line_set())
        panels = [
            Panel(str(e.label), e.locus, [parse_pair("".join(p), scene) for p in e.label.pairs])
            for e in entries
        ]
    else:
        p1, p2, label = _pairs(scene, args)
        locus = _locus(scene, args)
        groups = [parse_pair(g, scene) for g in label.split("|")]
        panels = [Panel(label, locus, groups, [tuple(m) for m in args.mark])]
    return render_svg(scene.lines, panels, scene.window, RenderStyle())


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "realize":
            a, b, c, d, e, f = args.conic
            r = realize(ConicCoeffs.from_coefficients(a, b, c, d, e, f), args.u, args.v_sign, args.b_sign, args.t)
            print(_dump(r.to_dict()), file=out)
            return 0
        scene = load_scene(args.scene)
        if args.command == "locus":
            print(_dump(_locus(scene, args).to_dict()), file=out)
        elif args.command == "catalog":
            entries = catalog_loci(scene.line_set(), oracle=args.oracle, window=scene.window)
            print(_dump([e.to_dict() for e in entries]), file=out)
            if args.oracle and not all(e.report.passed for e in entries):
                return 1
        elif args.command == "rect-at":
            p1, p2, _ = _pairs(scene, args)
            r = rectangle_at(p1, p2, Point2(*args.point), args.angle)
            print(_dump(r.to_dict()), file=out)
        elif args.command == "check":
            p1, p2, _ = _pairs(scene, args)
            if args.claim is not None:
                try:
                    claim = locus_from_dict(json.loads(args.claim.read_text()))
                except (OSError, ValueError, KeyError, TypeError) as e:
                    raise SceneError(str(e), str(args.claim)) from e
            else:
                claim = compute_locus(p1, p2)
            report = verify_locus(p1, p2, claim, scene.window, args.tol)
            print(_dump(report.to_dict()), file=out)
            return 0 if report.passed else 1
        elif args.command == "render":
            svg = _render(scene, args)
            if args.out is not None:
                args.out.write_text(svg)
            else:
                out.write(svg)
    except RectLocusError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
