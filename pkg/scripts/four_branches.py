"""Locus of the four-branch configuration, the four marked points and a figure."""

import argparse
import math
from pathlib import Path

import numpy as np

from rectloci import compute_locus, rectangle_at
from rectloci.render import Panel, render_svg
from rectloci.cone import surface_from_pair
from rectloci.fixtures import FOUR_BRANCH_POINTS, four_branch_pairs
from rectloci.geom import Point2
from rectloci.oracle import ScanWindow, verify_locus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("four_branches.svg"))
    args = ap.parse_args()

    p1, p2 = four_branch_pairs()
    h = compute_locus(p1, p2)
    print(f"kind {h.kind}  center {tuple(h.center)}  k {h.k:.12g}")
    s1 = surface_from_pair(p1)
    rows = []
    for x, y in FOUR_BRANCH_POINTS:
        res = h.C.quad(Point2(x, y) - h.center) - h.k
        z2 = s1.height_sq((x, y))
        rows.append([x, y, z2, 1.0])
        print(f"  ({x:.6f}, {y:.6f})  residual {res:+.2e}  z^2 {z2:.6f}")
    det = np.linalg.det(np.array(rows))
    print(f"lifted determinant {det:.12f}  closed form {18 * math.sqrt(14) - 36 * math.sqrt(7) + 6 * math.sqrt(46) - 12:.12f}")

    report = verify_locus(p1, p2, h, ScanWindow.square(10.0, 400))
    print(f"oracle {'pass' if report.passed else 'fail'}  scanned {len(report.scanned)}  "
          f"max distance {report.max_scan_distance:.2e}")

    rects = [rectangle_at(p1, p2, Point2(*p)) for p in FOUR_BRANCH_POINTS[:2]]
    lines = [("A", p1.l1), ("B", p1.l2), ("C", p2.l1), ("D", p2.l2)]
    panel = Panel("AB|CD", h, [("A", "B"), ("C", "D")], FOUR_BRANCH_POINTS, rects)
    args.out.write_text(render_svg(lines, [panel], ScanWindow.square(10.0)))
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
