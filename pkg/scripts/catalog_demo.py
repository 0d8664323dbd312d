"""All 21 loci of a four-line scene, oracle-checked, as a table and a panel grid."""

import argparse
from collections import Counter
from pathlib import Path

from rectloci.catalog import catalog_loci
from rectloci.render import Panel, render_svg
from rectloci.scene import load_scene

DEFAULT = Path(__file__).resolve().parents[1] / "docs" / "scenes" / "generic.json"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("scene", type=Path, nargs="?", default=DEFAULT)
    ap.add_argument("--out", type=Path, default=Path("catalog.svg"))
    args = ap.parse_args()

    scene = load_scene(args.scene)
    entries = catalog_loci(scene.line_set(), oracle=True, window=scene.window)
    for e in entries:
        verdict = "pass" if e.report.passed else "FAIL"
        print(f"{str(e.label):7s} {e.label.kind:8s} {e.locus.kind:22s} {verdict}  {'; '.join(e.notes)}")
    print(dict(Counter(e.locus.kind for e in entries)))

    panels = [Panel(str(e.label), e.locus, e.label.pairs) for e in entries]
    args.out.write_text(render_svg(scene.lines, panels, scene.window))
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
