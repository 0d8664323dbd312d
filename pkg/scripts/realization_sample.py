"""Sample the realization surface of a hyperbola and check each sample by roundtrip."""

import argparse

import numpy as np

from rectloci import compute_locus
from rectloci.geom import ConicCoeffs
from rectloci.locus import Hyperbola
from rectloci.realization import HyperbolaSpec, realize_params, sample_parameter_surface


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--conic", default="1,0,-1,0,0,-1", help="a,b,c,d,e,f")
    ap.add_argument("-n", type=int, default=50)
    args = ap.parse_args()

    coeffs = ConicCoeffs.from_coefficients(*(float(x) for x in args.conic.split(",")))
    spec = HyperbolaSpec.from_conic(coeffs)
    worst, conds = 0.0, []
    for p in sample_parameter_surface(spec, args.n):
        r = realize_params(spec, p)
        loc = compute_locus(r.linePairA, r.linePairB)
        assert isinstance(loc, Hyperbola)
        err = max((loc.center - spec.center).norm(), (loc.normalized() - spec.C).max_abs())
        worst = max(worst, err)
        conds.append(max(r.condition))
        print(f"u {p.u:9.4f}  v {p.v:+9.4f}  b ({p.bx:+8.4f}, {p.by:+8.4f})  err {err:.1e}  cond {max(r.condition):.1f}")
    print(f"worst roundtrip error {worst:.2e}; condition numbers {min(conds):.1f} .. {max(conds):.1f} "
          f"(median {np.median(conds):.1f})")


if __name__ == "__main__":
    main()
