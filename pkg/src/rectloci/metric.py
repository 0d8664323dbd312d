"""Rectangle loci for a general inner product ``<u, v> = u^T M v``.

With ``T = M^{1/2}``, the map ``x -> T x`` is an isometry from ``(R^2, M)``
to the Euclidean plane, so the locus is the ``T^-1`` image of the Euclidean
locus of the mapped lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cone import LinePair
from .errors import NotPositiveDefinite
from .geom import Affine, SymMat2, apply_affine, sqrt_spd
from .locus import LocusClass, compute_locus, transform_locus


@dataclass(frozen=True)
class InnerProduct:
    M: SymMat2
    T: SymMat2 = field(init=False, repr=False)
    T_inv: SymMat2 = field(init=False, repr=False)

    def __post_init__(self):
        if not self.M.is_spd():
            raise NotPositiveDefinite("inner product matrix must be positive definite")
        t = sqrt_spd(self.M)
        object.__setattr__(self, "T", t)
        object.__setattr__(self, "T_inv", t.inv())

    @classmethod
    def euclidean(cls) -> InnerProduct:
        return cls(SymMat2.identity())

    @property
    def is_euclidean(self) -> bool:
        return self.M == SymMat2.identity()

    def forward(self) -> Affine:
        return Affine(self.T.array(), np.zeros(2))

    def backward(self) -> Affine:
        return Affine(self.T_inv.array(), np.zeros(2))

    def norm(self, v) -> float:
        return float(np.sqrt(self.M.quad(v)))


def transform_pair(ip: InnerProduct, p: LinePair) -> LinePair:
    """Image of a line pair under ``x -> T x``."""
    g = ip.forward()
    return LinePair(apply_affine(g, p.l1), apply_affine(g, p.l2))


def locus_in_metric(
    ip: InnerProduct, p1: LinePair, p2: LinePair, count_degenerate: bool = False
) -> LocusClass:
    if ip.is_euclidean:
        return compute_locus(p1, p2, count_degenerate)
    euclid = compute_locus(transform_pair(ip, p1), transform_pair(ip, p2), count_degenerate)
    return transform_locus(ip.backward(), euclid)
