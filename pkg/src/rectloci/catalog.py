"""All 21 rectangle loci of four labeled lines.

Choosing which lines carry the two diagonals gives 3 disjoint pairings
(``AB|CD``), 12 pairings sharing a line (``AB|BC``) and 6 single pairs
(``AB``: all four vertices on two lines).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Optional

from .cone import LinePair
from .errors import IdenticalLines
from .geom import Line
from .locus import LocusClass, SinglePoint, WholeLine, compute_locus
from .oracle import OracleReport, ScanWindow, verify_locus, verify_single_pair

LABELS = ("A", "B", "C", "D")


@dataclass(frozen=True)
class LineSet4:
    lines: Mapping[str, Line]

    def __post_init__(self):
        if tuple(sorted(self.lines)) != LABELS:
            raise ValueError(f"expected labels {LABELS}, got {tuple(sorted(self.lines))}")
        for x, y in combinations(LABELS, 2):
            if self.lines[x].same_as(self.lines[y]):
                raise IdenticalLines(f"lines {x} and {y} coincide")

    @classmethod
    def of(cls, a: Line, b: Line, c: Line, d: Line) -> LineSet4:
        return cls(dict(zip(LABELS, (a, b, c, d))))

    def pair(self, labels: tuple[str, str]) -> LinePair:
        return LinePair(self.lines[labels[0]], self.lines[labels[1]])


@dataclass(frozen=True)
class PairingLabel:
    """``pairs`` holds one or two label pairs; ``kind`` is disjoint, shared or single."""

    kind: str
    pairs: tuple[tuple[str, str], ...]

    def __str__(self) -> str:
        return "|".join("".join(p) for p in self.pairs)

    @property
    def sequences(self) -> tuple[str, str]:
        """Vertex sequences around the rectangle, one per orientation.

        The first pair holds vertices 1 and 3, the second vertices 2 and 4.
        """
        (x, y), (z, w) = self.pairs if len(self.pairs) == 2 else self.pairs * 2
        seq = x + z + y + w
        return seq, seq[::-1]


def enumerate_pairings(s: Optional[LineSet4] = None) -> list[PairingLabel]:
    """The 21 labels in canonical order: disjoint, shared, single.

    They depend only on the labels, so ``s`` is accepted for symmetry only.
    """
    pairs = list(combinations(LABELS, 2))
    disjoint, shared = [], []
    for p, q in combinations(pairs, 2):
        if set(p) & set(q):
            shared.append(PairingLabel("shared", (p, q)))
        else:
            disjoint.append(PairingLabel("disjoint", (p, q)))
    singles = [PairingLabel("single", (p,)) for p in pairs]
    return disjoint + shared + singles


def single_pair_locus(pair: LinePair) -> LocusClass:
    """Centers of nondegenerate rectangles with two vertices on each line."""
    if pair.is_parallel:
        return WholeLine(pair.midline)
    return SinglePoint(pair.crossing)


SINGLE_NOTE = "intersecting single pair: point reading; the plane if collapsed rectangles were admitted"


@dataclass
class CatalogEntry:
    label: PairingLabel
    locus: LocusClass
    notes: list[str] = field(default_factory=list)
    report: Optional[OracleReport] = None

    def to_dict(self):
        out = {
            "label": str(self.label),
            "kind": self.label.kind,
            "sequences": list(self.label.sequences),
            "locus": self.locus.to_dict(),
            "notes": list(self.notes),
        }
        if self.report is not None:
            out["oracle"] = self.report.to_dict()
        return out


def catalog_loci(
    s: LineSet4,
    oracle: bool = False,
    window: Optional[ScanWindow] = None,
    tol: float = 1e-6,
) -> list[CatalogEntry]:
    out = []
    for label in enumerate_pairings(s):
        notes: list[str] = []
        report = None
        if label.kind == "single":
            pair = s.pair(label.pairs[0])
            locus = single_pair_locus(pair)
            if not pair.is_parallel:
                notes.append(SINGLE_NOTE)
            if oracle:
                report = verify_single_pair(pair, locus, window, tol)
        else:
            p1, p2 = s.pair(label.pairs[0]), s.pair(label.pairs[1])
            locus = compute_locus(p1, p2)
            if label.kind == "shared":
                notes.append("shares a line")
            if p1.is_parallel or p2.is_parallel:
                notes.append("parallel pair")
            if p1.is_orthogonal or p2.is_orthogonal:
                notes.append("orthogonal pair")
            if oracle:
                report = verify_locus(p1, p2, locus, window, tol)
        out.append(CatalogEntry(label, locus, notes, report))
    return out
