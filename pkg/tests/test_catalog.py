from collections import Counter

import pytest

from rectloci.catalog import (
    SINGLE_NOTE,
    LineSet4,
    PairingLabel,
    catalog_loci,
    enumerate_pairings,
    single_pair_locus,
)
from rectloci.cone import LinePair
from rectloci.errors import IdenticalLines
from rectloci.fixtures import generic_lines, square_lines, two_orthogonal_pairs
from rectloci.geom import Line, Point2
from rectloci.locus import SinglePoint, WholeLine


def test_pairing_counts_and_labels():
    labels = enumerate_pairings()
    assert Counter(l.kind for l in labels) == {"disjoint": 3, "shared": 12, "single": 6}
    assert [str(l) for l in labels[:3]] == ["AB|CD", "AC|BD", "AD|BC"]
    names = {str(l) for l in labels}
    assert len(names) == 21 and "AB|BC" in names and "AB|AB" not in names


def test_sequences():
    assert PairingLabel("disjoint", (("A", "C"), ("B", "D"))).sequences == ("ABCD", "DCBA")
    assert PairingLabel("single", (("A", "B"),)).sequences == ("AABB", "BBAA")


def test_lineset_validation():
    with pytest.raises(IdenticalLines):
        LineSet4.of(Line.vertical(0), Line.vertical(0), Line.horizontal(0), Line.horizontal(1))
    with pytest.raises(ValueError):
        LineSet4({"A": Line.vertical(0)})


def test_single_pair_examples():
    loc = single_pair_locus(LinePair(Line.horizontal(0), Line.horizontal(2)))
    assert isinstance(loc, WholeLine) and loc.line.same_as(Line.horizontal(1))
    loc = single_pair_locus(LinePair(Line.vertical(0), Line.vertical(2)))
    assert isinstance(loc, WholeLine) and loc.line.same_as(Line.vertical(1))
    loc = single_pair_locus(LinePair(Line.from_slope_intercept(1, 0), Line.from_slope_intercept(-1, 0)))
    assert isinstance(loc, SinglePoint) and loc.point.norm() < 1e-12


def test_generic_catalog():
    entries = catalog_loci(generic_lines(), oracle=True)
    assert len(entries) == 21
    counts = Counter(e.locus.kind for e in entries)
    assert counts == {"hyperbola": 3, "degenerate-hyperbola": 12, "point": 6}
    assert all(e.report.passed for e in entries)
    for e in entries:
        if e.label.kind == "single":
            assert SINGLE_NOTE in e.notes
        if e.label.kind == "shared":
            assert "shares a line" in e.notes


def test_square_catalog():
    entries = {str(e.label): e for e in catalog_loci(square_lines(), oracle=True)}
    assert all(e.report.passed for e in entries.values())
    centre = entries["AC|BD"].locus
    assert isinstance(centre, SinglePoint)
    assert (centre.point - Point2(1, 1)).norm() < 1e-12
    assert isinstance(entries["AC"].locus, WholeLine)
    assert "parallel pair" in entries["AC|BD"].notes


def test_two_orthogonal_pairs_catalog():
    entries = {str(e.label): e for e in catalog_loci(two_orthogonal_pairs(), oracle=True)}
    loc = entries["AB|CD"].locus
    assert isinstance(loc, WholeLine) and loc.line.same_as(Line.horizontal(1))
    assert "orthogonal pair" in entries["AB|CD"].notes
    assert all(e.report.passed for e in entries.values())


def test_relabeling_permutes_entries():
    s = generic_lines()
    perm = {"A": "C", "B": "A", "C": "D", "D": "B"}
    t = LineSet4({perm[k]: v for k, v in s.lines.items()})
    first = {str(e.label): e.locus for e in catalog_loci(s)}
    second = {str(e.label): e.locus for e in catalog_loci(t)}

    def rename(label):
        groups = ["".join(sorted(perm[c] for c in g)) for g in label.split("|")]
        return "|".join(groups)

    for label, loc in first.items():
        other = second.get(rename(label)) or second["|".join(reversed(rename(label).split("|")))]
        assert other.kind == loc.kind
        if loc.kind in ("hyperbola", "degenerate-hyperbola", "point"):
            c1 = loc.center if hasattr(loc, "center") else loc.point
            c2 = other.center if hasattr(other, "center") else other.point
            assert (c1 - c2).norm() < 1e-9


def test_to_dict():
    e = catalog_loci(square_lines(), oracle=True)[1]
    d = e.to_dict()
    assert d["label"] == "AC|BD" and d["sequences"] == ["ABCD", "DCBA"]
    assert d["oracle"]["verdict"] == "pass"
