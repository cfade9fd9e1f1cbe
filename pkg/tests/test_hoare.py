from fractions import Fraction as F

import pytest

from conftest import make_action, triangle_action
from nec_subgroups.hoare import (
    InconsistentAction,
    InconsistentLinks,
    InducedReflection,
    InvalidAction,
    Link,
    analyze_dihedral_pair,
    assemble_chains,
    closing_links,
    induced_reflections,
    proper_periods_from_elliptics,
    subgroup_signature,
)
from nec_subgroups.representation import OrientabilityKind, trivial_action
from nec_subgroups.signature import normalize, parse_signature, reduced_area

R = InducedReflection


def test_induced_reflections_example2(example2):
    assert [str(r) for r in induced_reflections(example2)] == [
        "c1.0@3", "c1.0@4", "c1.1@1", "c1.1@2", "c1.2@2", "c1.2@4", "c2.0@1", "c2.0@4"]


def test_induced_reflections_example3(example3):
    got = {}
    for r in induced_reflections(example3):
        got.setdefault(r.generator, []).append(r.coset)
    assert got == {"c1.0": [5, 6], "c1.1": [4, 5], "c1.3": [4, 6]}


def test_induced_reflections_trivial():
    sig = parse_signature("(1;-;[3];{(2,2),()})")
    assert [str(r) for r in induced_reflections(trivial_action(sig))] == [
        "c1.0@1", "c1.1@1", "c1.2@1", "c2.0@1"]


def test_proper_periods_from_elliptics(example3):
    periods = proper_periods_from_elliptics(example3)
    assert sorted(p.period for p in periods if p.source == "x1") == [2, 3, 6]
    assert [p for p in periods if p.source == "x2"] == []
    sig = parse_signature("(0;+;[5];{()})")
    assert [p.period for p in proper_periods_from_elliptics(trivial_action(sig))] == [5]


def test_dihedral_example3(example3):
    a01 = analyze_dihedral_pair("c1.0", "c1.1", 5, example3)
    assert [(x.orbit, x.kind, x.m, x.period, x.endpoints) for x in a01] == [
        ((1, 2, 3, 4, 6), "link", 5, 1, (R(1, 0, 6), R(1, 1, 4))),
        ((5,), "link", 1, 5, (R(1, 0, 5), R(1, 1, 5))),
    ]
    a12 = analyze_dihedral_pair("c1.1", "c1.2", 8, example3)
    assert [(x.orbit, x.kind, x.m, x.period, x.endpoints) for x in a12] == [
        ((1, 3, 4, 5), "link", 4, 2, (R(1, 1, 4), R(1, 1, 5))),
        ((2, 6), "elliptic", 1, 8, None),
    ]


def test_dihedral_example2(example2):
    a = analyze_dihedral_pair("c1.0", "c1.1", 2, example2)
    assert [(x.orbit, x.period, x.endpoints) for x in a] == [
        ((1, 2), 1, (R(1, 1, 1), R(1, 1, 2))),
        ((3, 4), 1, (R(1, 0, 3), R(1, 0, 4))),
    ]


def test_dihedral_orbits_are_exhaustive(example3):
    for c, d, n in [("c1.0", "c1.1", 5), ("c1.1", "c1.2", 8), ("c1.2", "c1.3", 12)]:
        analyses = analyze_dihedral_pair(c, d, n, example3)
        assert sum(len(a.orbit) for a in analyses) == 6
        for a in analyses:
            assert len(a.orbit) == (2 * a.m if a.kind == "elliptic" else a.m)
            assert n % a.m == 0


def test_dihedral_rejects_wrong_exponent(example3):
    with pytest.raises(InconsistentAction):
        analyze_dihedral_pair("c1.0", "c1.1", 3, example3)


def test_closing_links(example3, example2):
    assert closing_links(1, example3) == [
        Link(R(1, 3, 4), R(1, 0, 6), 1, closing_links(1, example3)[0].source),
        Link(R(1, 3, 6), R(1, 0, 5), 1, closing_links(1, example3)[1].source),
    ]
    assert [(l.end1, l.end2, l.period) for l in closing_links(2, example2)] == [
        (R(2, 0, 1), R(2, 0, 1), 1), (R(2, 0, 4), R(2, 0, 4), 1)]
    theta1 = triangle_action((2, 3, 7), {0, 1, 2})
    assert closing_links(1, theta1) == []


def test_assemble_chains_examples(example2, example3):
    r2 = subgroup_signature(example2.signature, example2)
    assert [ch.cycle for ch in r2.chains] == [(3,), (), ()]
    assert sorted(r2.chains[0].periods) == [1, 1, 1, 1, 1, 3]
    assert len(r2.chains[0].vertices) == 6
    r3 = subgroup_signature(example3.signature, example3)
    [chain] = r3.chains
    assert sorted(chain.periods) == [1, 1, 1, 2, 2, 5] and chain.cycle == (2, 2, 5)


def test_assemble_single_self_link():
    [chain] = assemble_chains([Link(R(1, 0, 1), R(1, 0, 1), 1)])
    assert chain.cycle == ()


def test_assemble_rejects_bad_degree():
    with pytest.raises(InconsistentLinks, match="c1.0@1"):
        assemble_chains([Link(R(1, 0, 1), R(1, 1, 1), 2)])


def test_link_degree_is_two(example2, example3):
    for action in (example2, example3):
        report = subgroup_signature(action.signature, action)
        ends = {}
        for link in report.links:
            for e in (link.end1, link.end2):
                ends[e] = ends.get(e, 0) + 1
        assert set(ends) == set(report.induced_reflections)
        assert set(ends.values()) == {2}


def test_subgroup_signature_example2(example2):
    report = subgroup_signature(example2.signature, example2)
    assert report.signature == parse_signature("(1;-;[ ];{(3),( ),( )})")
    assert report.orientability.kind is OrientabilityKind.NONORIENTABLE


def test_subgroup_signature_example3(example3):
    report = subgroup_signature(example3.signature, example3)
    assert report.signature == parse_signature("(9;-;[2,3,6,8];{(2,2,5)})")
    assert reduced_area(report.signature) == 6 * reduced_area(example3.signature)


@pytest.mark.parametrize("periods", [(2, 3, 7), (3, 4, 6), (4, 6, 8)])
def test_theta1_is_fuchsian_triangle_group(periods):
    action = triangle_action(periods, {0, 1, 2})
    report = subgroup_signature(action.signature, action)
    assert report.signature == parse_signature("(0;+;[%d,%d,%d];{})" % periods)
    assert report.orientability.kind is OrientabilityKind.FUCHSIAN
    assert report.area.subgroup_fuchsian.area() == 2 * reduced_area(action.signature)


def test_printed_example3_needs_override(example3_printed):
    with pytest.raises(InvalidAction, match="x1 x2 e1"):
        subgroup_signature(example3_printed.signature, example3_printed)
    report = subgroup_signature(example3_printed.signature, example3_printed,
                                allow_invalid_relators=True)
    assert report.unverified and report.warnings


def test_override_does_not_cover_other_relators():
    action = make_action("(0;+;[];{(2,3,7)})", 2, {"c1.0": "(1,2)", "c1.1": "", "c1.2": "",
                                                  "c1.3": "(1,2)", "e1": ""})
    with pytest.raises(InvalidAction):
        subgroup_signature(action.signature, action, allow_invalid_relators=True)


@pytest.mark.parametrize("sig", ["(0;+;[];{(2,3,7)})", "(0;+;[6,6];{(5,8,12)})",
                                 "(1;-;[3];{(2,2),()})", "(2;+;[2,2];{})", "(3;-;[];{})",
                                 "(0;+;[ ];{(2,3),( )})", "(1;+;[];{(2,2,3),(4)})"])
def test_degree_one_reproduces_input(sig):
    sig = parse_signature(sig)
    report = subgroup_signature(sig, trivial_action(sig))
    assert report.signature == normalize(sig)
    assert report.area.subgroup_area == reduced_area(sig)


def test_area_derivation_example2(example2):
    ar = subgroup_signature(example2.signature, example2).area
    assert (ar.parent_area, ar.index, ar.subgroup_area, ar.genus) == (F(7, 12), 4, F(7, 3), 1)
    assert str(ar.parent_fuchsian) == "(1; 2,3)" and str(ar.subgroup_fuchsian) == "(3; 3)"
    assert ar.fuchsian_consistent
