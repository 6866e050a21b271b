import json

from hypothesis import given, settings
from hypothesis import strategies as st

from rosewindow.autgroup import automorphism_group, edge_orbit_count
from rosewindow.classify import (
    cayley_by_theorem,
    classify,
    et_by_theorem,
    family_memberships,
    vt_by_theorem,
)
from rosewindow.graph import RoseWindowParams as P
from rosewindow.graph import all_params, build


def families(p):
    return [f.family for f in family_memberships(p)]


def test_family_examples():
    assert families(P(20, 10, 3)) == [2]
    assert families(P(10, 3, 4)) == [3]
    assert families(P(12, 5, 10)) == [4]
    assert families(P(48, 14, 37)) == [4]
    assert 1 in families(P(10, 5, 3))
    assert families(P(7, 2, 2)) == []
    assert 5 in families(P(12, 2, 5))


def test_family_labels():
    (f,) = family_memberships(P(20, 10, 3))
    assert f.label == "F2(-)" and f.get("m") == 5
    (f,) = family_memberships(P(16, 8, 3))
    assert f.label == "F2(+)"
    obj = f.to_json_obj()
    assert obj["family"] == 2 and obj["representative"] == [16, 8, 3]


def test_theorem_verdicts_examples():
    assert (et_by_theorem(P(20, 10, 3)), vt_by_theorem(P(20, 10, 3)), cayley_by_theorem(P(20, 10, 3))) == (
        False, True, False)
    assert (vt_by_theorem(P(10, 3, 4)), cayley_by_theorem(P(10, 3, 4))) == (True, False)
    assert (vt_by_theorem(P(48, 14, 37)), cayley_by_theorem(P(48, 14, 37))) == (True, False)
    assert cayley_by_theorem(P(36, 11, 28))
    assert not vt_by_theorem(P(7, 2, 2))


def test_r8_2_3_is_edge_transitive():
    # Family 3 with m = 4, so one edge orbit
    assert et_by_theorem(P(8, 2, 3))
    g = build(P(8, 2, 3))
    assert edge_orbit_count(automorphism_group(g), g)[0] == 1


def test_union_semantics_on_r4_2_1():
    # Family 2 with sign -1 fails its condition; Family 1 still makes it Cayley
    fams = family_memberships(P(4, 2, 1))
    assert {f.family for f in fams} >= {1, 2}
    assert cayley_by_theorem(P(4, 2, 1))
    assert classify(P(4, 2, 1), search=True).cayley_search


def test_containments():
    for m in range(3, 21):
        for p in all_params(2 * m, min_n=2 * m):
            fams = families(p)
            if 5 in fams:
                assert 1 in fams, p
            if 3 in fams and m % 2 == 0:
                assert 1 in fams, p


def test_edge_transitivity_matches_computation_up_to_14():
    for p in all_params(14, normalized_only=True):
        g = build(p)
        count, _ = edge_orbit_count(automorphism_group(g), g)
        assert et_by_theorem(p) == (count == 1), p


def test_report_json_without_search():
    rep = classify(P(20, 10, 3))
    obj = json.loads(rep.to_json())
    assert obj["vt_theorem"] is True and obj["cayley_theorem"] is False
    assert "cayley_search" not in obj and "aut_order" not in obj


def test_report_json_with_search():
    obj = classify(P(20, 10, 3), search=True).to_json_obj()
    assert obj["vt_search"] is True and obj["cayley_search"] is False
    assert obj["aut_order"] == 160 and obj["edge_orbits"] == 2
    assert "rim+hub" in obj["edge_orbit_kinds"]
    assert obj["disagreements"] == []


def test_degenerate_report_has_no_search_fields():
    rep = classify(P(8, 1, 4), search=True)
    assert rep.degenerate and not rep.has_search
    obj = rep.to_json_obj()
    assert obj["degenerate"] is True and "vt_search" not in obj


def test_witness_summary_in_report():
    rep = classify(P(36, 11, 28), search=True)
    assert rep.normalized == P(36, 11, 8)
    assert rep.cayley_search and rep.witness["generators"] >= 1


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=3, max_value=40).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(1, n - 1), st.integers(1, n - 1))))
def test_verdicts_invariant_under_sign_changes(t):
    n, a, r = t
    reps = P(n, a, r).representatives()
    assert len({vt_by_theorem(q) for q in reps}) == 1
    assert len({cayley_by_theorem(q) for q in reps}) == 1
    assert len({et_by_theorem(q) for q in reps}) == 1


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=3, max_value=40).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(1, n - 1), st.integers(1, n - 1))))
def test_cayley_implies_vertex_transitive(t):
    p = P(*t)
    if cayley_by_theorem(p):
        assert vt_by_theorem(p)
    if et_by_theorem(p) and not p.degenerate:
        assert vt_by_theorem(p)
