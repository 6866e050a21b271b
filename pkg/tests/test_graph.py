import json
import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from rosewindow.errors import ParameterError
from rosewindow.graph import (
    EdgeKind,
    RoseWindowParams,
    all_params,
    build,
    edge_kind,
    is_automorphism,
    is_isomorphism,
    normalization_map,
    normalize,
    tau_map,
    zeta_map,
)
from rosewindow.perm import Permutation


@st.composite
def params(draw, max_n=24, degenerate=None):
    n = draw(st.integers(min_value=3, max_value=max_n))
    a = draw(st.integers(min_value=1, max_value=n - 1))
    r = draw(st.integers(min_value=1, max_value=n - 1))
    p = RoseWindowParams(n, a, r)
    if degenerate is not None:
        assume(p.degenerate == degenerate)
    return p


def test_invalid_params():
    for bad in ((2, 1, 1), (5, 0, 1), (5, 5, 1), (5, 1, 0), (5, 1, 5)):
        with pytest.raises(ParameterError):
            RoseWindowParams(*bad)


def test_vertex_encoding():
    p = RoseWindowParams(6, 1, 2)
    assert p.A(7) == 1 and p.B(-1) == 11
    assert p.label(0) == "A0" and p.label(6) == "B0"


def test_build_r6_1_2():
    g = build(RoseWindowParams(6, 1, 2))
    assert g.order == 12 and len(g.edges) == 24 and g.is_regular(4)
    assert edge_kind(g, 0, 1) == {EdgeKind.RIM}
    assert edge_kind(g, 0, 6) == {EdgeKind.INSPOKE}
    assert edge_kind(g, 1, 6) == {EdgeKind.OUTSPOKE}
    assert edge_kind(g, 6, 8) == {EdgeKind.HUB}


def test_edge_kind_rejects_non_edge():
    g = build(RoseWindowParams(6, 1, 2))
    with pytest.raises(ParameterError):
        edge_kind(g, 0, 3)


def test_degenerate_graph():
    p = RoseWindowParams(8, 1, 4)
    g = build(p)
    assert p.degenerate and g.degenerate
    assert sorted(set(g.degrees())) == [3, 4]
    assert len(g.edges_of_kind(EdgeKind.HUB)) == 4
    assert not RoseWindowParams(8, 1, 3).degenerate


def test_edges_stored_once():
    # only hub edges can coincide, and only when 2r = 0 mod n
    g = build(RoseWindowParams(3, 1, 1))
    assert all(len(k) == 1 for k in g.edges.values())
    assert len(g.edges) == 12


def test_dot_output():
    dot = build(RoseWindowParams(4, 2, 1)).to_dot()
    lines = dot.strip().splitlines()
    assert lines[0] == "graph R_4_2_1 {" and lines[-1] == "}"
    assert sum(1 for x in lines if " -- " in x) == 16
    assert "  A0 -- A1 [kind=rim];" in lines


def test_json_output():
    obj = json.loads(build(RoseWindowParams(6, 1, 2)).to_json())
    assert (obj["n"], obj["a"], obj["r"], obj["degenerate"]) == (6, 1, 2, False)
    assert len(obj["edges"]) == 24
    assert [0, 1, "rim"] in obj["edges"]


def test_normalize_examples():
    assert normalize(RoseWindowParams(7, 5, 4)) == (RoseWindowParams(7, 2, 3), ("tau", "hub_reflection"))
    assert normalize(RoseWindowParams(12, 5, 10))[0] == RoseWindowParams(12, 5, 2)
    assert normalize(RoseWindowParams(36, 11, 28))[0] == RoseWindowParams(36, 11, 8)
    assert normalize(RoseWindowParams(6, 1, 2)) == (RoseWindowParams(6, 1, 2), ())


def test_zeta_example():
    p = RoseWindowParams(16, 8, 3)
    z, target = zeta_map(p)
    assert target == RoseWindowParams(16, 8, 11)
    assert is_isomorphism(z, build(p), build(target))
    with pytest.raises(ParameterError):
        zeta_map(RoseWindowParams(8, 2, 4))


def test_all_params_counts():
    assert len(list(all_params(4, include_degenerate=True))) == 4 + 9
    assert all(not p.degenerate for p in all_params(12))
    keys = list(all_params(10, normalized_only=True))
    assert keys == sorted(keys)
    assert all(normalize(p)[0] == p for p in keys)


@settings(max_examples=150, deadline=None)
@given(params(degenerate=False))
def test_nondegenerate_is_4_regular_with_4n_edges(p):
    g = build(p)
    assert g.order == 2 * p.n
    assert g.is_regular(4)
    assert len(g.edges) == 4 * p.n


@settings(max_examples=150, deadline=None)
@given(params())
def test_tags_partition_kinds(p):
    g = build(p)
    for kind in EdgeKind:
        assert len(g.edges_of_kind(kind)) <= p.n
    assert len(g.edges_of_kind(EdgeKind.RIM)) == p.n
    assert len(g.edges_of_kind(EdgeKind.INSPOKE)) == p.n


@settings(max_examples=150, deadline=None)
@given(params())
def test_normalization_map_is_isomorphism(p):
    q, prov = normalize(p)
    assert is_isomorphism(normalization_map(p, prov), build(p), build(q))
    assert normalize(q) == (q, ())


@settings(max_examples=100, deadline=None)
@given(params())
def test_tau_and_hub_reflection(p):
    n = p.n
    assert is_isomorphism(tau_map(n), build(p), build(RoseWindowParams(n, n - p.a, p.r)))
    assert build(p).edge_set == build(RoseWindowParams(n, p.a, n - p.r)).edge_set


def test_zeta_isomorphism_exhaustive_small():
    checked = 0
    for p in all_params(12):
        if math.gcd(p.n, p.r) != 1:
            continue
        z, target = zeta_map(p)
        assert is_isomorphism(z, build(p), build(target))
        checked += 1
    assert checked > 100


def test_rho_is_automorphism_everywhere():
    for p in all_params(10, include_degenerate=True):
        n = p.n
        rho = [(i + 1) % n for i in range(n)] + [n + (i + 1) % n for i in range(n)]
        assert is_automorphism(Permutation(rho), build(p))
