import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rosewindow import autos
from rosewindow.errors import CapacityError, DegreeMismatch, ParameterError
from rosewindow.graph import RoseWindowParams
from rosewindow.perm import (
    Permutation,
    compose,
    element_order,
    inverse,
    is_regular_action,
    membership,
    orbit,
    parse_permutation,
    point_stabilizer,
    schreier_sims,
    trivial_group,
)

from .oracles import closure_size


def perms(degree):
    return st.permutations(list(range(degree))).map(Permutation)


def test_compose_applies_right_factor_first():
    p = Permutation([1, 2, 0])
    q = Permutation([0, 2, 1])
    # q first: 1 -> 2, then p: 2 -> 0
    assert (p * q)(1) == 0
    assert compose(p, q) == p * q


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        Permutation([1, 0]) * Permutation([0, 1, 2])


def test_invalid_images_rejected():
    with pytest.raises(ParameterError):
        Permutation([0, 0, 1])


def test_mu_rho_mu_is_rho_inverse():
    p = RoseWindowParams(6, 1, 2)
    mu, rho = autos.mu(p), autos.rho(p)
    assert compose(mu, compose(rho, mu)) == inverse(rho)


def test_tau_squared_identity():
    for n in (3, 7, 12):
        t = autos.tau(RoseWindowParams(n, 1, 1))
        assert compose(t, t).is_identity()


def test_inverse_examples():
    ident = Permutation.identity(6)
    assert inverse(ident) == ident
    rho = autos.rho(RoseWindowParams(5, 1, 1))
    assert inverse(rho) == rho ** 4
    e0 = autos.explicit_automorphism(("Epsilon", 0), RoseWindowParams(6, 1, 2))
    assert inverse(e0) == e0


def test_element_order_examples():
    assert element_order(Permutation.identity(4)) == 1
    assert element_order(autos.rho(RoseWindowParams(12, 1, 1))) == 12
    delta = autos.explicit_automorphism("Delta", RoseWindowParams(10, 5, 3))
    assert element_order(delta) == 4


def test_schreier_sims_examples():
    assert trivial_group(8).order() == 1
    assert schreier_sims([], degree=8).order() == 1
    p = RoseWindowParams(6, 1, 2)
    assert schreier_sims([autos.rho(p), autos.mu(p)]).order() == 12
    eps = [autos.explicit_automorphism(("Epsilon", i), p) for i in range(3)]
    assert schreier_sims([autos.rho(p), autos.mu(p), *eps]).order() == 48


def test_membership_examples():
    p = RoseWindowParams(6, 1, 2)
    eps = [autos.explicit_automorphism(("Epsilon", i), p) for i in range(3)]
    k = schreier_sims(eps)
    assert membership(k, Permutation.identity(12))
    assert membership(k, autos.rho(p, 3))
    assert not membership(schreier_sims([autos.rho(p)]), autos.mu(p))
    with pytest.raises(DegreeMismatch):
        membership(k, Permutation.identity(5))


def test_orbit_and_stabilizer_examples():
    p = RoseWindowParams(9, 2, 1)
    assert orbit(trivial_group(18), 4) == {4}
    assert orbit(schreier_sims([autos.rho(p)]), 0) == set(range(9))
    assert point_stabilizer(trivial_group(18), 3).order() == 1


def test_is_regular_action_examples():
    p = RoseWindowParams(8, 2, 3)
    h = schreier_sims([autos.rho(p), autos.explicit_automorphism("Delta", p)])
    assert h.order() == 16 and is_regular_action(h)
    assert not is_regular_action(schreier_sims([autos.rho(p)]))
    q = RoseWindowParams(6, 1, 2)
    assert not is_regular_action(schreier_sims([autos.rho(q), autos.mu(q)]))


def test_parse_one_line_and_cycles():
    assert parse_permutation("[1,2,0]") == Permutation([1, 2, 0])
    assert parse_permutation("(0 1)(2 3)", degree=5) == Permutation([1, 0, 3, 2, 4])
    assert str(Permutation([2, 0, 1])) == "[2,0,1]"


def test_elements_respects_cap():
    g = schreier_sims([Permutation([1, 2, 3, 4, 5, 6, 0]), Permutation([1, 0, 2, 3, 4, 5, 6])])
    assert g.order() == 5040
    with pytest.raises(CapacityError):
        list(g.elements(cap=100))
    assert len(set(g.elements(cap=5040))) == 5040


def test_enum_cap_env(monkeypatch):
    from rosewindow.perm import enum_cap

    monkeypatch.setenv("RW_ENUM_CAP", "17")
    assert enum_cap() == 17


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=7).flatmap(lambda d: st.lists(perms(d), min_size=1, max_size=3)))
def test_schreier_sims_order_matches_closure(gens):
    g = schreier_sims(gens)
    assert g.order() == closure_size(gens, len(gens[0]))
    assert all(x in g for x in gens)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=2, max_value=7).flatmap(lambda d: st.lists(perms(d), min_size=1, max_size=3)))
def test_orbit_stabilizer(gens):
    g = schreier_sims(gens)
    for v in range(g.degree):
        assert g.order() == len(g.orbit(v)) * g.stabilizer(v).order()


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=1, max_value=9).flatmap(lambda d: st.tuples(perms(d), perms(d), perms(d))))
def test_group_axioms(triple):
    p, q, s = triple
    assert (p * q) * s == p * (q * s)
    assert (p * ~p).is_identity() and (~p * p).is_identity()
    assert p ** element_order(p) == Permutation.identity(len(p))
    assert p ** -1 == ~p


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=6).flatmap(lambda d: st.lists(perms(d), min_size=1, max_size=2)))
def test_regular_groups_are_fixed_point_free(gens):
    g = schreier_sims(gens)
    if is_regular_action(g):
        assert all(x.is_identity() or x.is_derangement() for x in g.elements())


def test_random_element_in_group():
    p = RoseWindowParams(10, 3, 4)
    g = schreier_sims([autos.rho(p), autos.mu(p)])
    rng = random.Random(3)
    assert all(g.random_element(rng) in g for _ in range(20))
