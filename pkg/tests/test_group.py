import itertools

import pytest
from hypothesis import given, strategies as st

from mixswitch.errors import InvalidElement, MngSyntaxError, OrderCapExceeded
from mixswitch.graph import ColourParams
from mixswitch.group import (
    SwitchElement,
    closure,
    compose,
    identity,
    invert,
    parse_group,
    push_group,
    serialize_group,
    swap_group,
    swap_push_group,
    transitive_on_arc_colours,
    transitive_on_edge_colours,
)
from oracles import action_table, closure_by_saturation, local_states

P = ColourParams


def elements_of(params):
    for phi in itertools.permutations(range(1, params.m + 1)):
        for psi in itertools.permutations(range(1, params.n + 1)):
            for pi in itertools.product((0, 1), repeat=params.n):
                yield SwitchElement(phi, psi, pi)


ALL_21 = list(elements_of(P(2, 1)))
ALL_12 = list(elements_of(P(1, 2)))
ALL_30 = list(elements_of(P(3, 0)))


def test_identity_example():
    assert identity(P(2, 1)) == SwitchElement((1, 2), (1,), (0,))


def test_compose_phi_example():
    g1 = SwitchElement((2, 3, 1), (), ())
    g2 = SwitchElement((2, 1, 3), (), ())
    assert compose(g1, g2).phi[0] == 3


def test_invert_examples():
    assert invert(identity(P(2, 1))) == identity(P(2, 1))
    rev = SwitchElement((), (1, 2), (1, 0))
    assert invert(rev) == rev
    assert invert(SwitchElement((2, 3, 1), (), ())).phi == (3, 1, 2)


def test_invalid_elements():
    with pytest.raises(InvalidElement):
        SwitchElement((1, 1), (), ())
    with pytest.raises(InvalidElement):
        SwitchElement((), (1,), (2,))


@pytest.mark.parametrize("pool", [ALL_21, ALL_12, ALL_30])
def test_compose_matches_function_composition(pool):
    params = pool[0].params
    for g1, g2 in itertools.product(pool, repeat=2):
        t1, t2 = action_table(g1, params), action_table(g2, params)
        pos = {s: i for i, s in enumerate(local_states(params))}
        expected = tuple(t1[pos[s]] for s in t2)
        assert action_table(compose(g1, g2), params) == expected


@pytest.mark.parametrize("pool", [ALL_21, ALL_12])
def test_inverse_and_associativity(pool):
    e = identity(pool[0].params)
    for g in pool:
        assert compose(g, invert(g)) == e == compose(invert(g), g)
    for a, b, c in itertools.islice(itertools.product(pool, repeat=3), 2000):
        assert compose(a, compose(b, c)) == compose(compose(a, b), c)


def test_closure_examples():
    triv = closure(P(2, 1), [])
    assert len(triv) == 1 and triv.abelian
    push = push_group()
    assert len(push) == 2 and push.abelian and transitive_on_arc_colours(push)
    assert {g.pi for g in push.elements} == {(0,), (1,)}
    swap = swap_group()
    assert len(swap) == 2 and transitive_on_edge_colours(swap)
    assert not transitive_on_edge_colours(closure(P(2, 0), []))
    assert len(swap_push_group()) == 4 and swap_push_group().abelian


def test_wreath_pair_is_not_abelian():
    a = SwitchElement((), (2, 1), (0, 0))
    b = SwitchElement((), (1, 2), (1, 0))
    assert compose(a, b) != compose(b, a)
    assert not closure(P(0, 2), [a, b]).abelian


@given(st.lists(st.sampled_from(ALL_21), max_size=3), st.lists(st.sampled_from(ALL_12), max_size=3))
def test_closure_matches_saturation(gens21, gens12):
    for params, gens in ((P(2, 1), gens21), (P(1, 2), gens12)):
        grp = closure(params, gens)
        tables = {action_table(g, params) for g in grp.elements}
        assert tables == closure_by_saturation(params, gens)
        assert len(set(grp.elements)) == len(grp)
        assert grp.elements[0] == identity(params)
        commute = all(compose(x, y) == compose(y, x) for x in grp.elements for y in grp.elements)
        assert grp.abelian == commute


@given(st.lists(st.sampled_from(ALL_30), max_size=3))
def test_orbits_and_regularity(gens):
    grp = closure(P(3, 0), gens)
    for orbit in grp.edge_orbits:
        for c in orbit:
            assert {g.phi[c - 1] for g in grp.elements} == set(orbit)
    if grp.abelian:
        for orbit in grp.edge_orbits:
            for c, d in itertools.product(orbit, repeat=2):
                assert sum(g.phi[c - 1] == d for g in grp.elements) == len(grp) // len(orbit)
                if transitive_on_edge_colours(grp):
                    assert sum(g.phi[c - 1] == d for g in grp.elements) == 1


def test_deterministic_order_and_cap():
    gens = [SwitchElement((2, 3, 1), (), ()), SwitchElement((2, 1, 3), (), ())]
    g1, g2 = closure(P(3, 0), gens), closure(P(3, 0), gens)
    assert g1.elements == g2.elements and g1.digest == g2.digest and len(g1) == 6
    with pytest.raises(OrderCapExceeded):
        closure(P(3, 0), gens, cap=5)


def test_grp_round_trip_and_errors():
    grp = swap_push_group()
    again = parse_group(serialize_group(grp))
    assert again.elements == grp.elements
    assert parse_group("grp 0 1\ngen psi 1 pi 1\n").elements == push_group().elements
    with pytest.raises(MngSyntaxError, match="line 2"):
        parse_group("grp 2 0\ngen phi 1 1\n")
    with pytest.raises(MngSyntaxError):
        parse_group("grp 2 0\ngen phi 1\n")
