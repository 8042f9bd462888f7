import itertools
import random

import pytest
from hypothesis import given, strategies as st

from mixswitch.errors import NonAbelianGroup, ParamMismatch, UnknownVertex, VertexSetMismatch
from mixswitch.graph import ColourParams, underlying, validate
from mixswitch.group import SwitchElement, closure, compose, identity, invert, push_group, swap_group
from mixswitch.switching import (
    SwitchingPair,
    apply_assignment,
    apply_sequence,
    apply_switch,
    enumerate_switch_equal,
    identity_assignment,
    switch_equal,
)
from oracles import assignments, switch_all, switch_once
from strategies import assignment_for, graph_and_group

SWAP = SwitchElement((2, 1), (), ())
PUSH = SwitchElement((), (1,), (1,))


def test_apply_switch_examples():
    g = validate(2, 0, "abcd", [("a", "b", 1), ("c", "d", 1)])
    assert apply_switch(g, "a", SWAP).edges == {("a", "b", 2), ("c", "d", 1)}
    arc = validate(0, 1, "ab", arcs=[("a", "b", 1)])
    assert apply_switch(arc, "a", PUSH).arcs == {("b", "a", 1)}
    arc2 = validate(0, 2, "ab", arcs=[("a", "b", 1)])
    assert apply_switch(arc2, "a", SwitchElement((), (2, 1), (0, 1))).arcs == {("a", "b", 2)}


def test_apply_switch_errors():
    g = validate(2, 0, "ab", [("a", "b", 1)])
    with pytest.raises(UnknownVertex):
        apply_switch(g, "z", SWAP)
    with pytest.raises(ParamMismatch):
        apply_switch(g, "a", PUSH)


def test_apply_sequence_examples():
    g = validate(2, 0, "ab", [("a", "b", 1)])
    assert apply_sequence(g, []) == g
    assert apply_sequence(g, [SwitchingPair("a", SWAP), SwitchingPair("a", invert(SWAP))]) == g
    assert apply_sequence(g, [SwitchingPair("a", SWAP), SwitchingPair("b", SWAP)]) == g


def test_apply_assignment_examples():
    path = validate(0, 1, "abc", arcs=[("a", "b", 1), ("b", "c", 1)])
    assert apply_assignment(path, identity_assignment(path)) == path
    sigma = identity_assignment(path) | {"c": PUSH}
    assert apply_assignment(path, sigma).arcs == {("a", "b", 1), ("c", "b", 1)}


@given(graph_and_group(max_vertices=5), st.data())
def test_apply_assignment_is_lexicographic_sequence(gg, data):
    g, group = gg
    sigma = data.draw(assignment_for(g, group))
    expected = switch_all(g, sigma)
    assert apply_assignment(g, sigma) == expected
    pairs = [SwitchingPair(v, sigma[v]) for v in sorted(sigma)]
    assert apply_sequence(g, pairs) == expected


@given(graph_and_group(max_vertices=5), st.data())
def test_abelian_order_independence(gg, data):
    g, group = gg
    sigma = data.draw(assignment_for(g, group))
    order = data.draw(st.permutations(list(g.vertices)))
    assert apply_sequence(g, [SwitchingPair(v, sigma[v]) for v in order]) == apply_assignment(g, sigma)


def test_non_commuting_order_matters():
    a = SwitchElement((), (2, 1), (0, 0))
    b = SwitchElement((), (1, 2), (1, 0))
    g = validate(0, 2, "ab", arcs=[("a", "b", 1)])
    one = apply_sequence(g, [SwitchingPair("a", a), SwitchingPair("b", b)])
    two = apply_sequence(g, [SwitchingPair("b", b), SwitchingPair("a", a)])
    assert one != two


@given(graph_and_group(max_vertices=5, min_vertices=1), st.data())
def test_switch_laws(gg, data):
    g, group = gg
    v = data.draw(st.sampled_from(g.vertices))
    x, y = data.draw(st.sampled_from(group.elements)), data.draw(st.sampled_from(group.elements))
    sw = apply_switch(g, v, x)
    assert sw == switch_once(g, v, x)
    assert underlying(sw) == underlying(g)
    assert apply_switch(sw, v, invert(x)) == g
    assert apply_switch(sw, v, y) == apply_switch(g, v, compose(y, x))


@given(graph_and_group(max_vertices=6, min_vertices=1), st.data())
def test_independent_set_commutation(gg, data):
    g, group = gg
    adj = {frozenset((u, v)) for u, v, _ in g.edges | g.arcs}
    indep = []
    for v in data.draw(st.permutations(list(g.vertices))):
        if all(frozenset((v, w)) not in adj for w in indep):
            indep.append(v)
    el = data.draw(st.sampled_from(group.elements))
    base = apply_sequence(g, [SwitchingPair(v, el) for v in sorted(indep)])
    assert apply_sequence(g, [SwitchingPair(v, el) for v in indep]) == base


def test_switch_equal_examples():
    g = validate(2, 0, "ab", [("a", "b", 1)])
    sigma = switch_equal(g, g, swap_group())
    assert apply_assignment(g, sigma) == g
    h = validate(2, 0, "ab", [("a", "b", 2)])
    sigma = switch_equal(g, h, swap_group())
    assert sum(not s.is_identity() for s in sigma.values()) == 1
    ab = validate(0, 1, "ab", arcs=[("a", "b", 1)])
    ba = validate(0, 1, "ab", arcs=[("b", "a", 1)])
    sigma = switch_equal(ab, ba, push_group())
    assert apply_assignment(ab, sigma) == ba
    assert sum(not s.is_identity() for s in sigma.values()) == 1


def test_switch_equal_errors():
    a = SwitchElement((), (2, 1), (0, 0))
    b = SwitchElement((), (1, 2), (1, 0))
    g = validate(0, 2, "ab", arcs=[("a", "b", 1)])
    with pytest.raises(NonAbelianGroup):
        switch_equal(g, g, closure(ColourParams(0, 2), [a, b]))
    with pytest.raises(VertexSetMismatch):
        switch_equal(g, validate(0, 2, "abc", arcs=[("a", "b", 1)]), closure(ColourParams(0, 2), []))


@given(graph_and_group(max_vertices=4, max_order=4), st.data())
def test_switch_equal_matches_enumeration(gg, data):
    g, group = gg
    if data.draw(st.booleans()):
        h = apply_assignment(g, data.draw(assignment_for(g, group)))
    else:
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        from mixswitch.generate import random_graph

        h = random_graph(g.params, len(g), 0.6, rng)
    sigma = switch_equal(g, h, group)
    expected = any(switch_all(g, s) == h for s in assignments(g, group.elements))
    assert (sigma is not None) == expected == (enumerate_switch_equal(g, h, group) is not None)
    if sigma is not None:
        assert apply_assignment(g, sigma) == h
