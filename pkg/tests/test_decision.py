import random

import pytest
from hypothesis import given, settings, strategies as st

from mixswitch.decision import (
    compose_witnesses,
    is_switchable_core,
    k_colourable,
    oracle_is_switchable_core,
    oracle_switchable_hom,
    oracle_switchable_iso,
    pull_back_assignment,
    switchable_1_colourable,
    switchable_2_colourable_fast,
    switchable_core_of,
    switchable_hom,
    switchable_iso,
    switchable_k_colourable,
)
from mixswitch.errors import NonAbelianGroup, SearchSpaceTooLarge
from mixswitch.generate import random_abelian_group, random_assignment, random_graph, random_relabel
from mixswitch.graph import ColourParams, MixedGraph, validate
from mixswitch.group import SwitchElement, closure, push_group, swap_group, swap_push_group
from mixswitch.hom import find_hom, find_iso, make_map
from mixswitch.switching import apply_assignment
from oracles import has_switch_hom, has_switch_iso, switch_k_colourable
from strategies import abelian_groups, assignment_for, graph_and_group, graphs

P = ColourParams
DISJOINT_12 = validate(2, 0, "abcd", [("a", "b", 1), ("c", "d", 2)])
EDGE_1 = validate(2, 0, "xy", [("x", "y", 1)])
DIPATH = validate(0, 1, "abc", arcs=[("a", "b", 1), ("b", "c", 1)])
ARC = validate(0, 1, "xy", arcs=[("x", "y", 1)])
DICYCLE = validate(0, 1, "abc", arcs=[("a", "b", 1), ("b", "c", 1), ("c", "a", 1)])
NON_ABELIAN = closure(P(0, 2), [SwitchElement((), (2, 1), (0, 0)), SwitchElement((), (1, 2), (1, 0))])


def test_switchable_hom_examples():
    w = switchable_hom(DISJOINT_12, EDGE_1, swap_group())
    assert w.verify()
    assert sum(not s.is_identity() for s in w.assignment.values()) == 1
    switched = [v for v, s in w.assignment.items() if not s.is_identity()]
    assert switched[0] in ("c", "d")
    w = switchable_hom(DIPATH, ARC, push_group())
    assert w.verify()
    for group in (push_group(), closure(P(0, 1), [])):
        assert switchable_hom(DICYCLE, ARC, group) is None
        assert oracle_switchable_hom(DICYCLE, ARC, group) is None


def test_oracle_examples():
    assert oracle_switchable_hom(DISJOINT_12, EDGE_1, swap_group()).verify()
    assert oracle_switchable_hom(DIPATH, ARC, push_group()).verify()
    empty = MixedGraph(P(2, 0), ())
    w = oracle_switchable_hom(empty, EDGE_1, swap_group())
    assert w is not None and dict(w.mapping.mapping) == {}
    triv = closure(P(2, 0), [])
    assert oracle_switchable_hom(DISJOINT_12, EDGE_1, triv) is None
    with pytest.raises(SearchSpaceTooLarge):
        oracle_switchable_hom(DISJOINT_12, EDGE_1, swap_group(), bound=10)


def test_counterexample():
    group = swap_group()
    assert find_hom(validate(2, 0, "abcd", [("a", "b", 1), ("c", "d", 1)]), EDGE_1) is not None
    for x in group.elements:
        for y in group.elements:
            assert find_hom(DISJOINT_12, apply_assignment(EDGE_1, {"x": x, "y": y})) is None
    assert switchable_hom(DISJOINT_12, EDGE_1, group) is not None


def test_non_abelian_rejected():
    g = validate(0, 2, "ab", arcs=[("a", "b", 1)])
    for fn in (switchable_hom, oracle_switchable_hom):
        with pytest.raises(NonAbelianGroup):
            fn(g, g, NON_ABELIAN)
    with pytest.raises(NonAbelianGroup):
        switchable_iso(g, g, NON_ABELIAN)
    with pytest.raises(NonAbelianGroup):
        is_switchable_core(g, NON_ABELIAN)
    with pytest.raises(NonAbelianGroup):
        switchable_k_colourable(g, NON_ABELIAN, 2)


def test_switchable_iso_examples():
    e1, e2 = validate(2, 0, "ab", [("a", "b", 1)]), validate(2, 0, "ab", [("a", "b", 2)])
    assert switchable_iso(e1, e2, closure(P(2, 0), []))[0] is False
    ok, w = switchable_iso(e1, e2, swap_group())
    assert ok and w.verify()
    g = random_graph(P(2, 1), 5, 0.6, random.Random(1))
    h = apply_assignment(g, random_assignment(g, swap_push_group(), random.Random(2)))
    assert switchable_iso(g, h, swap_push_group())[0]


def test_core_examples():
    sw = swap_group()
    k2 = validate(2, 0, "ab", [("a", "b", 1)])
    assert is_switchable_core(k2, sw) and oracle_is_switchable_core(k2, sw)
    assert not is_switchable_core(DISJOINT_12, sw) and not oracle_is_switchable_core(DISJOINT_12, sw)
    single = validate(2, 0, "a")
    assert is_switchable_core(single, sw) and oracle_is_switchable_core(single, sw)
    iso_plus_edge = validate(2, 0, "abz", [("a", "b", 1)])
    assert not oracle_is_switchable_core(iso_plus_edge, sw) and not is_switchable_core(iso_plus_edge, sw)


def test_switchable_core_of_examples():
    sw = swap_group()
    core, w = switchable_core_of(DISJOINT_12, sw)
    assert len(core) == 2 and len(core.edges) == 1 and w.verify() and w.mapping.is_surjective()
    k2 = validate(2, 0, "ab", [("a", "b", 1)])
    assert switchable_core_of(k2, sw)[0] == k2
    path = validate(1, 0, "abcd", [("a", "b", 1), ("b", "c", 1), ("c", "d", 1)])
    core, _ = switchable_core_of(path, closure(P(1, 0), []))
    assert len(core) == 2


def test_k_colourable_examples():
    w = k_colourable(DICYCLE, 3)
    assert w is not None and w.verify() and find_iso(w.target, DICYCLE) is not None
    tri = validate(1, 0, "abc", [("a", "b", 1), ("b", "c", 1), ("a", "c", 1)])
    assert k_colourable(tri, 2) is None
    path12 = validate(2, 0, "abc", [("a", "b", 1), ("b", "c", 2)])
    assert k_colourable(path12, 2) is None
    with pytest.raises(SearchSpaceTooLarge):
        k_colourable(path12, 6, bound=100)


def test_switchable_colouring_examples():
    path12 = validate(2, 0, "abc", [("a", "b", 1), ("b", "c", 2)])
    w = switchable_k_colourable(path12, swap_group(), 2)
    assert w is not None and w.verify()
    assert switchable_k_colourable(DICYCLE, push_group(), 2) is None
    assert switchable_k_colourable(DICYCLE, push_group(), 3).verify()
    mixed = validate(1, 1, "abcd", [("a", "b", 1)], [("c", "d", 1)])
    assert switchable_2_colourable_fast(mixed, closure(P(1, 1), [])) is None
    odd = validate(1, 0, "abc", [("a", "b", 1), ("b", "c", 1), ("a", "c", 1)])
    assert switchable_2_colourable_fast(odd, closure(P(1, 0), [])) is None
    c4 = validate(2, 0, "abcd", [("a", "b", 1), ("b", "c", 2), ("c", "d", 1), ("a", "d", 2)])
    w = switchable_2_colourable_fast(c4, swap_group())
    assert w is not None and w.verify()
    assert switchable_k_colourable(c4, swap_group(), 2, method="both") is not None


def test_one_colouring():
    assert switchable_1_colourable(validate(2, 0, "abc"), swap_group()).verify()
    assert switchable_1_colourable(EDGE_1, swap_group()) is None
    assert switchable_2_colourable_fast(validate(2, 0, "abc"), swap_group()).verify()


@st.composite
def small_instance(draw, gv=4, hv=3, max_order=4):
    p = draw(st.sampled_from([P(2, 0), P(0, 1), P(2, 1), P(1, 1), P(0, 2), P(3, 0)]))
    return draw(graphs(p, gv)), draw(graphs(p, hv)), draw(abelian_groups(p, max_order))


@given(small_instance(gv=3, hv=3))
def test_switchable_hom_matches_brute_force(inst):
    g, h, group = inst
    w = switchable_hom(g, h, group)
    assert (w is not None) == has_switch_hom(g, h, group)
    o = oracle_switchable_hom(g, h, group)
    assert (o is not None) == (w is not None)
    if w is not None:
        assert w.verify() and o.verify()


@given(small_instance(gv=3, hv=3))
def test_composition(inst):
    g, h, group = inst
    f = random_graph(g.params, 2, 1.0, random.Random(len(g)))
    w1, w2 = switchable_hom(g, h, group), switchable_hom(h, f, group)
    if w1 and w2:
        assert compose_witnesses(w1, w2).verify()
        assert switchable_hom(g, f, group) is not None


@given(small_instance(gv=4, hv=3), st.data())
def test_pull_back(inst, data):
    g, h, group = inst
    f = find_hom(g, h)
    if f is None:
        return
    sigma = data.draw(assignment_for(h, group))
    tau = pull_back_assignment(f, sigma)
    assert make_map(apply_assignment(g, tau), apply_assignment(h, sigma), f.mapping).verified


@given(small_instance(gv=4, hv=4), st.booleans(), st.integers(0, 10**6))
def test_switchable_iso_matches_brute_force(inst, equivalent, seed):
    g, _, group = inst
    rng = random.Random(seed)
    if equivalent:
        h = apply_assignment(random_relabel(g, rng), random_assignment(g, group, rng))
    else:
        h = random_graph(g.params, len(g), 0.6, rng)
    ok, w = switchable_iso(g, h, group)
    assert ok == has_switch_iso(g, h, group)
    assert ok == (oracle_switchable_iso(g, h, group) is not None)
    if equivalent:
        assert ok
    if ok:
        assert w.verify()


@given(small_instance(gv=4, hv=1))
def test_core_matches_oracle(inst):
    g, _, group = inst
    assert is_switchable_core(g, group) == oracle_is_switchable_core(g, group)
    core, w = switchable_core_of(g, group)
    assert w.verify() and w.mapping.is_surjective() and is_switchable_core(core, group)
    rev, _ = switchable_core_of(g, group, order=list(reversed(g.vertices)))
    assert switchable_iso(core, rev, group)[0]


@settings(max_examples=60)
@given(small_instance(gv=4, hv=1, max_order=8))
def test_colourings_match_brute_force(inst):
    g, _, group = inst
    for k in (1, 2):
        w = switchable_k_colourable(g, group, k, method="both")
        assert (w is not None) == switch_k_colourable(g, group, k)
        if w is not None:
            assert w.verify()
            assert switchable_k_colourable(g, group, k + 1, method="enum") is not None


def test_parallel_jobs_same_answer():
    g = random_graph(P(1, 1), 5, 0.7, random.Random(4))
    group = random_abelian_group(P(1, 1), random.Random(4))
    one = switchable_k_colourable(g, group, 3, method="enum", jobs=1)
    two = switchable_k_colourable(g, group, 3, method="enum", jobs=2)
    assert (one is None) == (two is None)
    if one is not None:
        assert one.target == two.target
