"""Applying switches to graphs and testing labelled switch equality."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import NonAbelianGroup, ParamMismatch, UnknownVertex, VertexSetMismatch
from .graph import MixedGraph
from .group import SwitchElement, SwitchingGroup, identity


@dataclass(frozen=True)
class SwitchingPair:
    vertex: str
    elem: SwitchElement


SwitchSequence = Iterable[SwitchingPair]
SwitchAssignment = Mapping[str, SwitchElement]


def apply_switch(g: MixedGraph, v: str, gamma: SwitchElement) -> MixedGraph:
    if v not in g.index:
        raise UnknownVertex(v)
    if gamma.params != g.params:
        raise ParamMismatch(f"element {gamma.params} vs graph {g.params}")
    edges = set()
    for a, b, c in g.edges:
        edges.add((a, b, gamma.phi[c - 1] if v in (a, b) else c))
    arcs = set()
    for a, b, c in g.arcs:
        if v in (a, b):
            c2 = gamma.psi[c - 1]
            arcs.add((b, a, c2) if gamma.pi[c - 1] else (a, b, c2))
        else:
            arcs.add((a, b, c))
    return MixedGraph(g.params, g.vertices, frozenset(edges), frozenset(arcs))


def apply_sequence(g: MixedGraph, pairs: SwitchSequence) -> MixedGraph:
    for p in pairs:
        g = apply_switch(g, p.vertex, p.elem)
    return g


def apply_assignment(g: MixedGraph, sigma: SwitchAssignment) -> MixedGraph:
    """Switch each vertex once, in lexicographic vertex order.

    Vertices missing from ``sigma`` are left alone; identity entries are
    skipped.  Only for pairwise commuting elements is the order irrelevant.
    """
    for v, gamma in sigma.items():
        if v not in g.index:
            raise UnknownVertex(v)
        if gamma.params != g.params:
            raise ParamMismatch(f"element {gamma.params} vs graph {g.params}")
    # each edge or arc only sees the switches at its two ends: apply them
    # directly, smaller endpoint first, instead of rebuilding g per vertex
    edges = set()
    for a, b, c in g.edges:
        for x in (a, b):
            if x in sigma:
                c = sigma[x].phi[c - 1]
        edges.add((a, b, c))
    arcs = set()
    for a, b, c in g.arcs:
        for x in ((a, b) if a < b else (b, a)):
            if x in sigma:
                s = sigma[x]
                if s.pi[c - 1]:
                    a, b = b, a
                c = s.psi[c - 1]
        arcs.add((a, b, c))
    return MixedGraph(g.params, g.vertices, frozenset(edges), frozenset(arcs))


def identity_assignment(g: MixedGraph) -> dict[str, SwitchElement]:
    e = identity(g.params)
    return {v: e for v in g.vertices}


def _require_abelian(group: SwitchingGroup) -> None:
    if not group.abelian:
        raise NonAbelianGroup(f"group of order {len(group)} is not Abelian")


def switch_equal(g: MixedGraph, h: MixedGraph, group: SwitchingGroup) -> dict[str, SwitchElement] | None:
    """An assignment turning ``g`` into exactly ``h``, or ``None``.

    Backtracks over group elements per vertex (descending degree, ties
    lexicographic) and checks each edge or arc once both ends are assigned.
    """
    _require_abelian(group)
    if g.vertices != h.vertices:
        raise VertexSetMismatch("graphs must share their vertex set")
    if g.params != h.params or group.params != g.params:
        raise ParamMismatch(f"{g.params}, {h.params}, group {group.params}")
    if g.codes.astype(bool).tolist() != h.codes.astype(bool).tolist():
        return None

    acts = group.actions
    tr = g.params.transpose_table()
    gc, hc = g.codes, h.codes
    idx = g.index
    order = sorted(g.vertices, key=lambda v: (-int(g.degrees[idx[v]]), v))
    pos = {v: k for k, v in enumerate(order)}
    # constraints checked when the later endpoint (in search order) is assigned
    checks: dict[str, list[tuple[int, int]]] = {v: [] for v in order}
    for a, b in {(a, b) for a, b, _ in g.edges} | {(a, b) for a, b, _ in g.arcs}:
        lo, hi = (a, b) if a < b else (b, a)
        late = lo if pos[lo] > pos[hi] else hi
        checks[late].append((idx[lo], idx[hi]))

    chosen: dict[int, int] = {}

    def consistent(v: str) -> bool:
        for i, j in checks[v]:
            c = acts[chosen[i], gc[i, j]]
            c = tr[acts[chosen[j], tr[c]]]
            if c != hc[i, j]:
                return False
        return True

    def search(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for e in range(len(group)):
            chosen[idx[v]] = e
            if consistent(v) and search(k + 1):
                return True
        del chosen[idx[v]]
        return False

    if not search(0):
        return None
    return {v: group.elements[chosen[idx[v]]] for v in g.vertices}


def enumerate_switch_equal(g: MixedGraph, h: MixedGraph, group: SwitchingGroup,
                           bound: int = 10**6) -> dict[str, SwitchElement] | None:
    """Exhaustive counterpart of :func:`switch_equal` over all ``|Gamma|^|V|`` assignments."""
    from itertools import product

    from .errors import SearchSpaceTooLarge

    _require_abelian(group)
    if g.vertices != h.vertices:
        raise VertexSetMismatch("graphs must share their vertex set")
    if len(group) ** len(g) > bound:
        raise SearchSpaceTooLarge(f"{len(group)}^{len(g)} assignments exceeds {bound}")
    for combo in product(group.elements, repeat=len(g)):
        sigma = dict(zip(g.vertices, combo))
        if apply_assignment(g, sigma) == h:
            return sigma
    return None
