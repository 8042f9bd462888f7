"""The switching graph P_Gamma(G), its transversals, and the quotient S_Gamma(G).

Product vertices are named ``"<v>@<k>"`` where ``k`` is the element index in
the group.  Adjacency follows switch application: the element joining
``(x, a)`` and ``(y, b)`` is whatever the G-element ``xy`` becomes after
switching ``x`` by element ``a`` and then ``y`` by element ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

import numpy as np

from .errors import IncompleteSelection, NonAbelianGroup, OrderCapExceeded, ParamMismatch
from .graph import MixedGraph, induced_subgraph, relabel
from .group import SwitchElement, SwitchingGroup
from .hom import VertexMap, make_map

MAX_PRODUCT_VERTICES = 200_000


@dataclass(frozen=True, eq=False)
class ProductIndex:
    base: tuple[str, ...]
    group: SwitchingGroup

    @staticmethod
    def name(v: str, k: int) -> str:
        return f"{v}@{k}"

    @cached_property
    def pairs(self) -> dict[str, tuple[str, int]]:
        return {self.name(v, k): (v, k) for v in self.base for k in range(len(self.group))}

    def pair(self, name: str) -> tuple[str, SwitchElement]:
        v, k = self.pairs[name]
        return v, self.group.elements[k]

    def fiber(self, v: str) -> list[str]:
        return [self.name(v, k) for k in range(len(self.group))]


def _require(g: MixedGraph, group: SwitchingGroup) -> None:
    if not group.abelian:
        raise NonAbelianGroup(f"switching graphs need an Abelian group (order {len(group)})")
    if group.params != g.params:
        raise ParamMismatch(f"group {group.params} vs graph {g.params}")


def p_gamma(g: MixedGraph, group: SwitchingGroup, rule: str = "operational",
            max_vertices: int = MAX_PRODUCT_VERTICES) -> tuple[MixedGraph, ProductIndex]:
    """Build P_Gamma(g).

    ``rule="literal"`` instead orients arc images by comparing the reversal
    bits of both elements at the *original* colour and colours them by
    ``psi_a(psi_b(j))``.  It only exists so tests can show where that reading
    parts ways with switch application.
    """
    _require(g, group)
    k = len(group)
    if len(g) * k > max_vertices:
        raise OrderCapExceeded(f"product would have {len(g) * k} vertices (limit {max_vertices})")
    phi, psi, pi = group.arrays
    idx = ProductIndex(g.vertices, group)
    names = [[idx.name(v, a) for a in range(k)] for v in g.vertices]
    vpos = g.index

    edges = []
    for x, y, i in g.edges:
        # colour[a, b] = phi_b(phi_a(i))
        colour = phi[:, phi[:, i - 1]].T + 1
        nx, ny = names[vpos[x]], names[vpos[y]]
        edges += [(nx[a], ny[b], int(colour[a, b])) for a in range(k) for b in range(k)]

    arcs = []
    for x, y, j in g.arcs:
        if rule == "operational":
            mid = psi[:, j - 1]
            colour = psi[:, mid].T + 1
            rev = pi[:, j - 1][:, None] ^ pi[:, mid].T
        elif rule == "literal":
            colour = psi[:, psi[:, j - 1]] + 1
            rev = pi[:, j - 1][:, None] != pi[:, j - 1][None, :]
        else:
            raise ValueError(f"unknown rule {rule!r}")
        nx, ny = names[vpos[x]], names[vpos[y]]
        for a in range(k):
            for b in range(k):
                c = int(colour[a, b])
                arcs.append((ny[b], nx[a], c) if rev[a, b] else (nx[a], ny[b], c))

    verts = tuple(n for row in names for n in row)
    return MixedGraph(g.params, verts, frozenset(edges), frozenset(arcs)), idx


def transversal_subgraph(pg: MixedGraph, index: ProductIndex,
                         selection: Mapping[str, SwitchElement | int]) -> MixedGraph:
    """The subgraph induced by one chosen vertex per fiber, renamed back to V(G)."""
    missing = [v for v in index.base if v not in selection]
    if missing:
        raise IncompleteSelection(f"no element selected for {', '.join(missing)}")
    chosen = {}
    for v in index.base:
        s = selection[v]
        k = s if isinstance(s, (int, np.integer)) else index.group.index_of(s)
        chosen[index.name(v, int(k))] = v
    return relabel(induced_subgraph(pg, chosen), chosen)


@dataclass(frozen=True)
class EquivClassTable:
    """Per-vertex partition of the group under the incident-colour relation.

    ``classes[v]`` lists the classes as tuples of element indices, each class
    headed by its representative; ``rep[v][k]`` is the representative of
    element ``k``.
    """

    classes: dict[str, tuple[tuple[int, ...], ...]]
    rep: dict[str, tuple[int, ...]]

    def count(self, v: str) -> int:
        return len(self.classes[v])


def equiv_classes(g: MixedGraph, group: SwitchingGroup, compare_all_pi: bool = False) -> EquivClassTable:
    """Group elements are equivalent at ``v`` when they agree on every colour
    incident with ``v``: phi on edge colours, psi and pi on arc colours.

    Reversal bits at colours that never meet ``v`` cannot change the
    neighbourhood of a product vertex.  ``compare_all_pi`` demands equal
    ``pi`` outright instead; that reading keeps twins apart (an isolated
    vertex under pushing splits in two) and exists for tests.
    """
    classes = {}
    rep = {}
    for v in g.vertices:
        ecols = sorted(g.incident_edge_colours(v))
        acols = sorted(g.incident_arc_colours(v))
        buckets: dict[tuple, list[int]] = {}
        for k, el in enumerate(group.elements):
            key = (
                tuple(el.phi[c - 1] for c in ecols),
                tuple(el.psi[c - 1] for c in acols),
                el.pi if compare_all_pi else tuple(el.pi[c - 1] for c in acols),
            )
            buckets.setdefault(key, []).append(k)
        cls = []
        r = [0] * len(group)
        for members in buckets.values():
            head = min(members, key=lambda k: group.elements[k].key)
            cls.append((head,) + tuple(k for k in members if k != head))
            for k in members:
                r[k] = head
        classes[v] = tuple(sorted(cls, key=lambda c: group.elements[c[0]].key))
        rep[v] = tuple(r)
    return EquivClassTable(classes, rep)


def s_gamma(g: MixedGraph, group: SwitchingGroup, product=None, compare_all_pi: bool = False
            ) -> tuple[MixedGraph, ProductIndex, VertexMap]:
    """S_Gamma(g) as an induced subgraph of P_Gamma(g), with the retraction onto it.

    The retraction is returned only after it has been verified to be a
    homomorphism that fixes every vertex of S_Gamma(g).
    """
    _require(g, group)
    pg, idx = product if product is not None else p_gamma(g, group)
    table = equiv_classes(g, group, compare_all_pi)
    keep = [idx.name(v, c[0]) for v in g.vertices for c in table.classes[v]]
    sg = induced_subgraph(pg, keep)
    r = make_map(pg, sg, {
        idx.name(v, k): idx.name(v, table.rep[v][k]) for v in g.vertices for k in range(len(group))
    })
    if not r.verified or any(r.mapping[x] != x for x in sg.vertices):
        raise RuntimeError("internal: S_Gamma retraction failed verification")
    return sg, idx, r
