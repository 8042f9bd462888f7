"""Homomorphism, isomorphism, endomorphism and core search."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .graph import MixedGraph, induced_subgraph, require_same_params


@dataclass(frozen=True)
class VertexMap:
    domain: MixedGraph
    codomain: MixedGraph
    mapping: Mapping[str, str]
    verified: bool = field(default=False, compare=False)

    @property
    def image(self) -> set[str]:
        return set(self.mapping.values())

    def is_surjective(self) -> bool:
        return self.image == set(self.codomain.vertices)

    def is_bijective(self) -> bool:
        return self.is_surjective() and len(self.domain) == len(self.codomain)

    def then(self, other: "VertexMap") -> "VertexMap":
        """``other`` after ``self``."""
        return make_map(self.domain, other.codomain,
                        {v: other.mapping[x] for v, x in self.mapping.items()})

    def inverse(self) -> "VertexMap":
        return make_map(self.codomain, self.domain, {x: v for v, x in self.mapping.items()})


def _check(domain: MixedGraph, codomain: MixedGraph, f: Mapping[str, str]) -> bool:
    if domain.params != codomain.params:
        return False
    if set(f) != set(domain.vertices) or not set(f.values()) <= set(codomain.index):
        return False
    for u, v, c in domain.edges:
        if not codomain.has_edge(f[u], f[v], c):
            return False
    for u, v, c in domain.arcs:
        if not codomain.has_arc(f[u], f[v], c):
            return False
    return True


def make_map(domain: MixedGraph, codomain: MixedGraph, mapping: Mapping[str, str]) -> VertexMap:
    mapping = dict(mapping)
    return VertexMap(domain, codomain, mapping, _check(domain, codomain, mapping))


def verify_hom(f: VertexMap) -> bool:
    """Recheck every edge, arc, colour and orientation constraint from scratch."""
    return _check(f.domain, f.codomain, f.mapping)


def degree_order(g: MixedGraph) -> np.ndarray:
    """Descending degree, ties broken lexicographically."""
    deg = g.degrees
    return np.array(sorted(range(len(g)), key=lambda i: (-int(deg[i]), i)), dtype=np.int64)


def search(g: MixedGraph, h: MixedGraph, dom0: np.ndarray, injective: bool = False,
           fib: np.ndarray | None = None) -> VertexMap | None:
    """Run the kernel with explicit candidate domains.

    With ``injective`` set, vertices of ``g`` must land in distinct ``fib``
    classes of ``h`` (default: distinct vertices).
    """
    if fib is None:
        fib = np.arange(len(h), dtype=np.int64)
    found, f = kernels.hom_search(g.codes, h.codes, dom0, degree_order(g), fib, injective)
    if not found:
        return None
    return make_map(g, h, {g.vertices[i]: h.vertices[x] for i, x in enumerate(f)})


def find_hom(g: MixedGraph, h: MixedGraph, allowed: Mapping[str, Sequence[str]] | None = None,
             ) -> VertexMap | None:
    """A homomorphism ``g -> h`` or ``None``.

    ``allowed`` optionally narrows the candidate images of some vertices.
    """
    require_same_params(g, h)
    dom0 = np.ones((len(g), len(h)), dtype=np.bool_)
    if allowed:
        for v, xs in allowed.items():
            row = np.zeros(len(h), dtype=np.bool_)
            row[[h.index[x] for x in xs]] = True
            dom0[g.index[v]] = row
    f = search(g, h, dom0)
    if f is not None and not f.verified:
        raise RuntimeError("internal: search returned an invalid homomorphism")
    return f


def _signature(g: MixedGraph) -> list[tuple]:
    ncodes = g.params.ncodes
    return [tuple(np.bincount(row, minlength=ncodes)[1:]) for row in g.codes]


def refine(graphs: Sequence[MixedGraph]) -> list[list[int]]:
    """Joint colour refinement (1-WL on adjacency codes).

    Returns an integer colour per vertex of each graph; an isomorphism must
    preserve colours.
    """
    cols = [_signature(g) for g in graphs]
    nclasses = -1
    while True:
        palette = {c: k for k, c in enumerate(sorted({c for cs in cols for c in cs}))}
        cols = [[palette[c] for c in cs] for cs in cols]
        if len(palette) == nclasses:
            return cols
        nclasses = len(palette)
        nxt = []
        for g, cs in zip(graphs, cols):
            codes = g.codes
            nxt.append([
                (cs[u], tuple(sorted((int(codes[u, w]), cs[w]) for w in np.flatnonzero(codes[u]))))
                for u in range(len(g))
            ])
        cols = nxt


def find_iso(g: MixedGraph, h: MixedGraph) -> VertexMap | None:
    require_same_params(g, h)
    if len(g) != len(h) or len(g.edges) != len(h.edges) or len(g.arcs) != len(h.arcs):
        return None
    if Counter(_signature(g)) != Counter(_signature(h)):
        return None
    cg, chh = refine([g, h])
    if Counter(cg) != Counter(chh):
        return None
    dom0 = np.array(cg)[:, None] == np.array(chh)[None, :]
    f = search(g, h, dom0, injective=True)
    if f is None:
        return None
    if not (f.verified and f.is_bijective() and f.inverse().verified):
        raise RuntimeError("internal: isomorphism failed verification")
    return f


def find_non_surjective_endo(g: MixedGraph) -> VertexMap | None:
    """An endomorphism missing at least one vertex, or ``None`` iff ``g`` is a core."""
    n = len(g)
    for z in range(n):
        dom0 = np.ones((n, n), dtype=np.bool_)
        dom0[:, z] = False
        f = search(g, g, dom0)
        if f is not None:
            if not f.verified:
                raise RuntimeError("internal: endomorphism failed verification")
            return f
    return None


def is_core(g: MixedGraph) -> bool:
    return find_non_surjective_endo(g) is None


def core_of(g: MixedGraph, retraction: bool = False, rename: Mapping[str, str] | None = None):
    """The core of ``g`` as an induced subgraph.

    Repeatedly restricts to the image of a non-surjective endomorphism.
    ``rename`` (an injective relabelling) changes the search order, which is
    how uniqueness up to isomorphism is exercised.  With ``retraction`` set the
    verified map ``g -> core`` is returned as well.
    """
    from .graph import relabel

    back = None
    if rename is not None:
        back = {y: x for x, y in rename.items()}
        g0, g = g, relabel(g, rename)
    total = {v: v for v in g.vertices}
    cur = g
    while True:
        f = find_non_surjective_endo(cur)
        if f is None:
            break
        nxt = induced_subgraph(cur, f.image)
        total = {v: f.mapping[x] for v, x in total.items()}
        cur = nxt
    if back is not None:
        cur = relabel(cur, back)
        total = {back[v]: back[x] for v, x in total.items()}
        g = g0
    if not retraction:
        return cur
    r = make_map(g, cur, total)
    if not r.verified:
        raise RuntimeError("internal: core retraction failed verification")
    return cur, r


def brute_force_hom(g: MixedGraph, h: MixedGraph, bound: int = 10**6) -> VertexMap | None:
    """Scan all ``|V(h)|^|V(g)|`` vertex maps in lexicographic order."""
    from itertools import product

    from .errors import SearchSpaceTooLarge

    require_same_params(g, h)
    if len(h) ** len(g) > bound:
        raise SearchSpaceTooLarge(f"{len(h)}^{len(g)} maps exceeds {bound}")
    for images in product(h.vertices, repeat=len(g)):
        f = dict(zip(g.vertices, images))
        if _check(g, h, f):
            return VertexMap(g, h, f, True)
    return None


def brute_force_non_surjective_endo(g: MixedGraph, bound: int = 10**6) -> VertexMap | None:
    """Scan every self-map for a homomorphism that misses a vertex."""
    from itertools import product

    from .errors import SearchSpaceTooLarge

    if len(g) ** len(g) > bound:
        raise SearchSpaceTooLarge(f"{len(g)}^{len(g)} maps exceeds {bound}")
    for images in product(g.vertices, repeat=len(g)):
        if len(set(images)) < len(g):
            f = dict(zip(g.vertices, images))
            if _check(g, g, f):
                return VertexMap(g, g, f, True)
    return None
