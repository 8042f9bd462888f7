"""Switchable homomorphism, isomorphism, core and colouring decisions.

Each fast route goes through the switching graph; each has a brute-force
counterpart (``oracle_*``) that works straight from the definition by
enumerating switch assignments.  Every witness returned here has been
re-verified end to end.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Iterator, Mapping

import numpy as np

from . import kernels
from .errors import Disagreement, NonAbelianGroup, ParamMismatch, SearchSpaceTooLarge
from .graph import ColourParams, MixedGraph, induced_subgraph, remove_element
from .group import SwitchElement, SwitchingGroup, compose, identity, invert
from .hom import (
    VertexMap,
    degree_order,
    find_hom,
    find_iso,
    find_non_surjective_endo,
    make_map,
    search,
)
from .product import p_gamma, s_gamma
from .switching import apply_assignment

ORACLE_BOUND = 10**6
TARGET_BOUND = 10**5
CROSS_CHECK_VERTICES = 10


@dataclass(frozen=True, eq=False)
class SwitchHomWitness:
    """``mapping`` is a homomorphism from ``source`` switched by ``assignment``."""

    source: MixedGraph
    target: MixedGraph
    assignment: Mapping[str, SwitchElement]
    mapping: VertexMap

    def verify(self) -> bool:
        switched = apply_assignment(self.source, self.assignment)
        m = make_map(switched, self.target, self.mapping.mapping)
        return set(self.assignment) == set(self.source.vertices) and m.verified


@dataclass(frozen=True, eq=False)
class ColouringWitness:
    target: MixedGraph
    switch_witness: SwitchHomWitness

    def verify(self) -> bool:
        t = self.target
        pairs = len(t.edges) + len(t.arcs)
        complete = pairs == comb(len(t), 2) or t.params.m + t.params.n == 0
        return complete and self.switch_witness.target == t and self.switch_witness.verify()


def _require(group: SwitchingGroup, *graphs: MixedGraph) -> None:
    if not group.abelian:
        raise NonAbelianGroup(f"group of order {len(group)} is not Abelian")
    for g in graphs:
        if g.params != group.params:
            raise ParamMismatch(f"graph {g.params} vs group {group.params}")


def _checked(w: SwitchHomWitness) -> SwitchHomWitness:
    if not w.verify():
        raise RuntimeError("internal: extracted switchable homomorphism does not verify")
    return w


def witness_from_product_map(g: MixedGraph, target: MixedGraph, index, f: Mapping[str, str]
                             ) -> SwitchHomWitness:
    """Turn ``g -> P_Gamma(target)`` into a switch assignment plus a map to ``target``.

    If ``v`` lands on ``(x, gamma)``, switch ``v`` by the inverse of ``gamma``
    and send it to ``x``.
    """
    assignment, mapping = {}, {}
    for v in g.vertices:
        x, gamma = index.pair(f[v])
        assignment[v] = invert(gamma)
        mapping[v] = x
    switched = apply_assignment(g, assignment)
    return _checked(SwitchHomWitness(g, target, assignment, make_map(switched, target, mapping)))


def switchable_hom(g: MixedGraph, h: MixedGraph, group: SwitchingGroup) -> SwitchHomWitness | None:
    """Decide ``g ->_Gamma h`` as an ordinary homomorphism ``g -> P_Gamma(h)``."""
    _require(group, g, h)
    pg, index = p_gamma(h, group)
    f = find_hom(g, pg)
    if f is None:
        return None
    return witness_from_product_map(g, h, index, f.mapping)


def _element_list(g: MixedGraph):
    """Edges and arcs as ``(lo, hi, code read from lo)`` index arrays."""
    iu, iv = np.nonzero(np.triu(g.codes))
    return iu.astype(np.int64), iv.astype(np.int64), g.codes[iu, iv].astype(np.int32)


def oracle_switchable_hom(g: MixedGraph, h: MixedGraph, group: SwitchingGroup,
                          bound: int = ORACLE_BOUND) -> SwitchHomWitness | None:
    """Try every assignment of group elements to ``V(g)``; first success wins."""
    _require(group, g, h)
    space = len(group) ** len(g)
    if space > bound:
        raise SearchSpaceTooLarge(f"{len(group)}^{len(g)} assignments exceeds {bound}")
    eu, ev, ec = _element_list(g)
    dom0 = np.ones((len(g), len(h)), dtype=np.bool_)
    found, sigma, f = kernels.enumerate_switch_hom(
        len(g), eu, ev, ec, group.actions, g.params.transpose_table(), h.codes, dom0,
        degree_order(g), np.arange(len(h), dtype=np.int64),
    )
    if not found:
        return None
    assignment = {v: group.elements[int(sigma[i])] for i, v in enumerate(g.vertices)}
    switched = apply_assignment(g, assignment)
    mapping = {v: h.vertices[int(f[i])] for i, v in enumerate(g.vertices)}
    return _checked(SwitchHomWitness(g, h, assignment, make_map(switched, h, mapping)))


# -- composition and pull-back -----------------------------------------------


def compose_witnesses(first: SwitchHomWitness, second: SwitchHomWitness) -> SwitchHomWitness:
    """From ``G ->_Gamma H`` and ``H ->_Gamma F`` build ``G ->_Gamma F``.

    Each vertex ``v`` of G is additionally switched by whatever ``second``
    applies at the image of ``v`` in H.
    """
    g = first.source
    via = first.mapping.mapping
    assignment = {v: compose(second.assignment[via[v]], first.assignment[v]) for v in g.vertices}
    mapping = {v: second.mapping.mapping[via[v]] for v in g.vertices}
    switched = apply_assignment(g, assignment)
    return SwitchHomWitness(g, second.target, assignment, make_map(switched, second.target, mapping))


def pull_back_assignment(f: VertexMap, sigma: Mapping[str, SwitchElement]) -> dict[str, SwitchElement]:
    """Switch every vertex of the domain like its image is switched by ``sigma``."""
    e = identity(f.domain.params)
    return {v: sigma.get(x, e) for v, x in f.mapping.items()}


# -- isomorphism ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SwitchIsoWitness:
    source: MixedGraph
    target: MixedGraph
    assignment: Mapping[str, SwitchElement]
    mapping: VertexMap

    def verify(self) -> bool:
        switched = apply_assignment(self.source, self.assignment)
        m = make_map(switched, self.target, self.mapping.mapping)
        return m.verified and m.is_bijective() and m.inverse().verified


def _direct_switch_iso(g: MixedGraph, h: MixedGraph, group: SwitchingGroup) -> SwitchIsoWitness | None:
    if (len(g), len(g.edges), len(g.arcs)) != (len(h), len(h.edges), len(h.arcs)):
        return None
    pg, index = p_gamma(h, group)
    # product vertices are stored sorted by name; recover the fiber of each
    fib = np.array([h.index[index.pairs[x][0]] for x in pg.vertices], dtype=np.int64)
    f = search(g, pg, np.ones((len(g), len(pg)), dtype=np.bool_), injective=True, fib=fib)
    if f is None:
        return None
    w = witness_from_product_map(g, h, index, f.mapping)
    iw = SwitchIsoWitness(g, h, w.assignment, w.mapping)
    if not iw.verify():
        raise RuntimeError("internal: switchable isomorphism witness does not verify")
    return iw


def switchable_iso(g: MixedGraph, h: MixedGraph, group: SwitchingGroup
                   ) -> tuple[bool, SwitchIsoWitness | None]:
    """Decide ``g`` switch-isomorphic to ``h`` via ``P_Gamma(g) ~= P_Gamma(h)``.

    A direct witness (assignment plus bijection) is extracted independently
    from a fiber-injective search into ``P_Gamma(h)``; the two routes must agree.
    """
    _require(group, g, h)
    pg, _ = p_gamma(g, group)
    ph, _ = p_gamma(h, group)
    by_product = find_iso(pg, ph) is not None
    w = _direct_switch_iso(g, h, group)
    if by_product != (w is not None):
        raise Disagreement(f"P_Gamma isomorphism says {by_product}, direct search says {w is not None}")
    return by_product, w


def oracle_switchable_iso(g: MixedGraph, h: MixedGraph, group: SwitchingGroup,
                          bound: int = ORACLE_BOUND) -> SwitchIsoWitness | None:
    _require(group, g, h)
    if len(group) ** len(g) > bound:
        raise SearchSpaceTooLarge(f"{len(group)}^{len(g)} assignments exceeds {bound}")
    if len(g) != len(h):
        return None
    seen = set()
    for combo in itertools.product(group.elements, repeat=len(g)):
        sigma = dict(zip(g.vertices, combo))
        switched = apply_assignment(g, sigma)
        if switched in seen:
            continue
        seen.add(switched)
        f = find_iso(switched, h)
        if f is not None:
            return SwitchIsoWitness(g, h, sigma, f)
    return None


# -- cores -------------------------------------------------------------------


def is_switchable_core(g: MixedGraph, group: SwitchingGroup) -> bool:
    """``g`` is a Gamma-switchable core iff S_Gamma(g) is an ordinary core."""
    _require(group, g)
    sg, _, _ = s_gamma(g, group)
    return find_non_surjective_endo(sg) is None


def maximal_proper_subgraphs(g: MixedGraph) -> Iterator[MixedGraph]:
    """Every proper subgraph of ``g`` is contained in one of these."""
    for v in g.vertices:
        yield induced_subgraph(g, [x for x in g.vertices if x != v])
    for u, v, _ in sorted(g.edges) + sorted(g.arcs):
        yield remove_element(g, u, v)


def oracle_is_switchable_core(g: MixedGraph, group: SwitchingGroup, bound: int = ORACLE_BOUND) -> bool:
    _require(group, g)
    return all(oracle_switchable_hom(g, h, group, bound) is None for h in maximal_proper_subgraphs(g))


def switchable_core_of(g: MixedGraph, group: SwitchingGroup, order=None
                       ) -> tuple[MixedGraph, SwitchHomWitness]:
    """Shrink ``g`` one vertex at a time while a switchable map to the smaller
    induced subgraph exists; return the result with a witness ``g ->_Gamma core``.

    ``order`` overrides the lexicographic vertex elimination order.
    """
    _require(group, g)
    cur = g
    rank = {v: k for k, v in enumerate(order)} if order is not None else None
    progress = True
    while progress:
        progress = False
        verts = sorted(cur.vertices, key=rank.__getitem__) if rank else cur.vertices
        for v in verts:
            smaller = induced_subgraph(cur, [x for x in cur.vertices if x != v])
            if switchable_hom(cur, smaller, group) is not None:
                cur = smaller
                progress = True
                break
    w = switchable_hom(g, cur, group)
    if w is None or not w.mapping.is_surjective():
        raise RuntimeError("internal: switchable core is not an onto image")
    return cur, w


# -- colourings ----------------------------------------------------------------


def _target_names(k: int) -> list[str]:
    width = len(str(max(k - 1, 0)))
    return [f"c{i:0{width}d}" for i in range(k)]


def count_targets(params: ColourParams, k: int) -> int:
    opts = params.m + 2 * params.n
    return 1 if opts == 0 else opts ** comb(k, 2)


def colouring_targets(params: ColourParams, k: int) -> Iterator[MixedGraph]:
    """All (m, n)-mixed graphs on ``k`` named vertices with underlying K_k."""
    names = _target_names(k)
    pairs = list(itertools.combinations(names, 2))
    options = [("e", c) for c in range(1, params.m + 1)]
    options += [("a", c) for c in range(1, params.n + 1)]
    options += [("r", c) for c in range(1, params.n + 1)]
    if not options:
        yield MixedGraph(params, tuple(names))
        return
    for combo in itertools.product(options, repeat=len(pairs)):
        edges, arcs = [], []
        for (x, y), (kind, c) in zip(pairs, combo):
            if kind == "e":
                edges.append((x, y, c))
            elif kind == "a":
                arcs.append((x, y, c))
            else:
                arcs.append((y, x, c))
        yield MixedGraph(params, tuple(names), frozenset(edges), frozenset(arcs))


def _guard_targets(params: ColourParams, k: int, bound: int) -> None:
    if k < 1:
        raise ValueError("k must be positive")
    total = count_targets(params, k)
    if total > bound:
        raise SearchSpaceTooLarge(f"{total} colouring targets exceeds {bound}")


def _first_success(fn, args_iter, jobs: int):
    if jobs <= 1:
        for args in args_iter:
            res = fn(*args)
            if res is not None:
                return res
        return None
    args = list(args_iter)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for res in pool.map(fn, *zip(*args), chunksize=max(1, len(args) // (4 * jobs))):
            if res is not None:
                return res
    return None


def _plain_colour(g: MixedGraph, target: MixedGraph):
    f = find_hom(g, target)
    if f is None:
        return None
    sw = SwitchHomWitness(g, target, {v: identity(g.params) for v in g.vertices}, f)
    return ColouringWitness(target, sw)


def _switch_colour(g: MixedGraph, target: MixedGraph, group: SwitchingGroup):
    w = switchable_hom(g, target, group)
    return None if w is None else ColouringWitness(target, w)


def k_colourable(g: MixedGraph, k: int, bound: int = TARGET_BOUND, jobs: int = 1) -> ColouringWitness | None:
    """A homomorphism (no switching) to some target on ``k`` vertices."""
    _guard_targets(g.params, k, bound)
    return _first_success(_plain_colour, ((g, t) for t in colouring_targets(g.params, k)), jobs)


def _enum_switch_colour(g, group, k, bound, jobs):
    _guard_targets(g.params, k, bound)
    return _first_success(_switch_colour, ((g, t, group) for t in colouring_targets(g.params, k)), jobs)


def switchable_k_colourable(g: MixedGraph, group: SwitchingGroup, k: int, method: str = "auto",
                            bound: int = TARGET_BOUND, jobs: int = 1) -> ColouringWitness | None:
    """Gamma-switchable k-colouring.

    ``method``: ``"enum"`` tries every target on K_k; ``"fast"`` is the
    polynomial route (``k <= 2`` only); ``"both"`` runs the two and raises on
    disagreement; ``"auto"`` uses the fast route for ``k <= 2`` and
    cross-checks it on small inputs, enumeration otherwise.
    """
    _require(group, g)
    if method == "enum":
        return _enum_switch_colour(g, group, k, bound, jobs)
    if k > 2:
        if method == "fast":
            raise ValueError("the polynomial route only covers k <= 2")
        return _enum_switch_colour(g, group, k, bound, jobs)
    fast = switchable_1_colourable(g, group) if k == 1 else switchable_2_colourable_fast(g, group)
    check = method == "both" or (
        method == "auto" and len(g) <= CROSS_CHECK_VERTICES and count_targets(g.params, k) <= bound
    )
    if check:
        slow = _enum_switch_colour(g, group, k, bound, jobs)
        if (slow is None) != (fast is None):
            raise Disagreement(f"fast route says {fast is not None}, enumeration says {slow is not None}")
    return fast


def _trivial_witness(g: MixedGraph, k: int) -> ColouringWitness:
    names = _target_names(k)
    p = g.params
    if k == 2 and p.m:
        target = MixedGraph(p, tuple(names), frozenset({(names[0], names[1], 1)}))
    elif k == 2 and p.n:
        target = MixedGraph(p, tuple(names), arcs=frozenset({(names[0], names[1], 1)}))
    else:
        target = MixedGraph(p, tuple(names))
    f = make_map(g, target, {v: names[0] for v in g.vertices})
    sw = SwitchHomWitness(g, target, {v: identity(p) for v in g.vertices}, f)
    return ColouringWitness(target, sw)


def switchable_1_colourable(g: MixedGraph, group: SwitchingGroup) -> ColouringWitness | None:
    _require(group, g)
    return _trivial_witness(g, 1) if not g.edges and not g.arcs else None


def _twin_reduce(t: MixedGraph) -> MixedGraph:
    """Keep one vertex from each class of vertices with identical coded neighbourhoods."""
    reps = {}
    for i, v in enumerate(t.vertices):
        row = t.codes[i]
        nz = np.flatnonzero(row)
        reps.setdefault((tuple(nz), tuple(row[nz])), v)
    return induced_subgraph(t, reps.values())


def _csr(g: MixedGraph):
    """Adjacency lists with the code read from each source vertex, no dense matrix."""
    m, n = g.params.m, g.params.n
    idx = g.index
    src, dst, code = [], [], []
    for u, v, c in g.edges:
        src += [idx[u], idx[v]]
        dst += [idx[v], idx[u]]
        code += [c, c]
    for u, v, c in g.arcs:
        src += [idx[u], idx[v]]
        dst += [idx[v], idx[u]]
        code += [m + c, m + n + c]
    src = np.array(src, dtype=np.int64)
    order = np.argsort(src, kind="stable")
    indptr = np.zeros(len(g) + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=len(g)), out=indptr[1:])
    return indptr, np.array(dst, dtype=np.int64)[order], np.array(code, dtype=np.int64)[order]


def switchable_2_colourable_fast(g: MixedGraph, group: SwitchingGroup) -> ColouringWitness | None:
    """Polynomial-time Gamma-switchable 2-colouring.

    Fails fast when both edges and arcs occur or when the occurring colours
    span two orbits.  Otherwise the target is P_Gamma(K_2) for one occurring
    colour, reduced so that every vertex has at most one neighbour per
    adjacency code; a homomorphism into it is forced once each component's
    root image is fixed.
    """
    _require(group, g)
    if not g.edges and not g.arcs:
        return _trivial_witness(g, 2)
    if g.edges and g.arcs:
        return None
    names = _target_names(2)
    p = g.params
    if g.edges:
        colours = {c for _, _, c in g.edges}
        orbits = [o for o in group.edge_orbits if o & colours]
        h = MixedGraph(p, tuple(names), frozenset({(names[0], names[1], min(colours))}))
    else:
        colours = {c for _, _, c in g.arcs}
        orbits = [o for o in group.arc_orbits if o & colours]
        h = MixedGraph(p, tuple(names), arcs=frozenset({(names[0], names[1], min(colours))}))
    if len(orbits) > 1:
        return None
    pg, index = p_gamma(h, group)
    red = _twin_reduce(pg)
    nbr = np.full((len(red), p.ncodes), -1, dtype=np.int64)
    for i in range(len(red)):
        for j in np.flatnonzero(red.codes[i]):
            c = red.codes[i, j]
            if nbr[i, c] != -1:
                raise RuntimeError("internal: reduced target is not colour-regular")
            nbr[i, c] = j
    indptr, indices, codes = _csr(g)
    ok, assign = kernels.propagate(indptr, indices, codes, nbr)
    if not ok:
        return None
    f = {v: red.vertices[int(assign[i])] for i, v in enumerate(g.vertices)}
    return ColouringWitness(h, witness_from_product_map(g, h, index, f))
