"""Seeded random and exhaustive instance generation for test corpora."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .errors import OrderCapExceeded
from .graph import ColourParams, MixedGraph, relabel
from .group import SwitchElement, SwitchingGroup, closure, compose


def vertex_names(k: int) -> list[str]:
    if k <= 26:
        return [chr(ord("a") + i) for i in range(k)]
    width = len(str(k - 1))
    return [f"v{i:0{width}d}" for i in range(k)]


def _options(params: ColourParams) -> list[tuple[str, int]]:
    return ([("e", c) for c in range(1, params.m + 1)]
            + [("a", c) for c in range(1, params.n + 1)]
            + [("r", c) for c in range(1, params.n + 1)])


def _build(params, names, pairs, choice) -> MixedGraph:
    edges, arcs = [], []
    for (u, v), opt in zip(pairs, choice):
        if opt is None:
            continue
        kind, c = opt
        if kind == "e":
            edges.append((u, v, c))
        elif kind == "a":
            arcs.append((u, v, c))
        else:
            arcs.append((v, u, c))
    return MixedGraph(params, tuple(names), frozenset(edges), frozenset(arcs))


def random_graph(params: ColourParams, vertices: int, density: float = 0.5,
                 rng: random.Random | None = None) -> MixedGraph:
    """Each pair is joined with probability ``density`` by a uniformly chosen
    edge colour or oriented arc colour."""
    rng = rng or random.Random()
    names = vertex_names(vertices)
    pairs = list(itertools.combinations(names, 2))
    opts = _options(params)
    choice = [rng.choice(opts) if opts and rng.random() < density else None for _ in pairs]
    return _build(params, names, pairs, choice)


def sparse_random_graph(params: ColourParams, vertices: int, elements: int,
                        rng: random.Random | None = None) -> MixedGraph:
    """Exactly ``elements`` distinct pairs, for instances too large to scan all pairs."""
    rng = rng or random.Random()
    names = vertex_names(vertices)
    opts = _options(params)
    chosen: dict[tuple[int, int], tuple[str, int]] = {}
    while len(chosen) < elements:
        u, v = sorted(rng.sample(range(vertices), 2))
        chosen.setdefault((u, v), rng.choice(opts))
    pairs = [(names[u], names[v]) for u, v in chosen]
    return _build(params, names, pairs, list(chosen.values()))


def all_graphs(params: ColourParams, vertices: int) -> Iterator[MixedGraph]:
    """Every labelled (m, n)-mixed graph on the given number of vertices."""
    names = vertex_names(vertices)
    pairs = list(itertools.combinations(names, 2))
    opts = [None] + _options(params)
    for choice in itertools.product(opts, repeat=len(pairs)):
        yield _build(params, names, pairs, choice)


def random_element(params: ColourParams, rng: random.Random) -> SwitchElement:
    phi = list(range(1, params.m + 1))
    psi = list(range(1, params.n + 1))
    rng.shuffle(phi)
    rng.shuffle(psi)
    return SwitchElement(tuple(phi), tuple(psi), tuple(rng.randint(0, 1) for _ in psi))


def random_abelian_group(params: ColourParams, rng: random.Random, max_order: int = 8,
                         generators: int = 2, attempts: int = 50) -> SwitchingGroup:
    """Close random pairwise-commuting generators, rejecting any that would push
    the order past ``max_order``."""
    gens: list[SwitchElement] = []
    group = closure(params, [])
    for _ in range(attempts):
        if len(gens) >= generators:
            break
        cand = random_element(params, rng)
        if cand in group or any(compose(cand, g) != compose(g, cand) for g in gens):
            continue
        try:
            trial = closure(params, gens + [cand], cap=max_order)
        except OrderCapExceeded:
            continue
        if trial.abelian:
            gens.append(cand)
            group = trial
    return group


def random_assignment(g: MixedGraph, group: SwitchingGroup, rng: random.Random) -> dict:
    return {v: rng.choice(group.elements) for v in g.vertices}


def random_relabel(g: MixedGraph, rng: random.Random) -> MixedGraph:
    names = list(g.vertices)
    rng.shuffle(names)
    return relabel(g, dict(zip(g.vertices, names)))
