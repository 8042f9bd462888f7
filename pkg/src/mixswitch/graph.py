"""(m, n)-mixed graphs: data model, validation and the ``mng`` text format.

A graph is immutable once built.  Vertices are opaque strings kept in
lexicographic order; that order is also the row order of :attr:`MixedGraph.codes`,
the dense integer encoding handed to the search kernels.

Adjacency codes, read from the row vertex ``u`` towards the column vertex ``v``::

    0                 no adjacency
    i      (1..m)     edge uv of colour i
    m+j    (1..n)     arc u->v of colour j
    m+n+j  (1..n)     arc v->u of colour j
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    ColourOutOfRange,
    LoopFound,
    MngSyntaxError,
    ParallelElements,
    ParamMismatch,
    UnknownVertex,
)

Edge = tuple[str, str, int]
Arc = tuple[str, str, int]


@dataclass(frozen=True)
class ColourParams:
    m: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.m, int) and isinstance(self.n, int)) or self.m < 0 or self.n < 0:
            raise ValueError(f"colour counts must be non-negative integers, got ({self.m}, {self.n})")

    @property
    def ncodes(self) -> int:
        return 1 + self.m + 2 * self.n

    def transpose_table(self) -> np.ndarray:
        """Map each adjacency code to the code seen from the other endpoint."""
        m, n = self.m, self.n
        tr = np.arange(self.ncodes, dtype=np.int32)
        tr[m + 1 : m + n + 1] += n
        tr[m + n + 1 :] -= n
        return tr

    def __str__(self):
        return f"({self.m},{self.n})"


def _check_name(v) -> str:
    if not isinstance(v, str) or not v or any(ch.isspace() for ch in v) or "#" in v:
        raise MngSyntaxError(f"invalid vertex identifier {v!r}")
    return v


@dataclass(frozen=True)
class MixedGraph:
    """A simple (m, n)-mixed graph.

    ``edges`` holds ``(u, v, c)`` with ``u < v``; ``arcs`` holds ``(u, v, c)``
    meaning ``u -> v``.  The constructor accepts any iterables, canonicalises
    them and raises on loops, parallel elements, unknown endpoints or colours
    out of range.
    """

    params: ColourParams
    vertices: tuple[str, ...]
    edges: frozenset = field(default=frozenset())
    arcs: frozenset = field(default=frozenset())

    def __post_init__(self):
        params = self.params
        if not isinstance(params, ColourParams):
            params = ColourParams(*params)
        verts = tuple(sorted({_check_name(v) for v in self.vertices}))
        vset = set(verts)
        seen: dict[tuple[str, str], tuple] = {}
        edges = set()
        for u, v, c in self.edges:
            if u == v:
                raise LoopFound(f"edge {u} {u} {c}")
            for x in (u, v):
                if x not in vset:
                    raise UnknownVertex(x)
            if not (isinstance(c, (int, np.integer)) and 1 <= c <= params.m):
                raise ColourOutOfRange(f"edge {u} {v} has colour {c}, expected 1..{params.m}")
            a, b = (u, v) if u < v else (v, u)
            item = ("e", a, b, int(c))
            if seen.setdefault((a, b), item) != item:
                raise ParallelElements(f"pair {a} {b} carries {seen[(a, b)][0]} and edge")
            edges.add((a, b, int(c)))
        arcs = set()
        for u, v, c in self.arcs:
            if u == v:
                raise LoopFound(f"arc {u} {u} {c}")
            for x in (u, v):
                if x not in vset:
                    raise UnknownVertex(x)
            if not (isinstance(c, (int, np.integer)) and 1 <= c <= params.n):
                raise ColourOutOfRange(f"arc {u} {v} has colour {c}, expected 1..{params.n}")
            key = (u, v) if u < v else (v, u)
            item = ("a", u, v, int(c))
            if seen.setdefault(key, item) != item:
                raise ParallelElements(f"pair {key[0]} {key[1]} carries more than one edge or arc")
            arcs.add((u, v, int(c)))
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(edges))
        object.__setattr__(self, "arcs", frozenset(arcs))

    # -- lookups -------------------------------------------------------------

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def codes(self) -> np.ndarray:
        m, n = self.params.m, self.params.n
        nv = len(self.vertices)
        out = np.zeros((nv, nv), dtype=np.int32)
        idx = self.index
        for u, v, c in self.edges:
            out[idx[u], idx[v]] = out[idx[v], idx[u]] = c
        for u, v, c in self.arcs:
            out[idx[u], idx[v]] = m + c
            out[idx[v], idx[u]] = m + n + c
        out.flags.writeable = False
        return out

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.count_nonzero(self.codes, axis=1)

    def __len__(self):
        return len(self.vertices)

    @property
    def size(self) -> int:
        return len(self.edges) + len(self.arcs)

    def code(self, u: str, v: str) -> int:
        return int(self.codes[self.index[u], self.index[v]])

    def has_edge(self, u: str, v: str, c: int) -> bool:
        return ((u, v, c) if u < v else (v, u, c)) in self.edges

    def has_arc(self, u: str, v: str, c: int) -> bool:
        return (u, v, c) in self.arcs

    def neighbours(self, v: str) -> list[str]:
        row = self.codes[self.index[v]]
        return [self.vertices[i] for i in np.flatnonzero(row)]

    def incident_edge_colours(self, v: str) -> set[int]:
        return {c for a, b, c in self.edges if v in (a, b)}

    def incident_arc_colours(self, v: str) -> set[int]:
        return {c for a, b, c in self.arcs if v in (a, b)}

    def __str__(self):
        return serialize_graph(self).rstrip("\n")


@dataclass(frozen=True)
class UnderlyingGraph:
    vertices: tuple[str, ...]
    adjacency: frozenset  # of (u, v) with u < v


def validate(m: int, n: int, vertices: Iterable[str], edges: Iterable[Edge] = (),
             arcs: Iterable[Arc] = ()) -> MixedGraph:
    return MixedGraph(ColourParams(m, n), tuple(vertices), frozenset(edges), frozenset(arcs))


def underlying(g: MixedGraph) -> UnderlyingGraph:
    pairs = {(u, v) for u, v, _ in g.edges}
    pairs |= {(u, v) if u < v else (v, u) for u, v, _ in g.arcs}
    return UnderlyingGraph(g.vertices, frozenset(pairs))


def induced_subgraph(g: MixedGraph, s: Iterable[str]) -> MixedGraph:
    keep = set(s)
    for v in keep:
        if v not in g.index:
            raise UnknownVertex(v)
    return MixedGraph(
        g.params,
        tuple(keep),
        frozenset(e for e in g.edges if e[0] in keep and e[1] in keep),
        frozenset(a for a in g.arcs if a[0] in keep and a[1] in keep),
    )


def is_subgraph(g: MixedGraph, h: MixedGraph) -> bool:
    """Labelled containment: every vertex, edge and arc of ``g`` is in ``h``."""
    return (
        g.params == h.params
        and set(g.vertices) <= set(h.vertices)
        and g.edges <= h.edges
        and g.arcs <= h.arcs
    )


def graphs_equal(g: MixedGraph, h: MixedGraph) -> bool:
    return g == h


def relabel(g: MixedGraph, mapping: Mapping[str, str]) -> MixedGraph:
    """Rename vertices through an injective ``mapping`` (total on V(g))."""
    if len(set(mapping[v] for v in g.vertices)) != len(g):
        raise ValueError("relabelling must be injective")
    return MixedGraph(
        g.params,
        tuple(mapping[v] for v in g.vertices),
        frozenset((mapping[u], mapping[v], c) for u, v, c in g.edges),
        frozenset((mapping[u], mapping[v], c) for u, v, c in g.arcs),
    )


def remove_element(g: MixedGraph, u: str, v: str) -> MixedGraph:
    """Drop the edge or arc joining ``u`` and ``v`` (vertices kept)."""
    return MixedGraph(
        g.params,
        g.vertices,
        frozenset(e for e in g.edges if {e[0], e[1]} != {u, v}),
        frozenset(a for a in g.arcs if {a[0], a[1]} != {u, v}),
    )


def require_same_params(*graphs: MixedGraph) -> None:
    ps = {g.params for g in graphs}
    if len(ps) > 1:
        raise ParamMismatch(" vs ".join(str(p) for p in sorted(ps, key=lambda p: (p.m, p.n))))


# -- mng text format ---------------------------------------------------------


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_graph(text: str) -> MixedGraph:
    header = None
    vertices: list[str] = []
    edges: list[Edge] = []
    arcs: list[Arc] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        tok = line.split()
        try:
            if header is None:
                if tok[0] != "mng" or len(tok) != 3:
                    raise MngSyntaxError(f"line {lineno}: expected 'mng <m> <n>'")
                header = ColourParams(int(tok[1]), int(tok[2]))
            elif tok[0] == "v":
                vertices.extend(_check_name(t) for t in tok[1:])
            elif tok[0] in ("e", "a") and len(tok) == 4:
                (edges if tok[0] == "e" else arcs).append((tok[1], tok[2], int(tok[3])))
            else:
                raise MngSyntaxError(f"line {lineno}: cannot parse {line!r}")
        except ValueError as exc:
            raise MngSyntaxError(f"line {lineno}: {exc}") from None
        except MngSyntaxError as exc:
            if str(exc).startswith("line "):
                raise
            raise MngSyntaxError(f"line {lineno}: {exc}") from None
    if header is None:
        raise MngSyntaxError("line 1: missing 'mng <m> <n>' header")
    return MixedGraph(header, tuple(vertices), frozenset(edges), frozenset(arcs))


def serialize_graph(g: MixedGraph) -> str:
    lines = [f"mng {g.params.m} {g.params.n}"]
    if g.vertices:
        lines.append("v " + " ".join(g.vertices))
    lines += [f"e {u} {v} {c}" for u, v, c in sorted(g.edges)]
    lines += [f"a {u} {v} {c}" for u, v, c in sorted(g.arcs)]
    return "\n".join(lines) + "\n"
