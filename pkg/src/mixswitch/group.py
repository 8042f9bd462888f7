"""Switch elements of S_m x (S_2 wr S_n) and finite switching groups.

An element ``(phi, psi, pi)`` acts at a vertex: edge colours are permuted by
``phi``, arc colours by ``psi``, and an arc whose colour is ``j`` *before* the
switch is reversed iff ``pi[j] == 1``.  Colours are 1-indexed in ``phi``/``psi``
images; ``pi`` is a plain bit tuple with ``pi[j - 1]`` the bit for colour ``j``.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidElement, MngSyntaxError, OrderCapExceeded, ParamMismatch
from .graph import ColourParams

DEFAULT_CAP = 4096


@dataclass(frozen=True)
class SwitchElement:
    phi: tuple[int, ...]
    psi: tuple[int, ...]
    pi: tuple[int, ...]

    def __post_init__(self):
        phi, psi, pi = tuple(map(int, self.phi)), tuple(map(int, self.psi)), tuple(map(int, self.pi))
        if sorted(phi) != list(range(1, len(phi) + 1)):
            raise InvalidElement(f"phi {phi} is not a permutation of 1..{len(phi)}")
        if sorted(psi) != list(range(1, len(psi) + 1)):
            raise InvalidElement(f"psi {psi} is not a permutation of 1..{len(psi)}")
        if len(pi) != len(psi) or any(b not in (0, 1) for b in pi):
            raise InvalidElement(f"pi {pi} must be {len(psi)} bits")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "pi", pi)

    @property
    def params(self) -> ColourParams:
        return ColourParams(len(self.phi), len(self.psi))

    @cached_property
    def key(self) -> str:
        """Canonical serialization; also the tie-break order between elements."""
        return "phi:{};psi:{};pi:{}".format(
            ",".join(map(str, self.phi)), ",".join(map(str, self.psi)), ",".join(map(str, self.pi))
        )

    def is_identity(self) -> bool:
        return self == identity(self.params)

    def __str__(self):
        return self.key


def identity(params: ColourParams) -> SwitchElement:
    return SwitchElement(tuple(range(1, params.m + 1)), tuple(range(1, params.n + 1)), (0,) * params.n)


def compose(g1: SwitchElement, g2: SwitchElement) -> SwitchElement:
    """The element acting like ``g2`` followed by ``g1`` at one vertex."""
    if g1.params != g2.params:
        raise ParamMismatch(f"{g1.params} vs {g2.params}")
    phi = tuple(g1.phi[t - 1] for t in g2.phi)
    psi = tuple(g1.psi[t - 1] for t in g2.psi)
    pi = tuple(g2.pi[j] ^ g1.pi[g2.psi[j] - 1] for j in range(len(g2.pi)))
    return SwitchElement(phi, psi, pi)


def invert(g: SwitchElement) -> SwitchElement:
    phi = [0] * len(g.phi)
    for t, img in enumerate(g.phi, 1):
        phi[img - 1] = t
    psi = [0] * len(g.psi)
    pi = [0] * len(g.pi)
    for j, img in enumerate(g.psi, 1):
        psi[img - 1] = j
        pi[img - 1] = g.pi[j - 1]
    return SwitchElement(tuple(phi), tuple(psi), tuple(pi))


def code_action(g: SwitchElement) -> np.ndarray:
    """How switching at ``u`` by ``g`` rewrites the adjacency code read from ``u``."""
    m, n = len(g.phi), len(g.psi)
    out = np.zeros(1 + m + 2 * n, dtype=np.int32)
    for i in range(1, m + 1):
        out[i] = g.phi[i - 1]
    for j in range(1, n + 1):
        k = g.psi[j - 1]
        flip = g.pi[j - 1]
        out[m + j] = m + k + (n if flip else 0)  # u -> w
        out[m + n + j] = m + k + (0 if flip else n)  # w -> u
    return out


def _orbits(size: int, perms: Iterable[Sequence[int]]) -> tuple[frozenset[int], ...]:
    parent = list(range(size + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for t, img in enumerate(p, 1):
            a, b = find(t), find(img)
            if a != b:
                parent[max(a, b)] = min(a, b)
    classes: dict[int, set[int]] = {}
    for t in range(1, size + 1):
        classes.setdefault(find(t), set()).add(t)
    return tuple(frozenset(c) for _, c in sorted(classes.items()))


@dataclass(frozen=True, eq=False)
class SwitchingGroup:
    """An explicit finite group of switches; build it with :func:`closure`."""

    params: ColourParams
    elements: tuple[SwitchElement, ...]
    generators: tuple[SwitchElement, ...]
    abelian: bool
    edge_orbits: tuple[frozenset[int], ...]
    arc_orbits: tuple[frozenset[int], ...]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.position

    @cached_property
    def position(self) -> dict[SwitchElement, int]:
        return {g: k for k, g in enumerate(self.elements)}

    def index_of(self, g: SwitchElement) -> int:
        return self.position[g]

    @cached_property
    def identity_index(self) -> int:
        return self.position[identity(self.params)]

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def __eq__(self, other):
        return isinstance(other, SwitchingGroup) and self.params == other.params \
            and self.elements == other.elements

    def __hash__(self):
        return hash((self.params, self.elements))

    @cached_property
    def digest(self) -> str:
        """Reference to the canonical element listing, used in witness files."""
        body = f"grp {self.params.m} {self.params.n}\n" + "\n".join(g.key for g in self.elements)
        return "sha256:" + hashlib.sha256(body.encode()).hexdigest()[:16]

    @cached_property
    def actions(self) -> np.ndarray:
        """Row k: :func:`code_action` of element k."""
        out = np.zeros((len(self), self.params.ncodes), dtype=np.int32)
        for k, g in enumerate(self.elements):
            out[k] = code_action(g)
        out.flags.writeable = False
        return out

    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """0-indexed ``(phi, psi, pi)`` stacked over elements."""
        k = len(self)
        phi = np.array([[c - 1 for c in g.phi] for g in self.elements], dtype=np.int64).reshape(k, self.params.m)
        psi = np.array([[c - 1 for c in g.psi] for g in self.elements], dtype=np.int64).reshape(k, self.params.n)
        pi = np.array([g.pi for g in self.elements], dtype=np.int64).reshape(k, self.params.n)
        return phi, psi, pi


def closure(params: ColourParams, generators: Sequence[SwitchElement] = (),
            cap: int = DEFAULT_CAP) -> SwitchingGroup:
    """Smallest group containing ``generators``, elements in breadth-first order."""
    gens = tuple(generators)
    for g in gens:
        if g.params != params:
            raise ParamMismatch(f"generator {g.key} does not match {params}")
    e = identity(params)
    elements = [e]
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        fresh = []
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                fresh.append(y)
        for y in fresh:
            elements.append(y)
            queue.append(y)
            if len(elements) > cap:
                raise OrderCapExceeded(f"group order exceeds cap {cap}")
    abelian = all(compose(a, b) == compose(b, a) for a in gens for b in gens)
    return SwitchingGroup(
        params=params,
        elements=tuple(elements),
        generators=gens,
        abelian=abelian,
        edge_orbits=_orbits(params.m, (g.phi for g in gens)),
        arc_orbits=_orbits(params.n, (g.psi for g in gens)),
    )


def is_abelian(group: SwitchingGroup) -> bool:
    return group.abelian


def transitive_on_edge_colours(group: SwitchingGroup) -> bool:
    return len(group.edge_orbits) <= 1


def transitive_on_arc_colours(group: SwitchingGroup) -> bool:
    return len(group.arc_orbits) <= 1


def orbit_of_edge_colour(group: SwitchingGroup, c: int) -> frozenset[int]:
    return next(o for o in group.edge_orbits if c in o)


def orbit_of_arc_colour(group: SwitchingGroup, c: int) -> frozenset[int]:
    return next(o for o in group.arc_orbits if c in o)


# -- named groups ------------------------------------------------------------


def trivial_group(params: ColourParams) -> SwitchingGroup:
    return closure(params, [])


def swap_group() -> SwitchingGroup:
    """Exchange of the two edge colours of (2, 0)-mixed graphs."""
    return closure(ColourParams(2, 0), [SwitchElement((2, 1), (), ())])


def push_group() -> SwitchingGroup:
    """Pushing for oriented graphs: reverse every arc at the vertex."""
    return closure(ColourParams(0, 1), [SwitchElement((), (1,), (1,))])


def swap_push_group() -> SwitchingGroup:
    """Order-4 product of colour exchange and pushing on (2, 1)-mixed graphs."""
    p = ColourParams(2, 1)
    return closure(p, [SwitchElement((2, 1), (1,), (0,)), SwitchElement((1, 2), (1,), (1,))])


# -- grp text format ---------------------------------------------------------


def _element_from_tokens(params: ColourParams, tok: list[str], lineno: int) -> SwitchElement:
    sections: dict[str, list[int]] = {"phi": [], "psi": [], "pi": []}
    current = None
    for t in tok:
        if t in sections:
            current = t
        elif current is None:
            raise MngSyntaxError(f"line {lineno}: expected 'phi', 'psi' or 'pi' before {t!r}")
        else:
            try:
                sections[current].append(int(t))
            except ValueError:
                raise MngSyntaxError(f"line {lineno}: {t!r} is not an integer") from None
    phi = sections["phi"] or list(range(1, params.m + 1))
    psi = sections["psi"] or list(range(1, params.n + 1))
    pi = sections["pi"] or [0] * params.n
    if len(phi) != params.m or len(psi) != params.n or len(pi) != params.n:
        raise MngSyntaxError(f"line {lineno}: generator sizes do not match grp {params.m} {params.n}")
    try:
        return SwitchElement(tuple(phi), tuple(psi), tuple(pi))
    except InvalidElement as exc:
        raise MngSyntaxError(f"line {lineno}: {exc}") from None


def parse_group(text: str, cap: int = DEFAULT_CAP) -> SwitchingGroup:
    params = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if params is None:
            if tok[0] != "grp" or len(tok) != 3:
                raise MngSyntaxError(f"line {lineno}: expected 'grp <m> <n>'")
            try:
                params = ColourParams(int(tok[1]), int(tok[2]))
            except ValueError as exc:
                raise MngSyntaxError(f"line {lineno}: {exc}") from None
        elif tok[0] == "gen":
            gens.append(_element_from_tokens(params, tok[1:], lineno))
        else:
            raise MngSyntaxError(f"line {lineno}: cannot parse {line!r}")
    if params is None:
        raise MngSyntaxError("line 1: missing 'grp <m> <n>' header")
    return closure(params, gens, cap=cap)


def serialize_element(g: SwitchElement) -> str:
    parts = []
    if g.phi:
        parts.append("phi " + " ".join(map(str, g.phi)))
    if g.psi:
        parts.append("psi " + " ".join(map(str, g.psi)))
        parts.append("pi " + " ".join(map(str, g.pi)))
    return " ".join(parts)


def serialize_group(group: SwitchingGroup) -> str:
    lines = [f"grp {group.params.m} {group.params.n}"]
    lines += ["gen " + serialize_element(g) for g in group.generators]
    return "\n".join(lines) + "\n"
