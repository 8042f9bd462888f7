"""Witness files and their independent re-verification.

A witness is line based::

    witness <kind>
    group <digest> order <k>        # kinds that switch
    colours <k>                     # colouring kinds
    switch <vertex> <element-index>   # unlisted vertices keep the identity
    map <u> <x>
    graph                           # target / core / quotient block
    mng ...
    end

``verify_witness`` rechecks a witness against its instance using only graph
equality, switch application and homomorphism checking, plus a recomputed
core test where the claim is about cores.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .errors import MngSyntaxError, WitnessRejected
from .graph import MixedGraph, induced_subgraph, parse_graph, serialize_graph
from .group import SwitchingGroup
from .hom import find_non_surjective_endo, make_map
from .switching import apply_assignment

KINDS = ("hom", "iso", "swhom", "switcheq", "swiso", "core", "swcore", "colour", "swcolour", "sgraph")
SWITCHING_KINDS = ("swhom", "switcheq", "swiso", "swcore", "swcolour", "sgraph")


@dataclass
class Witness:
    kind: str
    group: str | None = None
    order: int | None = None
    colours: int | None = None
    switches: dict[str, int] = field(default_factory=dict)
    maps: dict[str, str] = field(default_factory=dict)
    graph: MixedGraph | None = None


def serialize_witness(w: Witness) -> str:
    lines = [f"witness {w.kind}"]
    if w.group is not None:
        lines.append(f"group {w.group} order {w.order}")
    if w.colours is not None:
        lines.append(f"colours {w.colours}")
    lines += [f"switch {v} {k}" for v, k in sorted(w.switches.items())]
    lines += [f"map {u} {x}" for u, x in sorted(w.maps.items())]
    if w.graph is not None:
        lines.append("graph")
        lines += serialize_graph(w.graph).splitlines()
        lines.append("end")
    return "\n".join(lines) + "\n"


def parse_witness(text: str) -> Witness:
    w = None
    block: list[str] | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if block is not None:
            if tok == ["end"]:
                w.graph = parse_graph("\n".join(block))
                block = None
            else:
                block.append(line)
            continue
        if tok[0] == "verdict":
            continue
        if w is None:
            if tok[0] != "witness" or len(tok) != 2 or tok[1] not in KINDS:
                raise MngSyntaxError(f"line {lineno}: expected 'witness <kind>'")
            w = Witness(tok[1])
        elif tok[0] == "group" and len(tok) == 4 and tok[2] == "order":
            w.group, w.order = tok[1], int(tok[3])
        elif tok[0] == "colours" and len(tok) == 2:
            w.colours = int(tok[1])
        elif tok[0] == "switch" and len(tok) == 3:
            w.switches[tok[1]] = int(tok[2])
        elif tok[0] == "map" and len(tok) == 3:
            w.maps[tok[1]] = tok[2]
        elif tok == ["graph"]:
            block = []
        else:
            raise MngSyntaxError(f"line {lineno}: cannot parse {line!r}")
    if w is None:
        raise MngSyntaxError("line 1: missing 'witness <kind>' header")
    if block is not None:
        raise MngSyntaxError("unterminated graph block")
    return w


def _reject(msg: str):
    raise WitnessRejected(msg)


def _assignment(w: Witness, g: MixedGraph, group: SwitchingGroup) -> dict:
    if group is None:
        _reject("a group is required to check switches")
    if w.group != group.digest or w.order != len(group):
        _reject(f"witness refers to group {w.group}, instance group is {group.digest}")
    if not set(w.switches) <= set(g.vertices):
        _reject("switch line names a vertex outside the instance")
    if any(not 0 <= k < len(group) for k in w.switches.values()):
        _reject("element index out of range")
    ident = group.identity_index
    return {v: group.elements[w.switches.get(v, ident)] for v in g.vertices}


def _hom(src: MixedGraph, dst: MixedGraph, maps: dict, what: str):
    f = make_map(src, dst, maps)
    if not f.verified:
        _reject(f"{what}: map is not a homomorphism")
    return f


def _bijective_iso(src, dst, maps):
    f = _hom(src, dst, maps, "isomorphism")
    if not (f.is_bijective() and f.inverse().verified):
        _reject("map is not an isomorphism")


def verify_witness(w: Witness, g: MixedGraph, h: MixedGraph | None = None,
                   group: SwitchingGroup | None = None, k: int | None = None) -> bool:
    """Raise :class:`WitnessRejected` unless ``w`` proves its claim about the instance."""
    kind = w.kind
    if kind in ("hom", "iso", "swhom", "switcheq", "swiso") and h is None:
        _reject(f"{kind} needs a second graph")
    switched = g
    if kind in SWITCHING_KINDS and kind != "sgraph":
        switched = apply_assignment(g, _assignment(w, g, group))

    if kind in ("hom", "swhom"):
        _hom(switched, h, w.maps, kind)
    elif kind in ("iso", "swiso"):
        _bijective_iso(switched, h, w.maps)
    elif kind == "switcheq":
        if switched != h:
            _reject("switched graph differs from target")
    elif kind in ("core", "swcore"):
        core = w.graph
        if core is None or core != induced_subgraph(g, core.vertices):
            _reject("core must be an induced subgraph of the instance")
        f = _hom(switched, core, w.maps, "core")
        if not f.is_surjective():
            _reject("map onto the core must be surjective")
        if kind == "core":
            if find_non_surjective_endo(core) is not None:
                _reject("claimed core has a non-surjective endomorphism")
        else:
            from .decision import is_switchable_core

            if not is_switchable_core(core, group):
                _reject("claimed switchable core is not one")
    elif kind in ("colour", "swcolour"):
        t = w.graph
        if t is None:
            _reject("colouring witness needs a target graph block")
        want = k if k is not None else w.colours
        if want is not None and len(t) != want:
            _reject(f"target has {len(t)} vertices, expected {want}")
        if t.params.m + t.params.n and t.size != comb(len(t), 2):
            _reject("target must have one edge or arc per vertex pair")
        _hom(switched, t, w.maps, "colouring")
    elif kind == "sgraph":
        from .product import p_gamma

        if group is None:
            _reject("a group is required")
        pg, _ = p_gamma(g, group)
        sg = w.graph
        if sg is None or sg != induced_subgraph(pg, sg.vertices):
            _reject("quotient must be an induced subgraph of the switching graph")
        _hom(pg, sg, w.maps, "retraction")
        if any(w.maps[x] != x for x in sg.vertices):
            _reject("retraction must fix the quotient pointwise")
    return True


def switch_witness(kind: str, group: SwitchingGroup, assignment: dict, maps: dict | None = None,
                   graph: MixedGraph | None = None, colours: int | None = None) -> Witness:
    """Witness carrying ``switch`` lines for the non-identity entries of ``assignment``."""
    return Witness(
        kind,
        group=group.digest,
        order=len(group),
        colours=colours,
        switches={v: k for v, e in assignment.items() if (k := group.index_of(e)) != group.identity_index},
        maps=dict(maps or {}),
        graph=graph,
    )
