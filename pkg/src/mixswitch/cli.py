"""Command line interface.

Exit codes: 0 YES/success, 1 NO, 2 error.  Verdicts and witnesses go to
stdout; errors are reported on stderr as ``error: <Kind>: <detail>``.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import decision as dec
from .errors import Disagreement, MixSwitchError, WitnessRejected
from .generate import random_abelian_group, random_graph
from .graph import ColourParams, MixedGraph, parse_graph, serialize_graph
from .group import DEFAULT_CAP, SwitchingGroup, parse_group, serialize_group
from .hom import (
    brute_force_hom,
    brute_force_non_surjective_endo,
    core_of,
    find_hom,
    find_iso,
    find_non_surjective_endo,
)
from .product import p_gamma, s_gamma
from .switching import SwitchingPair, apply_sequence, enumerate_switch_equal, switch_equal
from .witness import Witness, parse_witness, serialize_witness, switch_witness, verify_witness

YES, NO = 0, 1


class _Out:
    def __init__(self, path):
        self.path = path
        self.chunks: list[str] = []

    def emit(self, text: str):
        self.chunks.append(text if text.endswith("\n") else text + "\n")

    def flush(self):
        text = "".join(self.chunks)
        sys.stdout.write(text)
        if self.path:
            Path(self.path).write_text(text)


def _graph(path: str) -> MixedGraph:
    return parse_graph(Path(path).read_text())


def _group(path: str, cap: int) -> SwitchingGroup:
    return parse_group(Path(path).read_text(), cap=cap)


def _verdict(out: _Out, ok: bool, witness: Witness | None = None) -> int:
    out.emit("verdict YES" if ok else "verdict NO")
    if ok and witness is not None:
        out.emit(serialize_witness(witness))
    return YES if ok else NO


def _agree(name: str, a: bool, b: bool):
    if a != b:
        raise Disagreement(f"{name}: fast route {a}, oracle {b}")


# -- subcommands ----------------------------------------------------------------


def cmd_validate(args, out):
    text = Path(args.file).read_text()
    first = next((ln.split("#", 1)[0].split() for ln in text.splitlines() if ln.split("#", 1)[0].strip()), [""])
    if first[0] == "grp":
        g = parse_group(text, cap=args.cap)
        out.emit(serialize_group(g))
        out.emit(f"# order {len(g)} abelian {str(g.abelian).lower()}")
    else:
        out.emit(serialize_graph(parse_graph(text)))
    return YES


def cmd_switch(args, out):
    g = _graph(args.graph)
    group = _group(args.group, args.cap)
    pairs = []
    for item in args.pair or []:
        v, _, k = item.rpartition(":")
        pairs.append(SwitchingPair(v, group.elements[int(k)]))
    out.emit(serialize_graph(apply_sequence(g, pairs)))
    return YES


def cmd_pgraph(args, out):
    pg, _ = p_gamma(_graph(args.graph), _group(args.group, args.cap))
    out.emit(serialize_graph(pg))
    return YES


def cmd_sgraph(args, out):
    g = _graph(args.graph)
    group = _group(args.group, args.cap)
    sg, _, r = s_gamma(g, group)
    w = Witness("sgraph", group=group.digest, order=len(group), maps=dict(r.mapping), graph=sg)
    out.emit(serialize_witness(w))
    return YES


def cmd_hom(args, out):
    g, h = _graph(args.g), _graph(args.h)
    if args.oracle:
        f = brute_force_hom(g, h)
    else:
        f = find_hom(g, h)
        if args.both:
            _agree("hom", f is not None, brute_force_hom(g, h) is not None)
    return _verdict(out, f is not None, f and Witness("hom", maps=dict(f.mapping)))


def cmd_iso(args, out):
    g, h = _graph(args.g), _graph(args.h)
    f = find_iso(g, h)
    return _verdict(out, f is not None, f and Witness("iso", maps=dict(f.mapping)))


def cmd_swhom(args, out):
    g, h = _graph(args.g), _graph(args.h)
    group = _group(args.group, args.cap)
    if args.oracle:
        w = dec.oracle_switchable_hom(g, h, group)
    else:
        w = dec.switchable_hom(g, h, group)
        if args.both:
            _agree("swhom", w is not None, dec.oracle_switchable_hom(g, h, group) is not None)
    wit = w and switch_witness("swhom", group, w.assignment, w.mapping.mapping)
    return _verdict(out, w is not None, wit)


def cmd_switcheq(args, out):
    g, h = _graph(args.g), _graph(args.h)
    group = _group(args.group, args.cap)
    if args.oracle:
        sigma = enumerate_switch_equal(g, h, group)
    else:
        sigma = switch_equal(g, h, group)
        if args.both:
            _agree("switcheq", sigma is not None, enumerate_switch_equal(g, h, group) is not None)
    return _verdict(out, sigma is not None, sigma and switch_witness("switcheq", group, sigma))


def cmd_swiso(args, out):
    g, h = _graph(args.g), _graph(args.h)
    group = _group(args.group, args.cap)
    if args.oracle:
        w = dec.oracle_switchable_iso(g, h, group)
        ok = w is not None
    else:
        ok, w = dec.switchable_iso(g, h, group)
        if args.both:
            _agree("swiso", ok, dec.oracle_switchable_iso(g, h, group) is not None)
    wit = w and switch_witness("swiso", group, w.assignment, w.mapping.mapping)
    return _verdict(out, ok, wit)


def cmd_core(args, out):
    g = _graph(args.graph)
    core, r = core_of(g, retraction=True)
    w = Witness("core", maps=dict(r.mapping), graph=core)
    if not args.check:
        return _verdict(out, True, w)
    if args.oracle:
        is_core = brute_force_non_surjective_endo(g) is None
    else:
        is_core = find_non_surjective_endo(g) is None
        if args.both:
            _agree("core", is_core, brute_force_non_surjective_endo(g) is None)
    code = _verdict(out, is_core, w)
    if not is_core:
        out.emit(serialize_witness(w))
    return code


def cmd_swcore(args, out):
    g = _graph(args.graph)
    group = _group(args.group, args.cap)
    if args.check:
        if args.oracle:
            is_core = dec.oracle_is_switchable_core(g, group)
        else:
            is_core = dec.is_switchable_core(g, group)
            if args.both:
                _agree("swcore", is_core, dec.oracle_is_switchable_core(g, group))
    core, w = dec.switchable_core_of(g, group)
    wit = switch_witness("swcore", group, w.assignment, w.mapping.mapping, graph=core)
    if not args.check:
        return _verdict(out, True, wit)
    code = _verdict(out, is_core, wit)
    if not is_core:
        out.emit(serialize_witness(wit))
    return code


def cmd_colour(args, out):
    g = _graph(args.graph)
    w = dec.k_colourable(g, args.k, jobs=args.jobs)
    if args.both:
        brute = any(brute_force_hom(g, t) is not None for t in dec.colouring_targets(g.params, args.k))
        _agree("colour", w is not None, brute)
    wit = w and Witness("colour", colours=args.k, maps=dict(w.switch_witness.mapping.mapping), graph=w.target)
    return _verdict(out, w is not None, wit)


def cmd_swcolour(args, out):
    g = _graph(args.graph)
    group = _group(args.group, args.cap)
    method = "enum" if args.oracle else "both" if args.both else "auto"
    w = dec.switchable_k_colourable(g, group, args.k, method=method, jobs=args.jobs)
    wit = w and switch_witness("swcolour", group, w.switch_witness.assignment,
                               w.switch_witness.mapping.mapping, graph=w.target, colours=args.k)
    return _verdict(out, w is not None, wit)


def cmd_verify(args, out):
    w = parse_witness(Path(args.witness).read_text())
    graphs = [_graph(p) for p in args.instance]
    group = _group(args.group, args.cap) if args.group else None
    g = graphs[0]
    h = graphs[1] if len(graphs) > 1 else None
    try:
        verify_witness(w, g, h, group, args.k)
    except WitnessRejected as exc:
        out.emit(f"verdict NO\n# {exc}")
        return NO
    out.emit(f"verdict YES\n# {w.kind} witness accepted")
    return YES


def cmd_gen(args, out):
    rng = random.Random(args.seed)
    params = ColourParams(args.m, args.n)
    if args.what == "group":
        group = random_abelian_group(params, rng, max_order=args.group_order)
        out.emit(serialize_group(group))
    else:
        out.emit(serialize_graph(random_graph(params, args.vertices, args.density, rng)))
    return YES


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", dest="output", help="also write stdout to this file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for target enumeration")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum group order")
    common.add_argument("--oracle", action="store_true", help="use the brute-force back-end")
    common.add_argument("--both", action="store_true", help="run fast route and oracle, fail on disagreement")

    p = argparse.ArgumentParser(prog="mixswitch", description="Switching of (m,n)-mixed graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *positional, help=None):
        sp = sub.add_parser(name, parents=[common], help=help)
        for arg in positional:
            sp.add_argument(arg)
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "file", help="check an mng or grp file and print its canonical form")
    sp = add("switch", cmd_switch, "graph", "group", help="apply switches in order")
    sp.add_argument("--pair", action="append", metavar="VERTEX:INDEX")
    add("pgraph", cmd_pgraph, "graph", "group", help="switching graph P_Gamma")
    add("sgraph", cmd_sgraph, "graph", "group", help="quotient S_Gamma with its retraction")
    add("hom", cmd_hom, "g", "h", help="homomorphism g -> h")
    add("iso", cmd_iso, "g", "h", help="isomorphism g ~= h")
    add("swhom", cmd_swhom, "g", "h", "group", help="switchable homomorphism")
    add("switcheq", cmd_switcheq, "g", "h", "group", help="labelled switch equivalence")
    add("swiso", cmd_swiso, "g", "h", "group", help="switchable isomorphism")
    sp = add("core", cmd_core, "graph", help="core of a graph")
    sp.add_argument("--check", action="store_true", help="verdict is whether the input is a core")
    sp = add("swcore", cmd_swcore, "graph", "group", help="switchable core")
    sp.add_argument("--check", action="store_true", help="verdict is whether the input is a switchable core")
    for name, fn, pos in (("colour", cmd_colour, ("graph",)), ("swcolour", cmd_swcolour, ("graph", "group"))):
        sp = add(name, fn, *pos, help="k-colouring" if name == "colour" else "switchable k-colouring")
        sp.add_argument("-k", type=int, required=True)
    sp = add("verify", cmd_verify, "witness", help="re-check a witness file against its instance")
    sp.add_argument("instance", nargs="+", help="instance graph(s)")
    sp.add_argument("--group", help="grp file for switching witnesses")
    sp.add_argument("-k", type=int)
    sp = add("gen", cmd_gen, help="emit a seeded random graph or Abelian group")
    sp.add_argument("what", nargs="?", choices=("graph", "group"), default="graph")
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--vertices", type=int, default=5)
    sp.add_argument("--density", type=float, default=0.5)
    sp.add_argument("--group-order", type=int, default=4)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(args.output)
    try:
        code = args.func(args, out)
    except (MixSwitchError, OSError) as exc:
        kind = exc.kind if isinstance(exc, MixSwitchError) else type(exc).__name__
        out.emit("verdict ERROR")
        out.flush()
        print(f"error: {kind}: {exc}", file=sys.stderr)
        return 2
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
