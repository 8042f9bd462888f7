"""Time the search kernels under numba and under the plain numpy fallback.

Each backend runs in its own interpreter because the backend is chosen when
``mixswitch`` is imported.  The numba run is warmed up first so compilation
time is reported separately.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r'''
import json, random, sys, time
from mixswitch import _jit
from mixswitch.decision import oracle_switchable_hom, switchable_2_colourable_fast, switchable_hom
from mixswitch.generate import random_graph, vertex_names
from mixswitch.graph import ColourParams, MixedGraph
from mixswitch.group import swap_group, swap_push_group
from mixswitch.product import p_gamma

repeat = int(sys.argv[1])
rng = random.Random(5)
grp = swap_push_group()
p = ColourParams(2, 1)
pairs = [(random_graph(p, 6, 0.5, rng), random_graph(p, 3, 0.9, rng)) for _ in range(30)]
oracle_pairs = [(random_graph(p, 5, 0.5, rng), random_graph(p, 3, 0.9, rng)) for _ in range(10)]

sw = swap_group()
h = MixedGraph(ColourParams(2, 0), ("c0", "c1"), frozenset({("c0", "c1", 1)}))
pg, _ = p_gamma(h, sw)
names = vertex_names(20000)
img = {v: rng.choice(pg.vertices) for v in names}
edges = {}
while len(edges) < 40000:
    u, v = sorted(rng.sample(names, 2))
    c = pg.code(img[u], img[v])
    if c:
        edges[(u, v)] = c
big = MixedGraph(ColourParams(2, 0), tuple(names), frozenset((u, v, c) for (u, v), c in edges.items()))

def timed(fn):
    t = time.perf_counter(); fn(); first = time.perf_counter() - t
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter(); fn(); best = min(best, time.perf_counter() - t)
    return first, best

res = {"backend": _jit.BACKEND}
res["switchable_hom x30"] = timed(lambda: [switchable_hom(g, hh, grp) for g, hh in pairs])
res["oracle_switchable_hom x10"] = timed(lambda: [oracle_switchable_hom(g, hh, grp) for g, hh in oracle_pairs])
res["2-colouring 20k vertices"] = timed(lambda: switchable_2_colourable_fast(big, sw))
print(json.dumps(res))
'''


def run(no_jit: bool, repeat: int) -> dict:
    env = dict(os.environ, MIXSWITCH_NO_JIT="1" if no_jit else "0")
    out = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    jit, plain = run(False, args.repeat), run(True, args.repeat)
    print(f"{'workload':28s} {'numba first':>12s} {'numba best':>11s} {'numpy best':>11s} {'speed-up':>9s}")
    for name in jit:
        if name == "backend":
            continue
        first, best = jit[name]
        slow = plain[name][1]
        print(f"{name:28s} {first:12.3f} {best:11.3f} {slow:11.3f} {slow / best:8.1f}x")
    print(f"(total {time.perf_counter() - t0:.1f} s; 'first' includes compilation or cache load)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
