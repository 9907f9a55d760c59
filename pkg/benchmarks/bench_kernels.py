"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--seed 1]
"""
from __future__ import annotations

import argparse
import importlib
import json
import random
import time
from itertools import combinations
from typing import Callable

from kminor._kernels import _pure
from kminor.constructions import CockadeSpec, build_cockade, complete_minus


def random_adj(rng: random.Random, n: int, p: float) -> tuple[int, ...]:
    rows = [0] * n
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return tuple(rows)


def workloads(seed: int) -> dict[str, tuple[Callable[[object], None], int]]:
    rng = random.Random(seed)
    dense = [random_adj(rng, 60, 0.7) for _ in range(20)]
    canon = [random_adj(rng, rng.randint(8, 20), rng.random()) for _ in range(400)]
    cockade = build_cockade(CockadeSpec.chain(complete_minus(8, "two_independent"), 4, 3)).adj

    def clique(mod) -> None:
        for adj in dense:
            mod.max_clique(adj, 0)

    def canonical(mod) -> None:
        for adj in canon:
            mod.canonical_graph6(adj)

    def children(mod) -> None:
        for _ in range(50):
            mod.contraction_children(cockade, 9, 31, 5, False)

    return {
        "max_clique (20 graphs, n=60, p=0.7)": (clique, len(dense)),
        "canonical_graph6 (400 graphs, n=8..20)": (canonical, len(canon)),
        "contraction_children (16-vertex cockade, x50)": (children, 50),
    }


def best_of(fn: Callable[[object], None], mod, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(mod)
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--json", action="store_true", help="one JSON object per kernel")
    args = ap.parse_args(argv)
    try:
        core = importlib.import_module("kminor._kernels._core")
    except ImportError:
        print("compiled core not built; only the pure backend is available")
        core = None
    for name, (fn, _) in workloads(args.seed).items():
        pure_t = best_of(fn, _pure, args.repeat)
        core_t = best_of(fn, core, args.repeat) if core is not None else None
        row = {"kernel": name, "python_s": round(pure_t, 4),
               "cython_s": None if core_t is None else round(core_t, 4),
               "speedup": None if not core_t else round(pure_t / core_t, 1)}
        if args.json:
            print(json.dumps(row))
        else:
            tail = "" if core_t is None else f"  cython {core_t:8.4f}s  x{pure_t / core_t:6.1f}"
            print(f"{name:48s} python {pure_t:8.4f}s{tail}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
