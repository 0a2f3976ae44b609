"""Compare the compiled and pure-Python kernels on fixed workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints one line per (kernel, implementation) with the best wall time over
the repeats and the speedup of the compiled kernel.
"""

import argparse
import random
import sys
import time

from cyclex import kernels
from cyclex.decomposition import petersen_graph
from cyclex.graph import Graph


def _workloads():
    rng = random.Random(7)
    cube = Graph.from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4),
                                (0, 4), (1, 5), (2, 6), (3, 7)])
    k8 = Graph.from_edges(8, [(a, b) for a in range(8) for b in range(a + 1, 8)])
    rand = []
    for _ in range(40):
        n = 12
        pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.3]
        rand.append(Graph.from_edges(n, pairs))
    graphs = [cube, k8, petersen_graph()] + rand
    masks = [(g.adjacency_masks(), g.full_mask()) for g in graphs]
    return {
        "has_perfect_matching": lambda m: [m.has_perfect_matching(a, f) for a, f in masks],
        "perfect_matchings": lambda m: [m.perfect_matchings(a, f) for a, f in masks],
        "matching_covered": lambda m: [m.matching_covered(a, f) for a, f in masks],
        "simple_cycles": lambda m: [m.simple_cycles(a, 10**6) for a, _ in masks[:3]],
        "canonical_form": lambda m: [m.canonical_form(a) for a, _ in masks],
    }


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    impls = kernels.implementations()
    if "cython" not in impls:
        print("compiled kernels are not built; only the Python kernels are available", file=sys.stderr)
    work = _workloads()
    print(f"{'kernel':24s} {'impl':8s} {'best (s)':>10s} {'speedup':>8s}")
    for name, fn in work.items():
        times = {}
        results = {}
        for impl, mod in impls.items():
            best = float("inf")
            for _ in range(args.repeat):
                t = time.perf_counter()
                results[impl] = fn(mod)
                best = min(best, time.perf_counter() - t)
            times[impl] = best
        if len(results) == 2 and results["python"] != results["cython"]:
            print(f"{name}: implementations disagree", file=sys.stderr)
            return 1
        for impl, best in times.items():
            speed = times["python"] / best if impl != "python" else 1.0
            print(f"{name:24s} {impl:8s} {best:10.4f} {speed:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
