#!/usr/bin/env python3
"""Benchmark: compiled clique kernel vs the pure-Python fallback.

Workloads mirror the hot paths of the verification pipeline:
  * enumerate every K_4 of the q=3 pattern graph (exhaustive classification),
  * prove a 200-vertex 4-partite Turan graph K_5-free (full negative search),
  * 500 induced-triangle searches in 100-vertex subsets of the q=5 sparse graph.

Run:  python benchmarks/bench_cliques.py
"""

import time

from unitalpack import cliquesearch, rng
from unitalpack.bounds import turan_graph
from unitalpack.cliquesearch import pure
from unitalpack.coloring import find_good_coloring, sample_coloring
from unitalpack.pattern import build_pattern
from unitalpack.pencil import build_pencil
from unitalpack.sparsify import SparsifyParams, sparsify

try:
    from unitalpack.cliquesearch import _kernel
except ImportError:
    _kernel = None


def compiled_impls():
    from unitalpack.cliquesearch import PreparedGraph, _pack_mask

    cache = {}

    def prep(adj):
        key = id(adj)
        if key not in cache:
            cache[key] = PreparedGraph(adj, pack=True)
        return cache[key]

    def find(adj, size, mask=None):
        g = prep(adj)
        return _kernel.find_clique(g.words, size, _pack_mask(g, mask))

    def enum(adj, size, mask=None):
        g = prep(adj)
        return _kernel.enumerate_cliques(g.words, size, _pack_mask(g, mask))

    return enum, find


def timed(fn, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def workloads():
    pencil3 = build_pencil(3, 1)
    g3 = build_pattern(pencil3, find_good_coloring(pencil3, 1, 7))[0]

    pencil5 = build_pencil(5)
    g5 = build_pattern(pencil5, sample_coloring(pencil5, 2, 1), relaxed=True)[0]
    sp5 = sparsify(g5, SparsifyParams(k=3, alpha=0.5, seed=0))
    subsets = [
        rng.sample_subset(rng.raw_stream(42, rng.SUBSET, i), sp5.n, 100)
        for i in range(500)
    ]
    masks = [cliquesearch.mask_of(s) for s in subsets]

    t200 = turan_graph(200, 4)

    return [
        ("enumerate K_4, q=3 pattern (63 v)",
         lambda impl_enum, impl_find: len(impl_enum(g3.adj, 4))),
        ("K_5-freeness, Turan T(200,4)",
         lambda impl_enum, impl_find: impl_find(t200, 5)),
        ("500 triangle searches, q=5 sparse subsets",
         lambda impl_enum, impl_find: sum(
             impl_find(sp5.adj, 3, m) is not None for m in masks)),
    ]


def main():
    impls = [("pure", pure.enumerate_cliques, pure.find_clique)]
    if _kernel is not None:
        impls.append(("compiled", *compiled_impls()))
    else:
        print("compiled kernel not built; benchmarking pure only")

    rows = []
    for name, job in workloads():
        timings = {}
        results = {}
        for impl_name, impl_enum, impl_find in impls:
            best, result = timed(lambda: job(impl_enum, impl_find))
            timings[impl_name] = best
            results[impl_name] = result
        if len(results) == 2:
            assert results["pure"] == results["compiled"], f"impl disagreement on {name}"
        rows.append((name, timings, results[impls[0][0]]))

    width = max(len(r[0]) for r in rows)
    header = f"{'workload':<{width}}  {'pure':>10}"
    if _kernel is not None:
        header += f"  {'compiled':>10}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, timings, result in rows:
        line = f"{name:<{width}}  {timings['pure']*1e3:>8.1f}ms"
        if "compiled" in timings:
            ratio = timings["pure"] / timings["compiled"] if timings["compiled"] else float("inf")
            line += f"  {timings['compiled']*1e3:>8.1f}ms  {ratio:>7.1f}x"
        line += f"   [result={result}]"
        print(line)


if __name__ == "__main__":
    main()
