#!/usr/bin/env python3
"""Compare the numba and pure-numpy versions of the hot kernels.

Both backends get identical inputs; results are checked for equality before
timing. Run: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time

import numpy as np

from rsimple import _accel, kernels
from rsimple.generators import random_digraph
from rsimple.graph import UGraph
from rsimple.oracle import brute_rsimple_max


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_colorful(n, repeat):
    g = random_digraph(n, 0.3, random.Random(n))
    adj = kernels.pad_adjacency(n, g.out)
    colors = np.arange(n, dtype=np.int64)
    src = np.ones(n, dtype=np.bool_)
    a = kernels._colorful_longest_nb(adj, colors, np.int64(n), src)
    b = kernels._colorful_longest_np(adj, colors, n, src)
    assert np.array_equal(a, b)
    t_nb = best_of(lambda: kernels._colorful_longest_nb(adj, colors, np.int64(n), src), repeat)
    t_np = best_of(lambda: kernels._colorful_longest_np(adj, colors, n, src), repeat)
    return t_nb, t_np


def bench_expand(n, r, repeat):
    # one layer deep into the oracle search on K_{2,n-2}
    g = UGraph(n, [(a, b) for a in range(2) for b in range(2, n)])
    adj = kernels.pad_adjacency(n, g.adj)
    radix = r + 1
    powr = np.array([radix**i for i in range(n)], dtype=np.int64)
    verts = np.arange(n, dtype=np.int64)
    codes = powr[verts].copy()
    for _ in range(6):
        codes, verts = kernels._expand_layer_np(codes, verts, adj, powr, radix, r)
        key = np.unique(codes * n + verts)
        codes, verts = key // n, key % n
    a = kernels._expand_layer_nb(codes, verts, adj, powr, radix, r)
    b = kernels._expand_layer_np(codes, verts, adj, powr, radix, r)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
    t_nb = best_of(lambda: kernels._expand_layer_nb(codes, verts, adj, powr, radix, r), repeat)
    t_np = best_of(lambda: kernels._expand_layer_np(codes, verts, adj, powr, radix, r), repeat)
    return len(codes), t_nb, t_np


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")
    print(f"{'kernel':<28}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}")
    for n in (10, 14, 18):
        t_nb, t_np = bench_colorful(n, args.repeat)
        print(f"{f'colorful_longest n={n}':<28}{t_nb * 1e3:>12.2f}{t_np * 1e3:>12.2f}{t_np / t_nb:>10.1f}")
    for n, r in ((8, 4), (10, 6)):
        m, t_nb, t_np = bench_expand(n, r, args.repeat)
        label = f"expand_layer {m} states"
        print(f"{label:<28}{t_nb * 1e3:>12.2f}{t_np * 1e3:>12.2f}{t_np / t_nb:>10.1f}")
    g = UGraph(8, [(a, b) for a in range(2) for b in range(2, 8)])
    t0 = time.perf_counter()
    best = brute_rsimple_max(g, 8, 64)
    print(f"oracle K_2,6 r=8 (active backend {'numba' if _accel.USE_NUMBA else 'numpy'}): "
          f"max {best} in {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
