"""Brute-force ground truth: exhaustive walk search and packing enumeration.

The walk search grows every r-simple walk one vertex at a time. Layer s
holds all distinct (end vertex, visit-count vector) states reachable by a
walk of size s, so the largest non-empty layer is the answer. Nothing here
uses any structural insight about the problems.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from math import comb

import numpy as np

from .errors import BudgetExceeded
from .kernels import expand_layer, pad_adjacency

DEFAULT_STATE_BUDGET = 20_000_000


def _neighbors(g):
    return g.out if g.directed else g.adj


def _layers(g, r: int, cap: int, starts, budget: int):
    """Yield (size, verts) for each non-empty layer, up to size `cap`."""
    n = g.n
    if n == 0 or cap < 1:
        return
    clamp = min(int(r), int(cap))
    radix = clamp + 1
    if n * np.log2(radix) > 62:
        raise BudgetExceeded(f"count vector of {n} digits base {radix} does not fit in 64 bits")
    powr = np.array([radix**i for i in range(n)], dtype=np.int64)
    adj = pad_adjacency(n, _neighbors(g))
    verts = np.array(sorted(starts), dtype=np.int64)
    codes = powr[verts].copy()
    size = 1
    seen = len(verts)
    while len(verts):
        yield size, verts
        if size >= cap:
            return
        codes, verts = expand_layer(codes, verts, adj, powr, radix, clamp)
        if len(codes):
            key = np.unique(codes * n + verts)
            codes, verts = key // n, key % n
        seen += len(verts)
        if seen > budget:
            raise BudgetExceeded(f"oracle explored more than {budget} states")
        size += 1


def brute_rsimple_max(g, r: int, cap: int, budget: int = DEFAULT_STATE_BUDGET) -> int:
    """Largest size of an r-simple walk in g, truncated at cap."""
    best = 0
    for size, _ in _layers(g, r, cap, range(g.n), budget):
        best = size
    return best


def brute_rsimple_st_max(g, r: int, s: int, t: int, cap: int, budget: int = DEFAULT_STATE_BUDGET):
    """Largest size of an r-simple walk from s to t (at most cap), or None."""
    best = None
    for size, verts in _layers(g, r, cap, [s], budget):
        if np.any(verts == t):
            best = size
    return best


def brute_rsimple_witness(g, r: int, k: int, budget: int = DEFAULT_STATE_BUDGET):
    """An explicit r-simple walk of size k, or None. Plain DFS, small inputs only."""
    nbrs = _neighbors(g)
    counts = [0] * g.n
    walk: list = []
    dead: set = set()
    steps = [0]

    def dfs(v):
        steps[0] += 1
        if steps[0] > budget:
            raise BudgetExceeded("witness search budget exhausted")
        counts[v] += 1
        walk.append(v)
        if len(walk) >= k:
            return True
        key = (v, tuple(counts))
        if key not in dead:
            for w in nbrs[v]:
                if counts[w] < r and dfs(w):
                    return True
            dead.add(key)
        counts[v] -= 1
        walk.pop()
        return False

    if k < 1:
        return []
    for v in range(g.n):
        if dfs(v):
            return walk
    return None


def verify_walk(g, walk, r: int) -> dict:
    """Check arcs/edges and the per-vertex cap r; report the size."""
    walk = list(walk)
    ok = all(0 <= v < g.n for v in walk)
    if ok:
        step = g.has_arc if g.directed else g.has_edge
        ok = all(step(a, b) for a, b in zip(walk, walk[1:]))
    if ok and walk:
        ok = max(Counter(walk).values()) <= r
    return {"valid": bool(ok), "size": len(walk)}


def brute_packing(inst, budget: int = 5_000_000) -> bool:
    """Try every q-subcollection of the set list (copies counted separately)."""
    sets = inst.expanded_sets()
    q, r = inst.q, inst.r
    if q <= 0:
        return True
    if q > len(sets):
        return False
    if comb(len(sets), q) > budget:
        raise BudgetExceeded("too many subcollections")
    for pick in combinations(range(len(sets)), q):
        load = Counter(x for i in pick for x in sets[i])
        if not load or max(load.values()) <= r:
            return True
    return False
