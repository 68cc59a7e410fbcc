"""Long simple path detection by color coding, and the niceness tests."""

from __future__ import annotations

import numpy as np

from . import colorings
from .graph import Digraph, UGraph
from .kernels import colorful_longest, pad_adjacency

NICE = "Nice"
NOT_NICE = "NotNice"

# Largest color count handled by the subset DP (2^c rows).
MAX_DP_COLORS = 22


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _default_family(n: int, ell: int, seed: int = 0):
    if n <= MAX_DP_COLORS:
        return colorings.family(n, n, colorings.INJECTIVE)
    return colorings.family(n, ell, colorings.RANDOMIZED, seed=seed)


def _best_from(g: Digraph, sources, fam) -> np.ndarray:
    """best[v] = most vertices on a simple path from `sources` to v, over fam."""
    adj = pad_adjacency(g.n, g.out)
    src = np.zeros(g.n, dtype=bool)
    src[list(sources)] = True
    best = np.zeros(g.n, dtype=np.int64)
    for f in fam:
        palette = sorted(set(f))
        if len(palette) > MAX_DP_COLORS:
            raise ValueError("coloring uses too many colors for the subset DP")
        remap = {c: i for i, c in enumerate(palette)}
        cols = np.array([remap[c] for c in f], dtype=np.int64)
        best = np.maximum(best, colorful_longest(adj, cols, len(palette), src))
    return best


def detect_long_path(g: Digraph, s: int, t: int, ell: int, fam=None) -> bool:
    """Simple s->t path on at least `ell` vertices (one-sided for imperfect families)."""
    if ell < 1:
        raise ValueError("ell must be positive")
    if fam is None:
        fam = _default_family(g.n, ell)
    return bool(_best_from(g, [s], fam)[t] >= ell)


def niceness_directed(g: Digraph, k: int, r: int, fam=None) -> str:
    """NotNice if a cycle of length >= k/r or a path on >= 2k/r vertices exists.

    The caller passes a strongly connected digraph. A single vertex has no
    cycle to walk around, so it is reported Nice.
    """
    if g.n <= 1:
        return NICE
    need_cycle = max(_ceil_div(k, r), 1)
    need_path = _ceil_div(2 * k, r)
    if fam is None:
        fam = _default_family(g.n, max(need_cycle, need_path))
    best_any = _best_from(g, range(g.n), fam)
    if best_any.max() >= need_path:
        return NOT_NICE
    for u in range(g.n):
        best = _best_from(g, [u], fam)
        for v in g.inc[u]:
            if best[v] >= need_cycle:
                return NOT_NICE
    return NICE


def niceness_undirected(g: UGraph, k: int, r: int, fam=None) -> str:
    """NotNice if a simple path with at least k/r edges exists."""
    need_vertices = _ceil_div(k, r) + 1
    if g.n == 0:
        return NICE
    if fam is None:
        fam = _default_family(g.n, need_vertices)
    best = _best_from(g.to_digraph(), range(g.n), fam)
    return NOT_NICE if best.max() >= need_vertices else NICE
