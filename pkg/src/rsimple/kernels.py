"""Hot inner loops, each with a numba version and a pure-numpy version.

`_accel.USE_NUMBA` picks the implementation at import time. Both versions
take and return plain numpy arrays so callers never see the difference.
"""

from __future__ import annotations

import numpy as np

from . import _accel
from ._accel import njit


def pad_adjacency(n: int, nbrs) -> np.ndarray:
    """Row v lists the out-neighbours of v, padded with -1."""
    width = max([len(a) for a in nbrs] + [1])
    adj = np.full((max(n, 1), width), -1, dtype=np.int64)
    for v, row in enumerate(nbrs):
        adj[v, : len(row)] = row
    return adj


# Visit-count layer expansion (oracle) ---------------------------------------
#
# A state is (vertex, count vector); the vector is packed as a mixed-radix
# int64 with radix R = cap + 1. Expanding a layer of walks of size s yields
# every walk of size s + 1.


@njit
def _expand_layer_nb(codes, verts, adj, powr, radix, cap):
    m = codes.shape[0]
    width = adj.shape[1]
    out_c = np.empty(m * width, dtype=np.int64)
    out_v = np.empty(m * width, dtype=np.int64)
    k = 0
    for i in range(m):
        c = codes[i]
        v = verts[i]
        for j in range(width):
            w = adj[v, j]
            if w < 0:
                break
            if (c // powr[w]) % radix < cap:
                out_c[k] = c + powr[w]
                out_v[k] = w
                k += 1
    return out_c[:k], out_v[:k]


def _expand_layer_np(codes, verts, adj, powr, radix, cap):
    nbr = adj[verts]  # (m, width)
    valid = nbr >= 0
    rows, cols = np.nonzero(valid)
    w = nbr[rows, cols]
    c = codes[rows]
    ok = (c // powr[w]) % radix < cap
    return c[ok] + powr[w[ok]], w[ok]


def expand_layer(codes, verts, adj, powr, radix, cap):
    if _accel.USE_NUMBA:
        return _expand_layer_nb(codes, verts, adj, powr, np.int64(radix), np.int64(cap))
    return _expand_layer_np(codes, verts, adj, powr, radix, cap)


# Colorful path subset DP (long-path detection) -------------------------------


@njit
def _colorful_longest_nb(adj, colors, ncolors, sources):
    n = adj.shape[0]
    width = adj.shape[1]
    full = 1 << ncolors
    dp = np.zeros((full, n), dtype=np.uint8)
    for v in range(n):
        if sources[v]:
            dp[1 << colors[v], v] = 1
    best = np.zeros(n, dtype=np.int64)
    for mask in range(full):
        pc = 0
        x = mask
        while x:
            pc += x & 1
            x >>= 1
        for v in range(n):
            if dp[mask, v] == 0:
                continue
            if pc > best[v]:
                best[v] = pc
            for j in range(width):
                w = adj[v, j]
                if w < 0:
                    break
                bit = 1 << colors[w]
                if mask & bit == 0:
                    dp[mask | bit, w] = 1
    return best


def _colorful_longest_np(adj, colors, ncolors, sources):
    n = adj.shape[0]
    amat = np.zeros((n, n), dtype=bool)
    rows, cols = np.nonzero(adj >= 0)
    amat[rows, adj[rows, cols]] = True
    full = 1 << ncolors
    dp = np.zeros((full, n), dtype=bool)
    src = np.nonzero(sources)[0]
    dp[1 << colors[src], src] = True
    best = np.zeros(n, dtype=np.int64)
    bits = 1 << colors
    for mask in range(full):
        row = dp[mask]
        if not row.any():
            continue
        pc = bin(mask).count("1")
        best[row] = np.maximum(best[row], pc)
        reach = row @ amat
        reach &= (bits & mask) == 0
        idx = np.nonzero(reach)[0]
        dp[mask | bits[idx], idx] = True
    return best


def colorful_longest(adj, colors, ncolors, sources):
    """best[v] = most vertices on a colorful path from a source to v (0 if none)."""
    colors = np.asarray(colors, dtype=np.int64)
    sources = np.asarray(sources, dtype=np.bool_)
    if _accel.USE_NUMBA:
        return _colorful_longest_nb(adj, colors, np.int64(ncolors), sources)
    return _colorful_longest_np(adj, colors, ncolors, sources)
