"""Instance generators: extremal constructions and seeded random families."""

from __future__ import annotations

import random
from itertools import combinations, permutations, product

from .graph import Digraph, UGraph, is_connected


def gen_tightness_directed(r: int) -> tuple[Digraph, int]:
    """Hub u with r cycles u v_1^i .. v_r^i u, plus a 2-cycle w^i <-> v_1^i each.

    Returns the digraph and the claimed optimum 3r^2 - r.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    hub = 0
    arcs = []
    nxt = 1
    firsts = []
    for _ in range(r):
        cyc = list(range(nxt, nxt + r))
        nxt += r
        firsts.append(cyc[0])
        seq = [hub] + cyc + [hub]
        arcs += list(zip(seq, seq[1:]))
    for v1 in firsts:
        w = nxt
        nxt += 1
        arcs += [(w, v1), (v1, w)]
    return Digraph(nxt, arcs), r * (r + 1) + 2 * r * (r - 1)


def gen_grid_pendant(c: int, r: int = 5) -> UGraph:
    """c x c torus grid, every edge subdivided twice, a pendant on every vertex.

    Vertex count: c^2 grid vertices plus 2 * 2c^2 subdividers, and one
    pendant per vertex doubles that, so 10c^2 in total. For c = 2 the torus
    has parallel edges; subdivision turns them into distinct paths.
    """
    if c < 2:
        raise ValueError("c must be at least 2")
    base = []
    for i, j in product(range(c), repeat=2):
        base.append(((i, j), ((i + 1) % c, j)))
        base.append(((i, j), (i, (j + 1) % c)))
    idx = {(i, j): i * c + j for i, j in product(range(c), repeat=2)}
    n = c * c
    edges = []
    for a, b in base:
        x, y = n, n + 1
        n += 2
        edges += [(idx[a], x), (x, y), (y, idx[b])]
    core = n
    for v in range(core):
        edges.append((v, n))
        n += 1
    return UGraph(n, edges)


def torus_base(c: int) -> list:
    """Edge list (with multiplicity) of the c x c torus grid before subdivision."""
    out = []
    for i, j in product(range(c), repeat=2):
        out.append((i * c + j, ((i + 1) % c) * c + j))
        out.append((i * c + j, i * c + (j + 1) % c))
    return out


def directed_cycle(n: int) -> Digraph:
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def all_digraphs_up_to_iso(n: int) -> list:
    """One representative per isomorphism class of simple digraphs on n vertices."""
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    seen = set()
    reps = []
    perms = list(permutations(range(n)))
    for mask in range(1 << len(pairs)):
        arcs = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        canon = min(tuple(sorted((p[u], p[v]) for u, v in arcs)) for p in perms)
        if canon not in seen:
            seen.add(canon)
            reps.append(Digraph(n, arcs))
    return reps


def all_connected_graphs(n: int) -> list:
    """Every connected labelled simple graph on n vertices."""
    pairs = list(combinations(range(n), 2))
    out = []
    for mask in range(1 << len(pairs)):
        g = UGraph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
        if is_connected(g):
            out.append(g)
    return out


def random_digraph(n: int, p: float, rng: random.Random) -> Digraph:
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p])


def random_connected_graph(n: int, p: float, rng: random.Random) -> UGraph:
    """Random spanning tree plus independent extra edges with probability p."""
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            edges.add((u, v))
    return UGraph(n, edges)
