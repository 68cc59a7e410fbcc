"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
`python tests/test_acceptance.py` to print the lines alone. Every check
compares against an independent brute force or a closed-form value.
"""

from __future__ import annotations

import random
import sys
import time
from collections import Counter
from itertools import combinations, product
from pathlib import Path

import numpy as np
import pytest

from rsimple import directed, undirected
from rsimple.directed import enrich, solve_directed
from rsimple.flow import FlowNetwork, Infeasible, min_cost_flow
from rsimple.generators import (all_connected_graphs, all_digraphs_up_to_iso, directed_cycle,
                                gen_tightness_directed, random_connected_graph, random_digraph)
from rsimple.graph import (Digraph, MultiDigraph, MultiUGraph, UGraph, euler_trail_construct,
                           euler_trail_exists, euler_trail_exists_undirected, maximal_matching)
from rsimple.oracle import brute_packing, brute_rsimple_max, verify_walk
from rsimple.packing import (PackingInstance, ground_set_bound, reduce_instance,
                             representative_family, rule1, rule2, solve_packing)
from rsimple.undirected import (FIT_FULL, FIT_HALF, GENERAL, SPECIAL, ColoredUGraph, FitSpec,
                                UndirSolverParams, edge_fit_exists, matching_shortcut,
                                solve_undirected, tw2_component_max)

sys.path.insert(0, str(Path(__file__).parent))
from conftest import ACCEPTANCE_LINES  # noqa: E402

# The variant picked by criterion 3 and reused by criterion 8.
FIT_VARIANT = FIT_FULL


def _record(num: int, ok: bool, detail: str) -> bool:
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line, flush=True)
    return ok


def _fresh():
    directed.clear_caches()
    undirected.clear_caches()


# 1. directed oracle equivalence ------------------------------------------------


def criterion_1():
    graphs = [g for n in (1, 2, 3) for g in all_digraphs_up_to_iso(n)]
    rng = random.Random(20240601)
    graphs += [random_digraph(4, rng.uniform(0.2, 0.8), rng) for _ in range(200)]
    start = time.perf_counter()
    bad, checks = [], 0
    for g in graphs:
        for r in (1, 2, 3):
            best = brute_rsimple_max(g, r, 11)
            for k in range(1, 11):
                checks += 1
                if solve_directed(g, k, r) != (best >= k):
                    bad.append((sorted(g.arcs), r, k, best))
    secs = time.perf_counter() - start
    ok = not bad and secs < 15 * 60
    return ok, f"{checks} checks on {len(graphs)} digraphs, {len(bad)} disagreements, {secs:.0f}s"


# 2. undirected general pipeline --------------------------------------------------


def criterion_2():
    bad, checks = [], 0
    for n in (1, 2, 3, 4):
        for g in all_connected_graphs(n):
            for r in (2, 3):
                best = brute_rsimple_max(g, r, 11)
                for k in range(1, 11):
                    checks += 1
                    got = solve_undirected(g, k, r, UndirSolverParams(pipeline=GENERAL))
                    if got != (best >= k):
                        bad.append((sorted(g.edges), r, k, best))
    return not bad, f"{checks} checks, {len(bad)} disagreements"


# 3. undirected special pipeline --------------------------------------------------


def _special_corpus():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(2, 8)
        g = random_connected_graph(n, rng.random() * 0.5, rng)
        r = rng.randint(4, 8)
        k = rng.randint(1, r * r - 1)
        yield g, r, k


def criterion_3():
    full_bad, half_low, half_high = 0, 0, 0
    for g, r, k in _special_corpus():
        truth = brute_rsimple_max(g, r, k) >= k
        full = solve_undirected(g, k, r, UndirSolverParams(pipeline=SPECIAL, fit_variant=FIT_FULL))
        half = solve_undirected(g, k, r, UndirSolverParams(pipeline=SPECIAL, fit_variant=FIT_HALF))
        full_bad += full != truth
        half_low += truth and not half
        half_high += half and not truth
    ok = full_bad == 0 and half_high == 0 and FIT_VARIANT == FIT_FULL
    return ok, (f"variant={FIT_VARIANT}: {100 - full_bad}/100 agree; half-weight variant misses "
                f"{half_low} yes-instances and never over-accepts ({half_high})")


# 4. tightness construction ------------------------------------------------------


def criterion_4():
    parts, ok = [], True
    for r, k_claimed in ((2, 10), (3, 24)):
        g, k_opt = gen_tightness_directed(r)
        best = brute_rsimple_max(g, r, g.n * r)
        yes = solve_directed(g, k_claimed, r)
        no = not solve_directed(g, k_claimed + 1, r)
        oracle_ok = best == k_claimed
        ok &= k_opt == k_claimed and yes and no and oracle_ok
        parts.append(f"r={r}: k_opt={k_opt}, solver yes@{k_claimed}={yes}, "
                     f"solver no@{k_claimed + 1}={no}, oracle max={best}")
    return ok, "; ".join(parts)


# 5. huge r --------------------------------------------------------------------


def criterion_5():
    r = 10 ** 12
    g = directed_cycle(3)
    out = []
    for k, want in ((3 * r, True), (3 * r + 1, False)):
        start = time.perf_counter()
        got = solve_directed(g, k, r)
        out.append((got == want, time.perf_counter() - start))
    ok = all(a and s < 60 for a, s in out)
    return ok, f"k=3r yes in {out[0][1]:.2f}s, k=3r+1 no in {out[1][1]:.2f}s"


# 6. enrichment optimality ----------------------------------------------------------


def _balanced(arcs, phi, r, i, j):
    verts = {v for a in arcs for v in a}
    for v in verts:
        ins = sum(f for (a, b), f in zip(arcs, phi) if b == v)
        outs = sum(f for (a, b), f in zip(arcs, phi) if a == v)
        want = 1 if v == i else (-1 if v == j else 0)
        if outs - ins != want or max(ins, outs) > r:
            return False
    return True


def criterion_6():
    rng = random.Random(66)
    bad = 0
    feasible = 0
    for _ in range(100):
        c = rng.randint(2, 4)
        pairs = [(a, b) for a in range(1, c + 1) for b in range(1, c + 1) if a != b]
        arcs = sorted(rng.sample(pairs, rng.randint(1, min(4, len(pairs)))))
        verts = sorted({v for a in arcs for v in a})
        i, j = rng.sample(verts, 2)
        r = rng.randint(1, 5)
        best = None
        for phi in product(range(1, r + 1), repeat=len(arcs)):
            if _balanced(arcs, phi, r, i, j) and (best is None or sum(phi) > best):
                best = sum(phi)
        got = enrich(arcs, r, i, j)
        if got is None:
            bad += best is not None
            continue
        feasible += 1
        vec = [got[a] for a in arcs]
        bad += best is None or sum(vec) != best or not _balanced(arcs, vec, r, i, j)
    return bad == 0, f"100 topologies ({feasible} enrichable), {bad} mismatches"


# 7. flow module ------------------------------------------------------------------


def _check_flow(net, s, t, F, flows):
    bal = [0] * net.n
    for a, f in zip(net.arcs, flows):
        if not isinstance(f, int) or f < a.lower or f > a.upper:
            return False
        bal[a.u] -= f
        bal[a.v] += f
    want = [0] * net.n
    want[s] -= F
    want[t] += F
    return bal == want


def criterion_7():
    rng = random.Random(77)
    bad = 0
    for _ in range(100):
        n = rng.randint(2, 6)
        net = FlowNetwork(n)
        for _ in range(rng.randint(1, 6)):
            u, v = rng.sample(range(n), 2)
            lower = rng.choice([0, 0, 0, 1])
            net.add_arc(u, v, rng.randint(lower, 6), rng.randint(0, 3), lower)
        s, t = rng.sample(range(n), 2)
        F = rng.randint(0, 8)
        ranges = [np.arange(a.lower, a.upper + 1) for a in net.arcs]
        grid = np.array(np.meshgrid(*ranges, indexing="ij")).reshape(len(ranges), -1).T
        inc = np.zeros((len(net.arcs), n), dtype=np.int64)
        for e, a in enumerate(net.arcs):
            inc[e, a.u] -= 1
            inc[e, a.v] += 1
        want = np.zeros(n, dtype=np.int64)
        want[s], want[t] = -F, F
        feasible = np.all(grid @ inc == want, axis=1)
        costs = grid @ np.array([a.cost for a in net.arcs])
        expect = int(costs[feasible].min()) if feasible.any() else None
        got = min_cost_flow(net, s, t, F)
        if got is Infeasible:
            bad += expect is not None
            continue
        cost, flows = got
        bad += (expect != cost or not _check_flow(net, s, t, F, flows)
                or cost != sum(f * a.cost for f, a in zip(flows, net.arcs)))
    big = FlowNetwork(2)
    big.add_arc(0, 1, 10 ** 15, 2)
    start = time.perf_counter()
    cost, flows = min_cost_flow(big, 0, 1, 10 ** 15)
    secs = time.perf_counter() - start
    ok = bad == 0 and cost == 2 * 10 ** 15 and flows == [10 ** 15] and secs < 1
    return ok, f"100 networks, {bad} mismatches; 10^15 instance in {secs * 1000:.1f}ms"


# 8. edge fit vs brute force -----------------------------------------------------------


def _mult_grid(m: int, top: int) -> np.ndarray:
    """Every vector in {0..top}^m, one per row."""
    if m == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(product(range(top + 1), repeat=m)), dtype=np.int64)


def _phi_table(g: UGraph, r: int):
    m = len(g.edges)
    grid = _mult_grid(m, 2 * r)
    inc = np.zeros((m, g.n), dtype=np.int64)
    for e, (a, b) in enumerate(sorted(g.edges)):
        inc[e, a] = inc[e, b] = 1
    return grid.sum(axis=1), grid @ inc


def criterion_8():
    bad, checks = 0, 0
    for n in (1, 2, 3, 4):
        for g in all_connected_graphs(n):
            cg = ColoredUGraph(g.n, g.edges, range(1, g.n + 1))
            for r in (1, 2, 3):
                sums, deg = _phi_table(g, r)
                even = np.all(deg % 2 == 0, axis=1)
                for d in product(range(r + 1), repeat=n):
                    cap = 2 * (r - np.array(d))
                    ok_rows = even & np.all(deg <= cap, axis=1)
                    best = int(sums[ok_rows].max())
                    dm = {c + 1: x for c, x in enumerate(d) if x}
                    sd = sum(d)
                    reach = {FIT_FULL: sd + best, FIT_HALF: sd + best // 2}
                    for variant, top in reach.items():
                        for k in (max(sd, 1), top, top + 1):
                            checks += 1
                            got = edge_fit_exists(FitSpec(cg, dm, frozenset(), k, r, variant))
                            bad += got != (k <= top)
    return bad == 0, f"{checks} checks (variant {FIT_VARIANT} plus half-weight), {bad} mismatches"


# 9. tw2 component DP vs brute force ------------------------------------------------


def _treewidth_at_most_2(n_vertices, edges) -> bool:
    """Series-parallel reduction: delete degree <= 1, suppress degree 2."""
    adj = {v: set() for v in range(n_vertices)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    changed = True
    while changed:
        changed = False
        for v in list(adj):
            if len(adj[v]) <= 1:
                for u in adj.pop(v):
                    adj[u].discard(v)
                changed = True
            elif len(adj[v]) == 2:
                a, b = adj.pop(v)
                adj[a].discard(v)
                adj[b].discard(v)
                adj[a].add(b)
                adj[b].add(a)
                changed = True
    return not adj


def _connected(verts, edges) -> bool:
    verts = set(verts)
    seen = {min(verts)}
    stack = [min(verts)]
    while stack:
        x = stack.pop()
        for a, b in edges:
            for p, q in ((a, b), (b, a)):
                if p == x and q not in seen:
                    seen.add(q)
                    stack.append(q)
    return seen == verts


class _Tw2Brute:
    def __init__(self, n, edges, r):
        self.n, self.edges = n, sorted(edges)
        m = len(self.edges)
        grid = _mult_grid(m, 2 * r)
        inc = np.zeros((m, n), dtype=np.int64)
        for e, (a, b) in enumerate(self.edges):
            inc[e, a] = inc[e, b] = 1
        self.sums = grid.sum(axis=1)
        self.deg = grid @ inc
        self.even = np.all(self.deg % 2 == 0, axis=1)
        self.support = (grid > 0) @ (1 << np.arange(m, dtype=np.int64))
        self.tw_ok = np.array([_treewidth_at_most_2(n, self._sub(mask)) for mask in range(1 << m)])

    def _sub(self, mask):
        return [e for i, e in enumerate(self.edges) if mask >> i & 1]

    def best(self, colors, C, v_star, d, r):
        good = np.zeros(1 << len(self.edges), dtype=bool)
        for mask in range(len(good)):
            sub = self._sub(mask)
            verts = {v for e in sub for v in e} | {v_star}
            cols = [colors[v] for v in verts]
            good[mask] = (self.tw_ok[mask] and len(set(cols)) == len(cols)
                          and set(cols) <= C and _connected(verts, sub))
        cap = np.array([2 * (r - d.get(colors[v], 0)) for v in range(self.n)])
        rows = good[self.support] & self.even & np.all(self.deg <= cap, axis=1)
        return int(self.sums[rows].max())


def criterion_9():
    rng = random.Random(99)
    bad, checks = 0, 0
    for n in (1, 2, 3, 4):
        pairs = list(combinations(range(n), 2))
        for emask in range(1 << len(pairs)):
            edges = [p for i, p in enumerate(pairs) if emask >> i & 1]
            colorings = [tuple(range(1, n + 1))]
            if n >= 3:
                colorings.append(tuple(rng.randint(1, n - 1) for _ in range(n)))
            for r in (1, 2):
                brute = _Tw2Brute(n, edges, r)
                for colors in colorings:
                    cg = ColoredUGraph(n, edges, colors)
                    pal = sorted(set(colors))
                    for v_star in range(n):
                        others = [c for c in pal if c != colors[v_star]]
                        for size in range(len(others) + 1):
                            for extra in combinations(others, size):
                                C = frozenset(extra) | {colors[v_star]}
                                for d in ({}, {c: rng.randint(0, r) for c in C}):
                                    checks += 1
                                    got = tw2_component_max(cg, C, v_star, d, r)
                                    bad += got != brute.best(colors, C, v_star, d, r)
    tri = ColoredUGraph(3, [(0, 1), (1, 2), (0, 2)], [1, 2, 3])
    tri_ok = tw2_component_max(tri, {1, 2, 3}, 0, {}, 2) == 6
    return bad == 0 and tri_ok, f"{checks} checks, {bad} mismatches; triangle = 6: {tri_ok}"


# 10. packing ---------------------------------------------------------------------


def criterion_10():
    rng = random.Random(1010)
    bad, bound_bad = 0, 0
    for _ in range(200):
        n = rng.randint(1, 8)
        p, q, r = rng.randint(1, 3), rng.randint(1, 5), rng.randint(1, 3)
        sets = [rng.sample(range(n), rng.randint(0, min(p, n))) for _ in range(rng.randint(1, 12))]
        inst = PackingInstance.from_sets(n, sets, p, q, r)
        truth = brute_packing(inst)
        r1 = rule1(inst)
        r2 = rule2(r1)
        red = reduce_instance(inst)
        bad += not (brute_packing(r1) == brute_packing(r2) == brute_packing(red)
                    == solve_packing(inst) == truth)
        if red.q > red.r and red.size >= red.q:
            bound_bad += red.n >= ground_set_bound(red)
    rep_bad, rep_checks = 0, 0
    for n in range(1, 9):
        for p in (1, 2, 3):
            allp = list(combinations(range(n), p))
            if not allp:
                continue
            for kappa in (0, 1, 2, 3):
                for _ in range(3):
                    H = rng.sample(allp, min(len(allp), rng.randint(1, 14)))
                    cert = representative_family(H, kappa)
                    kept = [set(H[i]) for i in cert.selected]
                    rep_bad += len(kept) > cert.bound
                    for B in combinations(range(n), kappa):
                        rep_checks += 1
                        B = set(B)
                        rep_bad += any(not B & set(a) for a in H) != any(not B & a for a in kept)
    ok = bad == bound_bad == rep_bad == 0
    return ok, (f"200 instances: {bad} answer changes, {bound_bad} bound violations; "
                f"{rep_checks} blocker checks, {rep_bad} failures")


# 11. Euler machinery ------------------------------------------------------------------


def _degree_rule(mult: dict, n: int, s: int, t: int, is_directed: bool) -> bool:
    if not mult:
        return s == t
    if is_directed:
        bal = [0] * n
        for (u, v), m in mult.items():
            bal[u] += m
            bal[v] -= m
        want = [0] * n
        if s != t:
            want[s], want[t] = 1, -1
        degrees_ok = bal == want
    else:
        deg = [0] * n
        for (u, v), m in mult.items():
            deg[u] += m
            deg[v] += m
        odd = {v for v in range(n) if deg[v] % 2}
        degrees_ok = odd == ({s, t} if s != t else set())
    verts = {v for e in mult for v in e} | {s, t}
    return degrees_ok and _connected(verts, list(mult))


def _random_walk(rng, n, length, start):
    walk = [start]
    for _ in range(length):
        walk.append(rng.choice([v for v in range(n) if v != walk[-1]]))
    return walk


def criterion_11():
    rng = random.Random(1111)
    bad, built = 0, 0
    for i in range(500):
        is_directed = i % 2 == 0
        n = rng.randint(2, 8)
        # a closed walk repeated `rep` times plus an open walk from one of its vertices
        closed = _random_walk(rng, n, rng.randint(2, 12), 0)
        if closed[-1] != 0:
            closed.append(0)
        rep = rng.randint(1, 400)
        opened = _random_walk(rng, n, rng.randint(0, 8), rng.choice(closed))
        counts: Counter = Counter()
        for walk, times in ((closed, rep), (opened, 1)):
            for u, v in zip(walk, walk[1:]):
                key = (u, v) if is_directed else (min(u, v), max(u, v))
                counts[key] += times
        if sum(counts.values()) > 10 ** 4:
            continue
        if i % 5 == 4:
            u, v = rng.sample(range(n), 2)
            counts[(u, v) if is_directed else (min(u, v), max(u, v))] += 1
        s, t = opened[0], opened[-1]
        g = MultiDigraph(n, counts) if is_directed else MultiUGraph(n, counts)
        exists = euler_trail_exists(g, s, t) if is_directed else euler_trail_exists_undirected(g, s, t)
        rule = _degree_rule(dict(counts), n, s, t, is_directed)
        bad += exists != rule
        if not exists:
            continue
        built += 1
        trail = euler_trail_construct(g, s, t, cap=10 ** 5)
        support = (Digraph if is_directed else UGraph)(n, list(counts))
        used = Counter((u, v) if is_directed else (min(u, v), max(u, v))
                       for u, v in zip(trail, trail[1:]))
        check = verify_walk(support, trail, len(trail))
        bad += not (check["valid"] and used == counts and trail[0] == s and trail[-1] == t)
    return bad == 0, f"{built} trails built and verified, {bad} failures"


# 12. matching shortcut ------------------------------------------------------------------


def criterion_12():
    rng = random.Random(1212)
    bad, tried = 0, 0
    while tried < 50:
        n = rng.randint(2, 10)
        g = random_connected_graph(n, rng.uniform(0.1, 0.6), rng)
        r = rng.randint(2, 4)
        m = len(maximal_matching(g))
        k = min(r * m, r * r - 1)
        if k < 1:
            continue
        tried += 1
        verdict, _ = matching_shortcut(g, k, r)
        bad += verdict != "yes" or brute_rsimple_max(g, r, k) < k
    return bad == 0, f"50 instances, {bad} failures"


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 13)}


@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num):
    _fresh()
    ok, detail = CRITERIA[num]()
    assert _record(num, ok, detail), detail


if __name__ == "__main__":
    results = []
    for num, fn in CRITERIA.items():
        _fresh()
        results.append(_record(num, *fn()))
    sys.exit(0 if all(results) else 1)
