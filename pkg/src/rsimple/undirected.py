"""Undirected r-simple k-path.

Per connected component: niceness short-circuit, then one of two color-coded
pipelines. The general one guesses an occurrence sequence (visits per color of
a short spanning walk W) and runs a walk DP that hangs treewidth-2 even
components H off the walk. The special one (r^2 > k) either finds a large
matching or works on the small vertex cover it yields, where W and the extra
edge multiplicities can be chosen independently; the latter by min-cost flow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from . import colorings
from .errors import BudgetExceeded, PreconditionViolated
from .flow import FlowNetwork, Infeasible, min_cost_flow
from .graph import UGraph, connected_components, maximal_matching, vertex_cover_from
from .longpath import NOT_NICE, niceness_undirected
from .parallel import imap

GENERAL = "general"
SPECIAL = "special"
AUTO = "auto"

# Threshold used by the edge fit: "half" credits each extra edge with half
# a visit, "full" with a whole one (what the combined Euler trail delivers).
FIT_HALF = "half"
FIT_FULL = "full"

DEFAULT_TW2_BUDGET = 2_000_000


class _Absent:
    """Marks a DP entry with no feasible object (never compared numerically)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Absent"

    def __bool__(self):
        return False


ABSENT = _Absent()


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def default_bound(k: int, r: int) -> int:
    """Color budget b = 30 * ceil(k/r) + 1."""
    return 30 * _ceil_div(k, r) + 1


@dataclass
class UndirSolverParams:
    bound_override: int | None = None
    pipeline: str = AUTO
    coloring: str | None = None
    trials: int | None = None
    seed: int = 0
    family_budget: int = colorings.DEFAULT_BUDGET
    fit_variant: str = FIT_FULL
    tw2_budget: int = DEFAULT_TW2_BUDGET
    use_cache: bool = True
    jobs: int = 1
    stats: dict = field(default_factory=dict)

    def bump(self, key: str, amount: int = 1) -> None:
        self.stats[key] = self.stats.get(key, 0) + amount


class ColoredUGraph:
    """Immutable simple graph with 1-based vertex colors."""

    __slots__ = ("n", "adj", "edges", "colors", "palette", "key")

    def __init__(self, n: int, edges, colors):
        base = UGraph(n, edges)
        self.n = n
        self.adj = base.adj
        self.edges = tuple(sorted(base.edges))
        self.colors = tuple(int(c) for c in colors)
        if len(self.colors) != n:
            raise ValueError("one color per vertex required")
        self.palette = tuple(sorted(set(self.colors)))
        self.key = (n, self.edges, self.colors)

    @classmethod
    def from_ugraph(cls, g: UGraph, colors) -> "ColoredUGraph":
        return cls(g.n, g.edges, colors)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def remove(self, drop) -> tuple["ColoredUGraph", list]:
        keep = [v for v in range(self.n) if v not in set(drop)]
        new = {v: i for i, v in enumerate(keep)}
        edges = [(new[a], new[b]) for a, b in self.edges if a in new and b in new]
        return ColoredUGraph(len(keep), edges, [self.colors[v] for v in keep]), keep


# Occurrence sequences ---------------------------------------------------------


def enumerate_occurrence_sequences(b: int, r: int, active, caps=None, total=None):
    """Every d = (d_1..d_b) with support in `active`, d_i <= r and sum <= 2b.

    `caps` (color -> bound) and `total` tighten the per-color and sum limits.
    """
    active = sorted(set(active))
    limit = 2 * b if total is None else min(total, 2 * b)
    highs = [min(r, caps[c]) if caps is not None else r for c in active]

    def rec(i, left, acc):
        if i == len(active):
            d = [0] * b
            for c, x in zip(active, acc):
                d[c - 1] = x
            yield tuple(d)
            return
        for x in range(min(highs[i], left) + 1):
            yield from rec(i + 1, left - x, acc + [x])

    yield from rec(0, max(limit, 0), [])


def _as_map(d) -> dict:
    if isinstance(d, dict):
        return {int(c): int(x) for c, x in d.items() if x}
    return {i + 1: int(x) for i, x in enumerate(d) if x}


def _color_caps(g: ColoredUGraph, r: int) -> dict:
    """Per-color visit bound for the short spanning walk.

    The spanning walk uses every distinct edge at most twice, so a vertex
    is visited at most deg + 1 times by it.
    """
    caps: dict = {}
    for v in range(g.n):
        c = g.colors[v]
        caps[c] = max(caps.get(c, 0), min(r, len(g.adj[v]) + 1))
    return caps


# Treewidth-2 component DP ----------------------------------------------------


def _rgs(labels) -> tuple:
    seen: dict = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


def _join_partitions(a, b) -> tuple:
    n = len(a)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in (a, b):
        first: dict = {}
        for i, lab in enumerate(part):
            if lab in first:
                parent[find(i)] = find(first[lab])
            else:
                first[lab] = i
    return _rgs(find(i) for i in range(n))


def tw2_component_max(g: ColoredUGraph, C, v_star: int, d, r: int,
                      budget: int = DEFAULT_TW2_BUDGET):
    """Most edges (with multiplicity) of a colorful connected even multigraph H.

    H has treewidth at most 2, contains v_star, uses colors from C only, and
    a vertex of color i has degree at most 2(r - d_i). The DP runs over a
    guessed nice tree decomposition: states are (bag U, color set, bag
    degrees f, bag edge multiplicities g, connectivity partition of U).
    """
    C = frozenset(C)
    dm = _as_map(d)
    cstar = g.colors[v_star]
    if cstar not in C:
        raise PreconditionViolated("color of v_star must be in C")
    keep = [v for v in range(g.n)
            if g.colors[v] in C and (g.colors[v] != cstar or v == v_star)]
    keepset = set(keep)
    cap = {v: 2 * (r - dm.get(g.colors[v], 0)) for v in keep}
    if min(cap.values()) < 0:
        raise PreconditionViolated("occurrence entries may not exceed r")
    nbrs = {v: frozenset(g.adj[v]) & keepset for v in keep}
    bit = {c: 1 << i for i, c in enumerate(sorted(C))}
    cbit = {v: bit[g.colors[v]] for v in keep}

    def bag_edges(U):
        return [(a, b) for a, b in combinations(U, 2) if b in nbrs[a]]

    def colmask(U):
        m = 0
        for v in U:
            m |= cbit[v]
        return m

    layers: list = [dict() for _ in range(len(C) + 1)]
    layers[0][((), 0, (), (), ())] = 0
    groups: dict = {}
    pending: list = [dict() for _ in range(len(C) + 1)]
    count = [1]

    def put(table, key, val):
        if table.get(key, -1) < val:
            if key not in table:
                count[0] += 1
                if count[0] > budget:
                    raise BudgetExceeded(f"treewidth-2 DP exceeded {budget} states")
            table[key] = val

    def introduce(key, val, out):
        U, cm, f, gv, S = key
        for v in keep:
            if v in U or cm & cbit[v]:
                continue
            U2 = tuple(sorted(U + (v,)))
            adjacent = [u for u in U if u in nbrs[v]]
            fmap = dict(zip(U, f))
            ranges = [range(min(cap[v], cap[u] - fmap[u]) + 1) for u in adjacent]
            old_g = dict(zip(bag_edges(U), gv))
            for mult in product(*ranges):
                tot = sum(mult)
                if tot > cap[v]:
                    continue
                new_f = dict(fmap)
                new_f[v] = tot
                new_g = dict(old_g)
                for u, m in zip(adjacent, mult):
                    new_f[u] += m
                    new_g[(min(u, v), max(u, v))] = m
                labels = dict(zip(U, S))
                fresh = max(S, default=-1) + 1
                labels[v] = fresh
                for u, m in zip(adjacent, mult):
                    if m:
                        old = labels[u]
                        for x in labels:
                            if labels[x] == old:
                                labels[x] = labels[v]
                merged = [labels[x] for x in U2]
                nk = (U2, cm | cbit[v], tuple(new_f[x] for x in U2),
                      tuple(new_g[e] for e in bag_edges(U2)), _rgs(merged))
                put(out, nk, val + tot)

    def forget_closure(table):
        for size in (3, 2):
            for key, val in [(k, x) for k, x in table.items() if len(k[0]) == size]:
                U, cm, f, gv, S = key
                for i, v in enumerate(U):
                    if f[i] % 2 or S.count(S[i]) < 2:
                        continue
                    rest = [j for j in range(len(U)) if j != i]
                    U2 = tuple(U[j] for j in rest)
                    old_g = dict(zip(bag_edges(U), gv))
                    nk = (U2, cm, tuple(f[j] for j in rest),
                          tuple(old_g[e] for e in bag_edges(U2)),
                          _rgs(S[j] for j in rest))
                    put(table, nk, val)

    def join_into_pending(new_states):
        for key, val in new_states.items():
            U, cm, f, gv, S = key
            if not U:
                continue
            base = colmask(U)
            if cm == base:
                groups.setdefault((U, gv), []).append((cm, f, S, val))
                continue
            bag_deg = {v: 0 for v in U}
            for (a, b), m in zip(bag_edges(U), gv):
                bag_deg[a] += m
                bag_deg[b] += m
            gsum = sum(gv)
            group = groups.setdefault((U, gv), [])
            for cm2, f2, S2, val2 in group:
                if cm2 == base or cm & cm2 != base:
                    continue
                nf = tuple(a + b - bag_deg[v] for a, b, v in zip(f, f2, U))
                if any(x > cap[v] for x, v in zip(nf, U)):
                    continue
                union = cm | cm2
                nk = (U, union, nf, gv, _join_partitions(S, S2))
                put(pending[bin(union).count("1")], nk, val + val2 - gsum)
            group.append((cm, f, S, val))

    for m in range(1, len(C) + 1):
        table = pending[m]
        for key, val in layers[m - 1].items():
            if len(key[0]) < 3:
                introduce(key, val, table)
        forget_closure(table)
        layers[m] = table
        join_into_pending(table)

    best = ABSENT
    sbit = bit[cstar]
    for m in range(1, len(C) + 1):
        for (U, cm, f, gv, S), val in layers[m].items():
            if cm & sbit and U and max(S) == 0 and all(x % 2 == 0 for x in f):
                if best is ABSENT or val > best:
                    best = val
    return best


# Walk DP with hanging components ---------------------------------------------


_TW2_MEMO: dict = {}
_WALK_MEMO: dict = {}


class _Tw2Cache:
    """Memo of tw2_component_max keyed by (v, color set, caps on that set)."""

    def __init__(self, g: ColoredUGraph, r: int, params: UndirSolverParams):
        self.g, self.r, self.params = g, r, params
        self.memo = _TW2_MEMO.setdefault((g.key, r), {}) if params.use_cache else {}

    def get(self, colors: frozenset, v: int, dm: dict):
        key = (v, colors, tuple(dm.get(c, 0) for c in sorted(colors)))
        if key not in self.memo:
            self.params.bump("tw2_calls")
            self.memo[key] = tw2_component_max(self.g, colors, v, dm, self.r,
                                               self.params.tw2_budget)
        return self.memo[key]


def walk_tw2_value(g: ColoredUGraph, r: int, d, params: UndirSolverParams | None = None,
                   cache: _Tw2Cache | None = None):
    """max over v of N[v, d, all colors], or ABSENT.

    N[v, d', C] is the largest count of W-edges plus H-edges over walks W
    ending at v that visit color i exactly d'_i times, with H's colors in C.
    """
    params = params or UndirSolverParams()
    dm = _as_map(d)
    if any(x > r for x in dm.values()) or not dm:
        return ABSENT
    pal = g.palette
    if any(c not in pal for c in dm):
        return ABSENT
    pos = {c: i for i, c in enumerate(pal)}
    target = tuple(dm.get(c, 0) for c in pal)
    memo_key = (g.key, r, target)
    if params.use_cache and memo_key in _WALK_MEMO:
        return _WALK_MEMO[memo_key]
    cache = cache or _Tw2Cache(g, r, params)
    full = (1 << len(pal)) - 1
    masks = {}

    def colors_of(mask):
        if mask not in masks:
            masks[mask] = frozenset(pal[i] for i in range(len(pal)) if mask >> i & 1)
        return masks[mask]

    def A(mask, v):
        if not mask >> pos[g.colors[v]] & 1:
            return ABSENT
        return cache.get(colors_of(mask), v, dm)

    memo: dict = {}

    def N(v, dp, mask):
        key = (v, dp, mask)
        if key in memo:
            return memo[key]
        ci = pos[g.colors[v]]
        s = sum(dp)
        out = ABSENT
        if s == 1:
            if dp[ci] == 1:
                a = A(mask, v)
                out = 0 if a is ABSENT else max(0, a)
        elif s >= 2 and dp[ci] >= 1:
            rest = dp[:ci] + (dp[ci] - 1,) + dp[ci + 1:]
            hang = []
            sub = mask
            while sub:
                if sub >> ci & 1:
                    a = A(sub, v)
                    if a is not ABSENT:
                        hang.append((sub, a))
                sub = (sub - 1) & mask
            for u in g.adj[v]:
                val = N(u, rest, mask)
                if val is not ABSENT and (out is ABSENT or val + 1 > out):
                    out = val + 1
                for sub, a in hang:
                    val = N(u, rest, mask & ~sub)
                    if val is not ABSENT and (out is ABSENT or a + 1 + val > out):
                        out = a + 1 + val
        memo[key] = out
        return out

    best = ABSENT
    for v in range(g.n):
        val = N(v, target, full)
        if val is not ABSENT and (best is ABSENT or val > best):
            best = val
    if params.use_cache:
        _WALK_MEMO[memo_key] = best
    return best


def walk_tw2_partition(g: ColoredUGraph, k: int, r: int, d,
                       params: UndirSolverParams | None = None, cache: _Tw2Cache | None = None) -> bool:
    """Is there a good pair (W, H) complying with d whose total size reaches k?"""
    best = walk_tw2_value(g, r, d, params, cache)
    return best is not ABSENT and best >= k - 1


def clear_caches() -> None:
    _TW2_MEMO.clear()
    _WALK_MEMO.clear()


def colorful_wrapper(g: UGraph, k: int, r: int, b: int, fam,
                     params: UndirSolverParams | None = None) -> bool:
    """General pipeline on one connected nice graph: colorings x occurrence sequences."""
    params = params or UndirSolverParams()
    for f in fam:
        cg = ColoredUGraph.from_ugraph(g, f)
        caps = _color_caps(cg, r)
        cache = _Tw2Cache(cg, r, params)
        total = 2 * len(cg.edges) + 1
        for d in enumerate_occurrence_sequences(b, r, cg.palette, caps, total):
            if not any(d):
                continue
            params.bump("sequences")
            if walk_tw2_partition(cg, k, r, d, params, cache):
                return True
    return False


# Special pipeline ---------------------------------------------------------------


def matching_shortcut(g: UGraph, k: int, r: int):
    """("yes", matching) when a greedy maximal matching has ceil(k/r) edges,
    else ("cover", U) with U its endpoint set."""
    mm = maximal_matching(g)
    if len(mm) >= _ceil_div(k, r):
        return "yes", mm
    return "cover", vertex_cover_from(mm)


def walk_fit_exists(g: ColoredUGraph, d) -> bool:
    """Walk visiting color i exactly d_i times (r-simple whenever all d_i <= r)."""
    dm = _as_map(d)
    if not dm:
        return False
    pal = g.palette
    if any(c not in pal for c in dm):
        return False
    pos = {c: i for i, c in enumerate(pal)}
    target = tuple(dm.get(c, 0) for c in pal)
    frontier = set()
    for v in range(g.n):
        ci = pos[g.colors[v]]
        if target[ci] >= 1:
            frontier.add((v, tuple(int(i == ci) for i in range(len(pal)))))
    seen = set(frontier)
    while frontier:
        nxt = set()
        for v, vec in frontier:
            if vec == target:
                return True
            for u in g.adj[v]:
                ci = pos[g.colors[u]]
                if vec[ci] < target[ci]:
                    st = (u, vec[:ci] + (vec[ci] + 1,) + vec[ci + 1:])
                    if st not in seen:
                        seen.add(st)
                        nxt.add(st)
        frontier = nxt
    return False


def walk_fit_sequences(g: ColoredUGraph, caps: dict, total: int):
    """All d (aligned with g.palette, d_i <= caps, sum <= total) admitting a walk fit.

    Same accepted set as running walk_fit_exists on each candidate d, found
    in one sweep over (end vertex, visit vector) states. Returns
    (vectors, reached) where `reached` tells whether a walk of size `total`
    exists.
    """
    pal = g.palette
    pos = {c: i for i, c in enumerate(pal)}
    hi = tuple(caps.get(c, 0) for c in pal)
    frontier = set()
    for v in range(g.n):
        ci = pos[g.colors[v]]
        if hi[ci] >= 1 and total >= 1:
            frontier.add((v, tuple(int(i == ci) for i in range(len(pal)))))
    seen = set(frontier)
    found = set()
    size = 1
    while frontier:
        found.update(vec for _, vec in frontier)
        if size >= total:
            return found, True
        nxt = set()
        for v, vec in frontier:
            for u in g.adj[v]:
                ci = pos[g.colors[u]]
                if vec[ci] < hi[ci]:
                    st = (u, vec[:ci] + (vec[ci] + 1,) + vec[ci + 1:])
                    if st not in seen:
                        seen.add(st)
                        nxt.add(st)
        frontier = nxt
        size += 1
    return found, False


@dataclass
class FitSpec:
    graph: ColoredUGraph
    d: dict
    U: frozenset
    k: int
    r: int
    variant: str = FIT_FULL

    def c(self, v: int) -> int:
        return self.r - self.d.get(self.graph.colors[v], 0)

    @property
    def F(self) -> int:
        return sum(self.c(v) for v in range(self.graph.n))

    @property
    def ell_flow(self) -> int:
        gap = self.k - sum(self.d.values())
        if self.variant == FIT_HALF:
            return 2 * gap
        if self.variant == FIT_FULL:
            return gap
        raise ValueError(f"unknown fit variant {self.variant!r}")


def max_edge_fit(g: ColoredUGraph, cvals) -> int:
    """Largest sum of phi over phi >= 0 with even vertex sums <= 2 c_v.

    Min-cost flow: F = sum c_v units pass either along a costly (v1, v2)
    self arc or along free (u1, v2) arcs for edges uv; the free part is the
    out-degree of an Euler orientation of phi.
    """
    n = g.n
    net = FlowNetwork(2 * n + 2)
    s, t = 2 * n, 2 * n + 1
    F = 0
    for v in range(n):
        cv = int(cvals[v])
        F += cv
        net.add_arc(2 * v, 2 * v + 1, None, 1)
        net.add_arc(s, 2 * v, cv, 0)
        net.add_arc(2 * v + 1, t, cv, 0)
    for a, b in g.edges:
        net.add_arc(2 * a, 2 * b + 1, None, 0)
        net.add_arc(2 * b, 2 * a + 1, None, 0)
    out = min_cost_flow(net, s, t, F)
    if out is Infeasible:
        raise AssertionError("self arcs always carry the full flow")
    return F - out[0]


def edge_fit_exists(spec: FitSpec) -> bool:
    """Min cost C of sending F units, accepted iff C <= F - ell_flow."""
    g = spec.graph
    if any(x > spec.r for x in spec.d.values()):
        raise PreconditionViolated("occurrence entries may not exceed r")
    F = spec.F
    return F - max_edge_fit(g, [spec.c(v) for v in range(g.n)]) <= F - spec.ell_flow


def special_colorful(g: ColoredUGraph, k: int, r: int, U, b: int,
                     params: UndirSolverParams | None = None) -> bool:
    """Loop over U' within the cover, then over d with d_i >= 1 on U' colors."""
    params = params or UndirSolverParams()
    U = sorted(U)
    for size in range(len(U) + 1):
        for sub in combinations(U, size):
            sub_colors = [g.colors[u] for u in sub]
            if len(set(sub_colors)) < len(sub):
                continue
            drop = set(U) - set(sub)
            drop |= {v for v in range(g.n) if v not in U and g.colors[v] in sub_colors}
            h, _ = g.remove(drop)
            if h.n == 0:
                continue
            caps = _color_caps(h, r)
            fits, reached = walk_fit_sequences(h, caps, min(2 * b, k))
            if reached:
                # a walk fit of size k is already an r-simple k-path
                return True
            need = [h.palette.index(c) for c in sub_colors]
            cover_pos = [v for v in range(h.n) if h.colors[v] in sub_colors]
            for vec in fits:
                if any(vec[i] < 1 for i in need):
                    continue
                params.bump("sequences")
                dm = {c: x for c, x in zip(h.palette, vec) if x}
                spec = FitSpec(h, dm, frozenset(cover_pos), k, r, params.fit_variant)
                # every edge of h meets the cover, so sum(phi) <= 2 * sum of cover c_v
                if min(spec.F, 2 * sum(spec.c(v) for v in cover_pos)) < spec.ell_flow:
                    continue
                params.bump("flows")
                if edge_fit_exists(spec):
                    return True
    return False


# Dispatcher ---------------------------------------------------------------------


def _family(n: int, b: int, params: UndirSolverParams):
    kind = params.coloring
    if kind is None and b - 1 >= n:
        kind = colorings.INJECTIVE
    return colorings.auto_family(n, b - 1, kind, trials=params.trials, seed=params.seed,
                                 budget=params.family_budget)


def _solve_component(g: UGraph, k: int, r: int, params: UndirSolverParams) -> bool:
    if niceness_undirected(g, k, r) == NOT_NICE:
        params.bump("not_nice")
        return True
    pipeline = params.pipeline
    if pipeline == AUTO:
        pipeline = SPECIAL if r * r > k else GENERAL
    b = params.bound_override or default_bound(k, r)
    fam = _family(g.n, b, params)
    if pipeline == GENERAL:
        return colorful_wrapper(g, k, r, b, fam, params)
    if pipeline != SPECIAL:
        raise ValueError(f"unknown pipeline {pipeline!r}")
    if r * r <= k:
        raise PreconditionViolated("special pipeline needs r^2 > k")
    verdict, cover = matching_shortcut(g, k, r)
    if verdict == "yes":
        params.bump("matching_yes")
        return True
    for f in fam:
        if special_colorful(ColoredUGraph.from_ugraph(g, f), k, r, cover, b, params):
            return True
    return False


def _component_job(job):
    sub, k, r, params = job
    return _solve_component(sub, k, r, params), params.stats


def solve_undirected(g: UGraph, k: int, r: int, params: UndirSolverParams | None = None) -> bool:
    """Does g contain an r-simple walk with k vertex visits?"""
    k, r = int(k), int(r)
    if k < 1 or r < 1:
        raise ValueError("k and r must be positive")
    params = params or UndirSolverParams()
    jobs = [(g.induced(comp)[0], k, r, params) for comp in connected_components(g)]
    for answer, stats in imap(_component_job, jobs, params.jobs):
        if params.jobs > 1:
            for key, val in stats.items():
                params.bump(key, val)
        if answer:
            return True
    return False
