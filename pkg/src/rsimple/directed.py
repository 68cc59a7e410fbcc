"""Directed r-simple k-path: SCC dynamic program over per-component tables.

Per strongly connected component the pipeline is: niceness short-circuit,
then the all-pairs long (s,t)-path table via color coding on the pendant
graph, where each colorful query guesses a topology (a colored sub-arc-set
of the color quotient), enriches it with arc multiplicities by flow, and
checks realizability with the recursive cycle DP.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from . import colorings
from .flow import FlowNetwork, Infeasible, max_value_circulation_with_lower_bounds
from .graph import Digraph, scc
from .longpath import NOT_NICE, niceness_directed
from .parallel import imap


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def default_bound(k: int, r: int) -> int:
    """Color budget b = 30 * ceil(k/r)^2 + 1."""
    return 30 * _ceil_div(k, r) ** 2 + 1


@dataclass
class SolverParams:
    bound_override: int | None = None
    coloring: str | None = None  # None selects automatically
    trials: int | None = None
    seed: int = 0
    family_budget: int = colorings.DEFAULT_BUDGET
    use_cache: bool = True
    jobs: int = 1
    stats: dict = field(default_factory=dict)

    def bump(self, key: str, amount: int = 1) -> None:
        self.stats[key] = self.stats.get(key, 0) + amount


class ColoredDigraph:
    """Immutable digraph with 1-based vertex colors."""

    __slots__ = ("n", "out", "inc", "colors", "key")

    def __init__(self, n: int, arcs, colors):
        out = [[] for _ in range(n)]
        inc = [[] for _ in range(n)]
        for u, v in sorted(set(arcs)):
            if u == v:
                raise ValueError("self-loop")
            out[u].append(v)
            inc[v].append(u)
        self.n = n
        self.out = tuple(tuple(a) for a in out)
        self.inc = tuple(tuple(a) for a in inc)
        self.colors = tuple(int(c) for c in colors)
        if len(self.colors) != n:
            raise ValueError("one color per vertex required")
        self.key = (n, self.colors, self.out)

    def arcs(self):
        return [(u, v) for u in range(self.n) for v in self.out[u]]

    def quotient(self) -> frozenset:
        """Arcs of the color quotient (pairs of distinct colors)."""
        c = self.colors
        return frozenset((c[u], c[v]) for u, v in self.arcs() if c[u] != c[v])

    def with_pendant(self, u: int, color: int) -> tuple["ColoredDigraph", int]:
        x = self.n
        g = ColoredDigraph(self.n + 1, self.arcs() + [(u, x)], self.colors + (color,))
        return g, x


# Topologies -----------------------------------------------------------------


def _arc_line_graph(arcs):
    touching: dict = {}
    for i, (a, b) in enumerate(arcs):
        touching.setdefault(a, []).append(i)
        touching.setdefault(b, []).append(i)
    nbrs = [set() for _ in arcs]
    for ids in touching.values():
        for i in ids:
            nbrs[i].update(ids)
    for i in range(len(arcs)):
        nbrs[i].discard(i)
    return nbrs


def enumerate_topologies(quotient, max_arcs: int):
    """Every weakly connected non-empty sub-arc-set with at most max_arcs arcs.

    Connected arc sets are connected vertex sets of the line graph, listed
    once each by the ESU scheme (extension by exclusive neighbours only).
    """
    arcs = sorted(quotient)
    nbrs = _arc_line_graph(arcs)

    def extend(sub, closed, ext, root):
        yield frozenset(arcs[i] for i in sub)
        if len(sub) >= max_arcs:
            return
        ext = list(ext)
        while ext:
            w = ext.pop()
            fresh = [u for u in nbrs[w] if u > root and u not in closed]
            yield from extend(sub + [w], closed | nbrs[w] | {w}, ext + fresh, root)

    if max_arcs < 1:
        return
    for root in range(len(arcs)):
        closed = nbrs[root] | {root}
        yield from extend([root], closed, [u for u in nbrs[root] if u > root], root)


def topology_vertices(arcs) -> frozenset:
    return frozenset(x for a in arcs for x in a)


# Enrichment -------------------------------------------------------------------


def _canonical(arcs, i, j):
    ranks = {c: n for n, c in enumerate(sorted(topology_vertices(arcs) | {i, j}))}
    return (tuple(sorted((ranks[a], ranks[b]) for a, b in arcs)), ranks[i], ranks[j]), ranks


@lru_cache(maxsize=1 << 18)
def _enrich_canonical(arcs: tuple, i: int, j: int, r: int):
    verts = sorted(topology_vertices(arcs))
    if i not in verts or j not in verts:
        return None
    net = FlowNetwork(2 * len(verts))
    pos = {v: n for n, v in enumerate(verts)}
    # v_in = 2p, v_out = 2p+1; throughput of a vertex = its out-sum plus
    # one extra unit at t, which the auxiliary t->s arc carries.
    for v in verts:
        net.add_arc(2 * pos[v], 2 * pos[v] + 1, r)
    objective = []
    for a, b in arcs:
        objective.append(net.add_arc(2 * pos[a] + 1, 2 * pos[b], None, lower=1))
    net.add_arc(2 * pos[j] + 1, 2 * pos[i], 1, lower=1)
    out = max_value_circulation_with_lower_bounds(net, objective)
    if out is Infeasible:
        return None
    total, flows = out
    return total, tuple(flows[k] for k in objective)


def enrich(arcs, r: int, i: int, j: int):
    """Multiplicities phi >= 1 meeting the balance rules, maximizing their sum.

    Returns a dict arc -> phi, or None when no enrichment exists.
    """
    if i == j:
        raise ValueError("endpoint colors must differ")
    arcs = frozenset(arcs)
    if not arcs:
        return None
    (carcs, ci, cj), ranks = _canonical(arcs, i, j)
    got = _enrich_canonical(carcs, ci, cj, int(r))
    if got is None:
        return None
    back = {v: c for c, v in ranks.items()}
    return {(back[a], back[b]): f for (a, b), f in zip(carcs, got[1])}


def is_enrichment(arcs, phi: dict, r: int, i: int, j: int) -> bool:
    """Direct check of the balance and cap rules (used by tests and asserts)."""
    verts = topology_vertices(arcs)
    if i not in verts or j not in verts or set(phi) != set(arcs):
        return False
    if any(f < 1 for f in phi.values()):
        return False
    for v in verts:
        ins = sum(f for (a, b), f in phi.items() if b == v)
        outs = sum(f for (a, b), f in phi.items() if a == v)
        if v == i:
            ok = ins + 1 == outs <= r
        elif v == j:
            ok = ins == outs + 1 <= r
        else:
            ok = ins == outs <= r
        if not ok:
            return False
    return True


# Realizability of an enriched topology ---------------------------------------


def _has_cycle(arcs) -> bool:
    verts = topology_vertices(arcs)
    out = {v: [] for v in verts}
    indeg = {v: 0 for v in verts}
    for a, b in arcs:
        out[a].append(b)
        indeg[b] += 1
    queue = deque(v for v in verts if indeg[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen < len(verts)


def pick_cycle(arcs) -> list:
    """Shortest cycle, ties broken by smallest color sequence starting at its least color."""
    verts = sorted(topology_vertices(arcs))
    out = {v: sorted(b for a, b in arcs if a == v) for v in verts}
    best = None
    for start in verts:
        # shortest cycles whose least color is `start`
        stack = [(start, [start])]
        while stack:
            v, path = stack.pop()
            if best is not None and len(path) > len(best):
                continue
            for w in out[v]:
                if w == start:
                    cand = list(path)
                    if best is None or (len(cand), cand) < (len(best), best):
                        best = cand
                elif w > start and w not in path:
                    stack.append((w, path + [w]))
    return best


def _base_case(g: ColoredDigraph, s: int, t: int, arcs, phi: dict, A: frozenset) -> bool:
    if any(f != 1 for f in phi.values()):
        return False
    cs, ct = g.colors[s], g.colors[t]
    succ: dict = {}
    indeg: dict = {}
    for a, b in arcs:
        if a in succ:
            return False
        succ[a] = b
        indeg[b] = indeg.get(b, 0) + 1
    if any(d > 1 for d in indeg.values()) or cs in indeg or ct in succ:
        return False
    order = [cs]
    while order[-1] in succ:
        order.append(succ[order[-1]])
    if order[-1] != ct or len(order) != len(topology_vertices(arcs)):
        return False
    tcolors = set(order)
    acolors = [g.colors[a] for a in A]
    if len(set(acolors)) != len(acolors) or any(c not in tcolors for c in acolors):
        return False
    owner = {g.colors[a]: a for a in A}
    allowed = set(arcs)

    def keep(v):
        c = g.colors[v]
        return c in tcolors and owner.get(c, v) == v

    if not (keep(s) and keep(t)):
        return False
    seen = {s}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        if v == t:
            return True
        for w in g.out[v]:
            if w not in seen and keep(w) and (g.colors[v], g.colors[w]) in allowed:
                seen.add(w)
                queue.append(w)
    return False


class _Realizer:
    """Recursive solver for annotated enriched-topology instances, with memo."""

    def __init__(self, r: int, params: SolverParams | None = None):
        self.r = r
        self.memo: dict = {}
        self.params = params or SolverParams()

    def solve(self, g: ColoredDigraph, s: int, t: int, arcs, phi: dict, A) -> bool:
        key = (g.key, s, t, frozenset(phi.items()), frozenset(A))
        hit = self.memo.get(key)
        if hit is None:
            self.params.bump("enriched_calls")
            hit = self._solve(g, s, t, frozenset(arcs), phi, frozenset(A))
            self.memo[key] = hit
        return hit

    def _solve(self, g, s, t, arcs, phi, A) -> bool:
        if not _has_cycle(arcs):
            return _base_case(g, s, t, arcs, phi, A)
        cycle = pick_cycle(arcs)
        q = len(cycle)
        carcs = [(cycle[i], cycle[(i + 1) % q]) for i in range(q)]
        M = min(phi[a] for a in carcs)
        E = {a for a in carcs if phi[a] == M}
        rest = [a for a in arcs if a not in E]
        comps = _weak_components(topology_vertices(arcs), rest)
        cs, ct = g.colors[s], g.colors[t]
        cyc_set = set(cycle)
        anchored = {}
        for verts in comps:
            has_s, has_t = cs in verts, ct in verts
            if has_s != has_t:
                return False
            qarcs = frozenset(a for a in rest if a[0] in verts)
            qphi = {a: phi[a] - (M if a in carcs else 0) for a in qarcs}
            anchor = min(verts & cyc_set)
            fa = frozenset(v for v in A if g.colors[v] in verts)
            anchored[anchor] = (has_s, qarcs, qphi, fa)

        ok_cache: dict = {}

        def ok(color, u):
            if color not in anchored:
                return True
            hit = ok_cache.get(u)
            if hit is None:
                both, qarcs, qphi, fa = anchored[color]
                need = fa | {u}
                if both:
                    hit = self.solve(g, s, t, qarcs, qphi, need)
                else:
                    fresh = max(g.colors) + 1
                    g2, x = g.with_pendant(u, fresh)
                    arcs2 = qarcs | {(color, fresh)}
                    phi2 = dict(qphi)
                    phi2[(color, fresh)] = 1
                    hit = self.solve(g2, u, x, arcs2, phi2, need)
                ok_cache[u] = hit
            return hit

        by_color: dict = {}
        for v in range(g.n):
            by_color.setdefault(g.colors[v], []).append(v)
        for w in by_color.get(cycle[0], []):
            if not ok(cycle[0], w):
                continue
            layer = {w}
            for i in range(1, q):
                nxt = set()
                for u in by_color.get(cycle[i], []):
                    if any(p in layer for p in g.inc[u]) and ok(cycle[i], u):
                        nxt.add(u)
                layer = nxt
                if not layer:
                    break
            if any(w in g.out[u] for u in layer):
                return True
        return False


def _weak_components(verts, arcs) -> list:
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in arcs:
        parent[find(a)] = find(b)
    groups: dict = {}
    for v in verts:
        groups.setdefault(find(v), set()).add(v)
    return [frozenset(c) for c in groups.values()]


def solve_enriched(g: ColoredDigraph, r: int, s: int, t: int, arcs, phi: dict, A=()) -> bool:
    return _Realizer(r).solve(g, s, t, frozenset(arcs), dict(phi), frozenset(A))


# Colorful long (s,t)-path ----------------------------------------------------


def _condensation_ends(arcs):
    """(source-component, sink-component) when each is unique, else None.

    T plus one arc j->i is strongly connected iff i lies in the unique source
    component and j in the unique sink component of T's condensation. Every
    feasible enrichment is a circulation (with the t->s unit) that is
    positive on all arcs, so this is necessary for enrichability.
    """
    verts = sorted(topology_vertices(arcs))
    sub = Digraph(len(verts), [(verts.index(a), verts.index(b)) for a, b in arcs])
    comps = scc(sub)
    if len(comps) == 1:
        whole = frozenset(verts)
        return whole, whole
    cid = {v: i for i, c in enumerate(comps) for v in c}
    has_in = set()
    has_out = set()
    for a, b in sub.arcs:
        if cid[a] != cid[b]:
            has_out.add(cid[a])
            has_in.add(cid[b])
    srcs = [i for i in range(len(comps)) if i not in has_in]
    snks = [i for i in range(len(comps)) if i not in has_out]
    if len(srcs) != 1 or len(snks) != 1:
        return None
    return (frozenset(verts[v] for v in comps[srcs[0]]),
            frozenset(verts[v] for v in comps[snks[0]]))


def _sink_colors(quot) -> set:
    heads = {a for a, _ in quot}
    return {b for _, b in quot if b not in heads}


def _candidate_topologies(g: ColoredDigraph, s: int, t: int, max_arcs: int):
    """Topologies worth enriching for an (s,t) query.

    A color with no outgoing quotient arc can only host the last vertex of a
    walk. So other sink colors never occur in T, and when t's color is a
    sink, T has exactly one arc into it, from the color of an in-neighbour
    of t. Topologies failing the strong-connectivity test above are skipped.
    """
    quot = g.quotient()
    cs, ct = g.colors[s], g.colors[t]
    sinks = _sink_colors(quot)
    core = frozenset(a for a in quot if a[1] not in sinks)
    if ct in sinks:
        entries = sorted({(g.colors[w], ct) for w in g.inc[t] if g.colors[w] != ct})
        yield from (frozenset([e]) for e in entries if e[0] == cs)
        for sub in enumerate_topologies(core, max_arcs - 1):
            ends = _condensation_ends(sub)
            if ends is None or cs not in ends[0]:
                continue
            for e in entries:
                if e[0] in ends[1]:
                    yield sub | {e}
    else:
        for sub in enumerate_topologies(core, max_arcs):
            ends = _condensation_ends(sub)
            if ends is not None and cs in ends[0] and ct in ends[1]:
                yield sub


def colorful_rsls(g: ColoredDigraph, k: int, r: int, s: int, t: int, b: int,
                  params: SolverParams | None = None, realizer: _Realizer | None = None) -> int:
    """k* with: some r-simple (s,t)-walk has size k*, no colorful one is longer.

    `k` does not influence the value; it is kept for interface symmetry.
    """
    params = params or SolverParams()
    cs, ct = g.colors[s], g.colors[t]
    if s == t or cs == ct:
        raise ValueError("endpoints must be distinct and differently colored")
    realizer = realizer or _Realizer(r, params)
    scored = []
    for arcs in _candidate_topologies(g, s, t, b):
        params.bump("topologies")
        phi = enrich(arcs, r, cs, ct)
        if phi is not None:
            scored.append((sum(phi.values()), sorted(arcs), phi))
    return _first_realizable(g, s, t, scored, realizer)


def _first_realizable(g, s, t, scored, realizer) -> int:
    scored.sort(key=lambda x: (-x[0], x[1]))
    for total, arcs, phi in scored:
        if realizer.solve(g, s, t, arcs, phi, ()):
            return 1 + total
    return 0


def _pendant_pair_values(cg: ColoredDigraph, n: int, r: int, b: int,
                         params: SolverParams) -> dict:
    """colorful_rsls(cg, u, v') for every pair of original vertices u, v.

    Same topologies and answers as n^2 separate calls, but the connected arc
    sets of the quotient are enumerated once and shared by all pairs.
    """
    colors = cg.colors
    # Every original vertex has a pendant, so b is the only sink color.
    core = frozenset(a for a in cg.quotient() if a[1] != b)
    present = {colors[v] for v in range(n)}
    by_pair: dict = {}

    def consider(sub, i, j):
        arcs = sub | {(j, b)}
        params.bump("topologies")
        phi = enrich(arcs, r, i, b)
        if phi is not None:
            by_pair.setdefault((i, j), []).append((sum(phi.values()), sorted(arcs), phi))

    for c in present:
        consider(frozenset(), c, c)
    for sub in enumerate_topologies(core, b - 1):
        ends = _condensation_ends(sub)
        if ends is None:
            continue
        for i in ends[0] & present:
            for j in ends[1] & present:
                consider(sub, i, j)
    realizer = _Realizer(r, params)
    out = {}
    for u in range(n):
        for v in range(n):
            scored = list(by_pair.get((colors[u], colors[v]), []))
            out[(u, v)] = _first_realizable(cg, u, n + v, scored, realizer)
    return out


# All-pairs table and the SCC program ------------------------------------------


FOUND = "FoundKPath"
_TABLE_CACHE: dict = {}


def _family_for(n: int, b: int, params: SolverParams):
    c = b - 1
    kind = params.coloring
    if kind is None:
        kind = colorings.INJECTIVE if c >= n else None
    return colorings.auto_family(n, c, kind, trials=params.trials, seed=params.seed,
                                 budget=params.family_budget)


def _pair_values(g: Digraph, r: int, b: int, params: SolverParams) -> dict:
    """Largest k_uv over the coloring family, updated as t - 1 per colorful answer t."""
    fam = _family_for(g.n, b, params)
    sig = (g.n, tuple(sorted(g.arcs)), int(r), fam.kind, fam.n,
           None if fam.kind == colorings.INJECTIVE else (fam.c, fam.trials, fam.seed),
           min(b, len(g.arcs) + 2))
    if params.use_cache and sig in _TABLE_CACHE:
        return _TABLE_CACHE[sig]
    n = g.n
    arcs = list(g.arcs) + [(v, n + v) for v in range(n)]
    best = {(u, v): 0 for u in range(n) for v in range(n)}
    for f in fam:
        cg = ColoredDigraph(2 * n, arcs, tuple(f) + (b,) * n)
        for (u, v), val in _pendant_pair_values(cg, n, r, b, params).items():
            if val > best[(u, v)] + 1:
                best[(u, v)] = val - 1
    if params.use_cache:
        _TABLE_CACHE[sig] = best
    return best


def rsls(g: Digraph, k: int, r: int, params: SolverParams | None = None):
    """All-pairs long (s,t)-path table for a strongly connected, nice digraph.

    Returns FOUND when some entry reaches k, else the dict (u,v) -> k_uv.
    """
    params = params or SolverParams()
    if g.n == 1:
        table = {(0, 0): 1}
    else:
        b = params.bound_override or default_bound(k, r)
        table = _pair_values(g, r, b, params)
    if any(val >= k for val in table.values()):
        return FOUND
    return dict(table)


def _component_table(job):
    (sub, old), k, r, params = job
    if niceness_directed(sub, k, r) == NOT_NICE:
        params.bump("not_nice")
        return old, FOUND, params.stats
    return old, rsls(sub, k, r, params), params.stats


def solve_directed(g: Digraph, k: int, r: int, params: SolverParams | None = None) -> bool:
    """Does g have an r-simple walk with k vertex visits?"""
    params = params or SolverParams()
    k, r = int(k), int(r)
    if k < 1 or r < 1:
        raise ValueError("k and r must be positive")
    if g.n == 0:
        return False
    if k == 1:
        return True
    comps = scc(g)
    jobs = [(g.induced(comp), k, r, params) for comp in comps]
    tables = []
    for old, table, stats in imap(_component_table, jobs, params.jobs):
        for key, val in stats.items():
            if params.jobs > 1:
                params.bump(key, val)
        if table == FOUND:
            return True
        tables.append((old, table))
    where = {}
    for idx, (old, _) in enumerate(tables):
        for p, v in enumerate(old):
            where[v] = (idx, p)
    M = [0] * g.n
    for idx, (old, table) in enumerate(tables):
        members = set(old)
        for pv, v in enumerate(old):
            best = max(table[(pu, pv)] for pu in range(len(old)))
            for w in old:
                pw = where[w][1]
                for u in g.inc[w]:
                    if u not in members:
                        best = max(best, M[u] + table[(pw, pv)])
            M[v] = best
            if best >= k:
                return True
    return False


def clear_caches() -> None:
    _TABLE_CACHE.clear()
    _enrich_canonical.cache_clear()
