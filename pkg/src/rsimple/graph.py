"""Simple and multi (di)graphs, SCCs, matchings and Euler trails.

Vertices are dense ints in [0, n). Colors, where used, are 1-based.
Multiplicities are Python ints, so they never overflow.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import PreconditionViolated, TooLarge, ValidationError


def _check_pair(n: int, u: int, v: int) -> None:
    if u == v:
        raise ValidationError(f"self-loop at vertex {u}")
    if not (0 <= u < n and 0 <= v < n):
        raise ValidationError(f"endpoint out of range in ({u}, {v}) for n={n}")


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: frozenset
    out: tuple = field(init=False, repr=False, compare=False)
    inc: tuple = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, arcs: Iterable = ()):
        arcs = frozenset((int(u), int(v)) for u, v in arcs)
        for u, v in arcs:
            _check_pair(n, u, v)
        out = [[] for _ in range(n)]
        inc = [[] for _ in range(n)]
        for u, v in sorted(arcs):
            out[u].append(v)
            inc[v].append(u)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "out", tuple(tuple(a) for a in out))
        object.__setattr__(self, "inc", tuple(tuple(a) for a in inc))

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def neighbors(self, u: int) -> tuple:
        return self.out[u]

    def induced(self, vertices: Iterable[int]) -> tuple["Digraph", list]:
        """Subgraph on `vertices`, relabelled 0..m-1; also returns the old ids."""
        old = sorted(set(vertices))
        new = {v: i for i, v in enumerate(old)}
        arcs = [(new[u], new[v]) for u, v in self.arcs if u in new and v in new]
        return Digraph(len(old), arcs), old

    @property
    def directed(self) -> bool:
        return True


@dataclass(frozen=True)
class UGraph:
    n: int
    edges: frozenset
    adj: tuple = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, edges: Iterable = ()):
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            _check_pair(n, u, v)
            norm.add((min(u, v), max(u, v)))
        adj = [[] for _ in range(n)]
        for u, v in sorted(norm):
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "adj", tuple(tuple(sorted(a)) for a in adj))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self, u: int) -> tuple:
        return self.adj[u]

    def induced(self, vertices: Iterable[int]) -> tuple["UGraph", list]:
        old = sorted(set(vertices))
        new = {v: i for i, v in enumerate(old)}
        edges = [(new[u], new[v]) for u, v in self.edges if u in new and v in new]
        return UGraph(len(old), edges), old

    def to_digraph(self) -> Digraph:
        """Bidirected version: each edge becomes two opposite arcs."""
        return Digraph(self.n, [a for u, v in self.edges for a in ((u, v), (v, u))])

    @property
    def directed(self) -> bool:
        return False


class _Multi:
    directed = True

    def __init__(self, n: int, mult: dict):
        clean = {}
        for (u, v), m in mult.items():
            u, v, m = int(u), int(v), int(m)
            _check_pair(n, u, v)
            if m < 0:
                raise ValidationError("negative multiplicity")
            if m == 0:
                continue
            key = self._key(u, v)
            clean[key] = clean.get(key, 0) + m
        self.n = int(n)
        self.mult = clean

    @staticmethod
    def _key(u, v):
        return (u, v)

    def __eq__(self, other):
        return type(self) is type(other) and self.n == other.n and self.mult == other.mult

    def __hash__(self):
        return hash((type(self).__name__, self.n, frozenset(self.mult.items())))

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, mult={self.mult!r})"

    def total(self) -> int:
        return sum(self.mult.values())

    def support_connected(self, extra: Iterable[int] = ()) -> bool:
        """Underlying undirected support plus `extra` vertices is connected."""
        adj: dict = {}
        for u, v in self.mult:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        nodes = set(adj) | set(extra)
        if not nodes:
            return True
        start = next(iter(nodes))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen == nodes


class MultiDigraph(_Multi):
    directed = True

    def out_degree(self) -> list:
        deg = [0] * self.n
        for (u, _), m in self.mult.items():
            deg[u] += m
        return deg

    def in_degree(self) -> list:
        deg = [0] * self.n
        for (_, v), m in self.mult.items():
            deg[v] += m
        return deg


class MultiUGraph(_Multi):
    directed = False

    @staticmethod
    def _key(u, v):
        return (min(u, v), max(u, v))

    def degree(self) -> list:
        deg = [0] * self.n
        for (u, v), m in self.mult.items():
            deg[u] += m
            deg[v] += m
        return deg


def scc(g: Digraph) -> list:
    """Strongly connected components, ordered so that no arc points backwards."""
    n = g.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list = []
    comps: list = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            nbrs = g.out[v]
            if i < len(nbrs):
                work[-1] = (v, i + 1)
                w = nbrs[i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.add(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))
    # Tarjan emits sinks first.
    comps.reverse()
    return comps


def connected_components(g: UGraph) -> list:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: UGraph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def maximal_matching(g: UGraph) -> list:
    """Greedy maximal matching scanning edges in sorted order."""
    used = set()
    matching = []
    for u, v in sorted(g.edges):
        if u not in used and v not in used:
            used.update((u, v))
            matching.append((u, v))
    return matching


def vertex_cover_from(matching: Iterable) -> frozenset:
    return frozenset(x for e in matching for x in e)


def euler_trail_exists(g: MultiDigraph, s: int, t: int) -> bool:
    """Directed Euler (s,t)-trail criterion by degree balance and connectivity."""
    if not g.mult:
        return s == t
    out_d, in_d = g.out_degree(), g.in_degree()
    for v in range(g.n):
        bal = out_d[v] - in_d[v]
        want = 0
        if s != t:
            want = 1 if v == s else (-1 if v == t else 0)
        if bal != want:
            return False
    return g.support_connected((s, t))


def euler_trail_exists_undirected(g: MultiUGraph, s: int, t: int) -> bool:
    """Undirected criterion: s, t odd when distinct, all else even, connected."""
    if not g.mult:
        return s == t
    deg = g.degree()
    for v in range(g.n):
        odd = deg[v] % 2 == 1
        if odd != (s != t and v in (s, t)):
            return False
    return g.support_connected((s, t))


def euler_trail_construct(g, s: int, t: int, cap: int):
    """Hierholzer walk using every arc/edge exactly its multiplicity.

    Returns the vertex list, or TooLarge when the walk would have more than
    `cap` arcs.
    """
    ok = euler_trail_exists(g, s, t) if g.directed else euler_trail_exists_undirected(g, s, t)
    if not ok:
        raise PreconditionViolated("no Euler trail between the given endpoints")
    if g.total() > cap:
        return TooLarge
    keys = sorted(g.mult)
    remaining = [g.mult[e] for e in keys]
    inc = [[] for _ in range(g.n)]
    for idx, (u, v) in enumerate(keys):
        inc[u].append(idx)
        if not g.directed:
            inc[v].append(idx)
    ptr = [0] * g.n
    stack = [s]
    trail = []
    while stack:
        v = stack[-1]
        lst = inc[v]
        while ptr[v] < len(lst) and remaining[lst[ptr[v]]] == 0:
            ptr[v] += 1
        if ptr[v] == len(lst):
            trail.append(stack.pop())
            continue
        idx = lst[ptr[v]]
        remaining[idx] -= 1
        a, b = keys[idx]
        stack.append(b if a == v else a)
    trail.reverse()
    return trail
