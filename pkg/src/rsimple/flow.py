"""Integral max-flow and min-cost flow with lower bounds.

All quantities are Python ints, so capacities of any size are exact.
Min-cost flow uses the capacity-scaling variant of successive shortest
paths, so the number of augmentations grows with log(capacity) rather than
with the capacity itself.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field

INF = None  # marker for an unbounded upper capacity


class _Infeasible:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infeasible"

    def __bool__(self):
        return False


Infeasible = _Infeasible()


@dataclass
class Arc:
    u: int
    v: int
    lower: int = 0
    upper: int | None = INF
    cost: int = 0


@dataclass
class FlowNetwork:
    n: int
    arcs: list = field(default_factory=list)

    def add_node(self) -> int:
        self.n += 1
        return self.n - 1

    def add_arc(self, u, v, upper=INF, cost=0, lower=0) -> int:
        self.arcs.append(Arc(u, v, int(lower), None if upper is None else int(upper), int(cost)))
        return len(self.arcs) - 1

    def infinity(self, extra: int = 0) -> int:
        """Finite stand-in for an unbounded capacity: every finite bound summed, plus one."""
        total = extra
        for a in self.arcs:
            total += a.lower
            if a.upper is not None:
                total += a.upper
        return total + 1

    def uppers(self, extra: int = 0) -> list:
        big = self.infinity(extra)
        return [big if a.upper is None else a.upper for a in self.arcs]


class _Residual:
    __slots__ = ("n", "head", "cap", "cost", "adj")

    def __init__(self, n):
        self.n = n
        self.head = []
        self.cap = []
        self.cost = []
        self.adj = [[] for _ in range(n)]

    def add(self, u, v, cap, cost):
        idx = len(self.head)
        self.head += [v, u]
        self.cap += [cap, 0]
        self.cost += [cost, -cost]
        self.adj[u].append(idx)
        self.adj[v].append(idx + 1)
        return idx


def _scaling_min_cost(res: _Residual, excess: list) -> None:
    """Route all excess to deficits at minimum cost (capacity scaling).

    The caller guarantees feasibility, e.g. with an expensive hub node.
    """
    n = res.n
    head, cap, cost, adj = res.head, res.cap, res.cost, res.adj
    tail = [0] * len(head)
    for u in range(n):
        for idx in adj[u]:
            tail[idx] = u
    pi = [0] * n
    top = max([abs(e) for e in excess] + cap + [1])
    delta = 1 << (top.bit_length() - 1)
    while delta >= 1:
        for idx in range(len(head)):
            if cap[idx] >= delta:
                u, v = tail[idx], head[idx]
                if cost[idx] - pi[u] + pi[v] < 0:
                    amt = cap[idx]
                    cap[idx] -= amt
                    cap[idx ^ 1] += amt
                    excess[u] -= amt
                    excess[v] += amt
        while True:
            src = next((i for i in range(n) if excess[i] >= delta), None)
            if src is None:
                break
            if not any(e <= -delta for e in excess):
                break
            dist = [None] * n
            pred = [-1] * n
            dist[src] = 0
            heap = [(0, src)]
            done = [False] * n
            target = None
            while heap:
                d, u = heapq.heappop(heap)
                if done[u]:
                    continue
                done[u] = True
                if excess[u] <= -delta:
                    target = u
                    break
                for idx in adj[u]:
                    if cap[idx] < delta:
                        continue
                    v = head[idx]
                    nd = d + cost[idx] - pi[u] + pi[v]
                    if dist[v] is None or nd < dist[v]:
                        dist[v] = nd
                        pred[v] = idx
                        heapq.heappush(heap, (nd, v))
            if target is None:
                raise RuntimeError("scaling phase found no augmenting path")
            dt = dist[target]
            for i in range(n):
                if done[i] and dist[i] is not None:
                    pi[i] -= min(dist[i], dt)
                else:
                    pi[i] -= dt
            v = target
            while v != src:
                idx = pred[v]
                cap[idx] -= delta
                cap[idx ^ 1] += delta
                v = tail[idx]
            excess[src] -= delta
            excess[target] += delta
        delta >>= 1


def _solve_bounded(n: int, arcs: list, uppers: list, supply: list):
    """Min-cost flow meeting node supplies; returns (cost, flows) or Infeasible."""
    excess = list(supply)
    res = _Residual(n + 1)
    hub = n
    ids = []
    for a, up in zip(arcs, uppers):
        if a.lower > up:
            return Infeasible
        excess[a.u] -= a.lower
        excess[a.v] += a.lower
        ids.append(res.add(a.u, a.v, up - a.lower, a.cost))
    excess.append(0)
    big_cost = (n + 2) * max([abs(a.cost) for a in arcs] + [1]) + 1
    big_cap = sum(abs(e) for e in excess) + sum(uppers) + 1
    art = []
    for i in range(n):
        art.append(res.add(i, hub, big_cap, big_cost))
        art.append(res.add(hub, i, big_cap, big_cost))
    _scaling_min_cost(res, excess)
    if any(res.cap[idx ^ 1] > 0 for idx in art):
        return Infeasible
    flows = [a.lower + res.cap[idx ^ 1] for a, idx in zip(arcs, ids)]
    total = sum(f * a.cost for f, a in zip(flows, arcs))
    return total, flows


def min_cost_flow(net: FlowNetwork, s: int, t: int, F: int):
    """Cheapest integral s-t flow of value exactly F; (cost, flows) or Infeasible."""
    F = int(F)
    supply = [0] * net.n
    supply[s] += F
    supply[t] -= F
    return _solve_bounded(net.n, net.arcs, net.uppers(F), supply)


def max_value_circulation_with_lower_bounds(net: FlowNetwork, objective: list):
    """Feasible circulation maximizing total flow on `objective` arcs.

    Arc costs in `net` are ignored. Returns (value, flows) or Infeasible.
    """
    obj = set(objective)
    arcs = [Arc(a.u, a.v, a.lower, a.upper, -1 if i in obj else 0) for i, a in enumerate(net.arcs)]
    out = _solve_bounded(net.n, arcs, net.uppers(), [0] * net.n)
    if out is Infeasible:
        return Infeasible
    _, flows = out
    return sum(flows[i] for i in obj), flows


def max_flow(net: FlowNetwork, s: int, t: int):
    """Maximum integral s-t flow (Dinic). Lower bounds must be zero."""
    if any(a.lower for a in net.arcs):
        raise ValueError("max_flow needs zero lower bounds")
    res = _Residual(net.n)
    ids = [res.add(a.u, a.v, up, 0) for a, up in zip(net.arcs, net.uppers())]
    head, cap, adj = res.head, res.cap, res.adj
    value = 0
    while s != t:
        level = [-1] * net.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for idx in adj[u]:
                if cap[idx] > 0 and level[head[idx]] < 0:
                    level[head[idx]] = level[u] + 1
                    queue.append(head[idx])
        if level[t] < 0:
            break
        it = [0] * net.n

        def push(u, limit):
            if u == t:
                return limit
            while it[u] < len(adj[u]):
                idx = adj[u][it[u]]
                v = head[idx]
                if cap[idx] > 0 and level[v] == level[u] + 1:
                    got = push(v, min(limit, cap[idx]))
                    if got:
                        cap[idx] -= got
                        cap[idx ^ 1] += got
                        return got
                it[u] += 1
            return 0

        while True:
            got = push(s, sum(cap) + 1)
            if not got:
                break
            value += got
    flows = [res.cap[idx ^ 1] for idx in ids]
    return value, flows
