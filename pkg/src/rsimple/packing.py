"""p-Set (r,q)-Packing: reduction rules, representative families, exact solve, kernel.

Pick q members of a multiset of sets (copies count separately) so that no
element lies in more than r picked members.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .errors import BudgetExceeded, FieldTooSmall, ValidationError


@dataclass(frozen=True)
class PackingInstance:
    """Universe [0, n), distinct sets with multiplicities, and p, q, r."""

    n: int
    sets: tuple
    mult: tuple
    p: int
    q: int
    r: int

    def __post_init__(self):
        sets = tuple(frozenset(int(x) for x in s) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        object.__setattr__(self, "mult", tuple(int(m) for m in self.mult))
        if len(self.sets) != len(self.mult):
            raise ValidationError("sets and mult differ in length")
        if self.r < 1:
            raise ValidationError("r must be positive")
        for s, m in zip(self.sets, self.mult):
            if m < 1:
                raise ValidationError("multiplicities must be positive")
            if len(s) > self.p:
                raise ValidationError(f"set {sorted(s)} has more than p={self.p} elements")
            if any(not 0 <= x < self.n for x in s):
                raise ValidationError(f"set {sorted(s)} leaves the universe")

    @classmethod
    def from_sets(cls, n: int, sets, p: int, q: int, r: int) -> "PackingInstance":
        """Build from a plain list in which repeated sets are copies."""
        counts = Counter(frozenset(s) for s in sets)
        keys = sorted(counts, key=lambda s: (len(s), sorted(s)))
        return cls(n, tuple(keys), tuple(counts[s] for s in keys), p, q, r)

    @property
    def kappa(self) -> int:
        return -(-self.p * self.q // self.r)

    @property
    def size(self) -> int:
        return sum(self.mult)

    def expanded_sets(self) -> list:
        return [s for s, m in zip(self.sets, self.mult) for _ in range(m)]

    def normalized(self) -> "PackingInstance":
        """Merge duplicate set entries and sort."""
        counts: Counter = Counter()
        for s, m in zip(self.sets, self.mult):
            counts[s] += m
        keys = sorted(counts, key=lambda s: (len(s), sorted(s)))
        return PackingInstance(self.n, tuple(keys), tuple(counts[s] for s in keys),
                               self.p, self.q, self.r)


def _compact(inst: PackingInstance, sets, mult, q) -> PackingInstance:
    """Relabel the elements in use to 0..n'-1."""
    used = sorted({x for s in sets for x in s})
    new = {x: i for i, x in enumerate(used)}
    return PackingInstance(len(used), tuple(frozenset(new[x] for x in s) for s in sets),
                           tuple(mult), inst.p, q, inst.r).normalized()


def rule1(inst: PackingInstance) -> PackingInstance:
    """Drop elements in at most r set copies; drop emptied sets, lowering q per copy."""
    load: Counter = Counter()
    for s, m in zip(inst.sets, inst.mult):
        for x in s:
            load[x] += m
    sets, mult, q = [], [], inst.q
    for s, m in zip(inst.sets, inst.mult):
        kept = frozenset(x for x in s if load[x] > inst.r)
        if kept:
            sets.append(kept)
            mult.append(m)
        else:
            q -= m
    return _compact(inst, sets, mult, q)


# Representative families ------------------------------------------------------


@dataclass(frozen=True)
class RepFamilyCertificate:
    selected: tuple  # indices into the input family
    bound: int


def _next_prime(x: int) -> int:
    x = max(x, 2)
    while any(x % d == 0 for d in range(2, math.isqrt(x) + 1)):
        x += 1
    return x


def _det_mod(rows: list, prime: int) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    det = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] % prime), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = det * a[col][col] % prime
        inv = pow(a[col][col], prime - 2, prime)
        for i in range(col + 1, n):
            f = a[i][col] * inv % prime
            if f:
                a[i] = [(x - f * y) % prime for x, y in zip(a[i], a[col])]
    return det % prime


def representative_family(H, kappa: int, prime: int | None = None) -> RepFamilyCertificate:
    """Subfamily of the p-uniform family H that is kappa-representative.

    Each element e gets the moment vector (1, a_e, a_e^2, ...) of length
    p + kappa over GF(prime); a p-set maps to its vector of p x p minors.
    A is disjoint from a kappa-set B iff the wedge of A and B is non-zero,
    which is linear in A's minors, so any basis of their span represents H.
    """
    H = [frozenset(s) for s in H]
    if not H:
        return RepFamilyCertificate((), math.comb(kappa, 0))
    p = len(H[0])
    if any(len(s) != p for s in H):
        raise ValueError("family must be p-uniform")
    bound = math.comb(p + kappa, p)
    elems = sorted(set().union(*H))
    if prime is None:
        prime = _next_prime(max(len(elems), 2) ** 2 + 1)
    if prime <= len(elems):
        raise FieldTooSmall(f"GF({prime}) cannot separate {len(elems)} elements")
    value = {x: i + 1 for i, x in enumerate(elems)}
    dim = p + kappa
    row_sets = list(combinations(range(dim), p))
    basis: dict = {}  # pivot column -> reduced row
    chosen = []
    for idx, s in enumerate(H):
        cols = [[pow(value[x], i, prime) for x in sorted(s)] for i in range(dim)]
        vec = [_det_mod([cols[i] for i in rows], prime) for rows in row_sets]
        for piv, row in basis.items():
            if vec[piv]:
                f = vec[piv]
                vec = [(x - f * y) % prime for x, y in zip(vec, row)]
        lead = next((i for i, x in enumerate(vec) if x), None)
        if lead is None:
            continue
        inv = pow(vec[lead], prime - 2, prime)
        vec = [x * inv % prime for x in vec]
        for piv, row in list(basis.items()):
            if row[lead]:
                f = row[lead]
                basis[piv] = [(x - f * y) % prime for x, y in zip(row, vec)]
        basis[lead] = vec
        chosen.append(idx)
    if len(chosen) > bound:
        raise AssertionError("rank exceeds the exterior power dimension")
    return RepFamilyCertificate(tuple(chosen), bound)


def rule2(inst: PackingInstance, kappa: int | None = None) -> PackingInstance:
    """Keep only the members of q successive disjoint representative families.

    Copies beyond min(r, q) of a set are dropped first: no solution uses
    more. Short sets are padded with fresh dummy elements per copy.
    """
    if kappa is None:
        kappa = inst.kappa
    copies = []
    for s, m in zip(inst.sets, inst.mult):
        copies += [s] * min(m, inst.r, max(inst.q, 0))
    if not copies or inst.p == 0:
        return _compact(inst, copies, [1] * len(copies), inst.q)
    nxt = inst.n
    padded = []
    for s in copies:
        extra = inst.p - len(s)
        padded.append(s | frozenset(range(nxt, nxt + extra)))
        nxt += extra
    remaining = list(range(len(copies)))
    kept = []
    for _ in range(max(inst.q, 0)):
        if not remaining:
            break
        cert = representative_family([padded[i] for i in remaining], kappa)
        pick = [remaining[j] for j in cert.selected]
        kept += pick
        taken = set(pick)
        remaining = [i for i in remaining if i not in taken]
    kept.sort()
    return _compact(inst, [copies[i] for i in kept], [1] * len(kept), inst.q)


def _trivial(inst: PackingInstance):
    """Answer when it is forced, else None."""
    if inst.q <= 0:
        return True
    if inst.size < inst.q:
        return False
    if inst.q <= inst.r:
        return True
    return None


def reduce_instance(inst: PackingInstance) -> PackingInstance:
    """Apply both rules until nothing changes."""
    cur = inst.normalized()
    while True:
        cur = rule1(cur)
        if _trivial(cur) is not None:
            return cur
        nxt = rule1(rule2(cur))
        if nxt == cur:
            return cur
        cur = nxt


def ground_set_bound(inst: PackingInstance) -> int:
    """kappa * 4^kappa, the bound on the universe of a fully reduced instance."""
    return inst.kappa * 4 ** inst.kappa


def solve_packing(inst: PackingInstance, budget: int = 10_000_000) -> bool:
    """Exact answer: reduce, then DFS over per-type counts with load pruning."""
    red = reduce_instance(inst)
    forced = _trivial(red)
    if forced is not None:
        return forced
    if red.n >= ground_set_bound(red):
        raise AssertionError("reduced universe exceeds kappa * 4^kappa")
    types = sorted(zip(red.sets, red.mult), key=lambda t: -len(t[0]))
    r, q = red.r, red.q
    caps = [min(m, r, q) for _, m in types]
    suffix = [0] * (len(types) + 1)
    for i in range(len(types) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + caps[i]
    load = [0] * red.n
    steps = [0]

    def dfs(i, need):
        steps[0] += 1
        if steps[0] > budget:
            raise BudgetExceeded("packing search budget exhausted")
        if need == 0:
            return True
        if i == len(types) or suffix[i] < need:
            return False
        s = types[i][0]
        room = min([r - load[x] for x in s] + [caps[i], need])
        for x_e in range(room, -1, -1):
            for x in s:
                load[x] += x_e
            ok = dfs(i + 1, need - x_e)
            for x in s:
                load[x] -= x_e
            if ok:
                return True
        return False

    return dfs(0, q)


def kernelize(inst: PackingInstance) -> dict:
    """Reduced instance with every multiplicity capped at r, plus its bit size.

    Bits count a multiplicity table indexed by all subsets of size at most p
    of the reduced universe, ceil(log2(r+1)) bits per entry.
    """
    red = reduce_instance(inst)
    mult = [min(m, red.r) for m in red.mult]
    width = max(1, math.ceil(math.log2(red.r + 1)))
    slots = sum(math.comb(red.n, j) for j in range(red.p + 1))
    return {
        "universe": red.n,
        "p": red.p,
        "q": red.q,
        "r": red.r,
        "sets": [sorted(s) for s in red.sets],
        "mult": mult,
        "bits": slots * width,
    }
