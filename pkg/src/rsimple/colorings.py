"""Coloring families standing in for perfect hash families.

A family is perfect for subset size k when every k-subset of the universe
is colored injectively by at least one member.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .errors import BudgetExceeded, InvalidKind

EXHAUSTIVE = "exhaustive"
INJECTIVE = "injective"
RANDOMIZED = "random"

DEFAULT_BUDGET = 1 << 20


def default_trials(n: int, c: int) -> int:
    return math.ceil(math.exp(c) * c * math.log(max(n, 2)))


@dataclass(frozen=True)
class ColoringFamily:
    """Restartable iterable of colorings [0,n) -> [1,c] (tuples of ints)."""

    n: int
    c: int
    kind: str
    trials: int = 0
    seed: int = 0
    members: tuple | None = None

    def __iter__(self):
        if self.members is not None:
            yield from self.members
        elif self.kind == EXHAUSTIVE:
            for f in product(range(1, self.c + 1), repeat=self.n):
                yield f
        elif self.kind == INJECTIVE:
            yield tuple(range(1, self.n + 1))
        else:
            rng = np.random.default_rng(self.seed)
            for _ in range(self.trials):
                yield tuple(int(x) for x in rng.integers(1, self.c + 1, size=self.n))

    def __len__(self):
        if self.members is not None:
            return len(self.members)
        if self.kind == EXHAUSTIVE:
            return self.c**self.n
        if self.kind == INJECTIVE:
            return 1
        return self.trials


def family(n: int, c: int, kind: str, trials: int | None = None, seed: int = 0,
           budget: int = DEFAULT_BUDGET) -> ColoringFamily:
    if c < 1:
        raise InvalidKind("need at least one color")
    if kind == EXHAUSTIVE:
        if c**n > budget:
            raise BudgetExceeded(f"{c}^{n} colorings exceed budget {budget}")
        return ColoringFamily(n, c, EXHAUSTIVE)
    if kind == INJECTIVE:
        if c < n:
            raise InvalidKind(f"injective coloring needs c >= n, got c={c} < n={n}")
        return ColoringFamily(n, c, INJECTIVE)
    if kind == RANDOMIZED:
        if trials is None:
            trials = min(default_trials(n, c), budget)
        return ColoringFamily(n, c, RANDOMIZED, trials=int(trials), seed=int(seed))
    raise InvalidKind(f"unknown coloring kind {kind!r}")


def from_functions(n: int, c: int, functions) -> ColoringFamily:
    """Explicit family, mainly for tests."""
    return ColoringFamily(n, c, "explicit", members=tuple(tuple(f) for f in functions))


def phf_verify(fam: ColoringFamily, k: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Exhaustively check that every k-subset is colored injectively by some member."""
    if k > fam.n:
        return True
    if math.comb(fam.n, k) > budget:
        raise BudgetExceeded("too many subsets to verify")
    pending = set(combinations(range(fam.n), k))
    for f in fam:
        pending = {s for s in pending if len({f[i] for i in s}) < k}
        if not pending:
            return True
    return not pending


def auto_family(n: int, c: int, kind: str | None = None, trials: int | None = None,
                seed: int = 0, budget: int = DEFAULT_BUDGET) -> ColoringFamily:
    """Injective when c >= n, else the requested kind (exhaustive if it fits)."""
    if kind is None:
        if c >= n:
            kind = INJECTIVE
        elif c**n <= budget:
            kind = EXHAUSTIVE
        else:
            kind = RANDOMIZED
    return family(n, c, kind, trials=trials, seed=seed, budget=budget)
