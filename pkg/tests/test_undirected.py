import pytest

from rsimple.errors import PreconditionViolated
from rsimple.graph import UGraph
from rsimple.oracle import brute_rsimple_max
from rsimple.undirected import (ABSENT, FIT_FULL, FIT_HALF, GENERAL, SPECIAL, ColoredUGraph,
                                FitSpec, UndirSolverParams, colorful_wrapper, edge_fit_exists,
                                enumerate_occurrence_sequences, matching_shortcut,
                                solve_undirected, special_colorful, tw2_component_max,
                                walk_fit_exists, walk_tw2_partition, walk_tw2_value)
from rsimple.colorings import family, INJECTIVE

EDGE = ColoredUGraph(2, [(0, 1)], [1, 2])
P3 = UGraph(3, [(0, 1), (1, 2)])
C4 = UGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
STAR3 = UGraph(4, [(0, 1), (0, 2), (0, 3)])


def test_solve_undirected_examples():
    assert solve_undirected(P3, 7, 3)
    assert not solve_undirected(P3, 8, 3)
    assert solve_undirected(UGraph(2, [(0, 1)]), 4, 2)


@pytest.mark.parametrize("pipeline", [GENERAL, SPECIAL])
def test_pipelines_agree_with_oracle_on_star(pipeline):
    r = 4
    best = brute_rsimple_max(STAR3, r, 20)
    for k in range(1, 16):
        params = UndirSolverParams(pipeline=pipeline)
        assert solve_undirected(STAR3, k, r, params) == (best >= k)


def test_special_needs_large_r():
    with pytest.raises(PreconditionViolated):
        solve_undirected(P3, 9, 2, UndirSolverParams(pipeline=SPECIAL))


def test_colorful_wrapper():
    fam = family(4, 4, INJECTIVE)
    assert colorful_wrapper(C4, 8, 2, 7, fam)
    assert not colorful_wrapper(C4, 9, 2, 7, fam)
    assert colorful_wrapper(UGraph(2, [(0, 1)]), 2, 1, 3, family(2, 2, INJECTIVE))


def test_occurrence_sequences():
    assert len(list(enumerate_occurrence_sequences(2, 3, [1, 2]))) == 13
    assert list(enumerate_occurrence_sequences(2, 0, [1, 2])) == [(0, 0)]
    assert len(list(enumerate_occurrence_sequences(3, 1, [2]))) == 2


def test_walk_tw2_partition():
    assert walk_tw2_partition(EDGE, 4, 2, {1: 2, 2: 2})
    assert not walk_tw2_partition(EDGE, 5, 2, {1: 2, 2: 2})
    assert not walk_tw2_partition(EDGE, 2, 2, {})
    assert walk_tw2_value(EDGE, 2, {}) is ABSENT


def test_tw2_component_max():
    tri = ColoredUGraph(3, [(0, 1), (1, 2), (0, 2)], [1, 2, 3])
    assert tw2_component_max(tri, {1, 2, 3}, 0, {}, 2) == 6
    assert tw2_component_max(ColoredUGraph(1, [], [1]), {1}, 0, {}, 2) == 0
    assert tw2_component_max(EDGE, {1, 2}, 0, {}, 1) == 2
    with pytest.raises(PreconditionViolated):
        tw2_component_max(EDGE, {2}, 0, {}, 1)


def test_matching_shortcut():
    p5 = UGraph(5, [(i, i + 1) for i in range(4)])
    verdict, cover = matching_shortcut(p5, 9, 4)
    assert verdict == "cover" and len(cover) <= 4
    six = UGraph(6, [(0, 1), (2, 3), (4, 5), (1, 2), (3, 4)])
    assert matching_shortcut(six, 12, 4)[0] == "yes"
    assert brute_rsimple_max(six, 4, 12) >= 12
    assert matching_shortcut(UGraph(2, [(0, 1)]), 4, 3) == ("cover", frozenset({0, 1}))


def test_special_colorful():
    assert special_colorful(EDGE, 3, 2, {0, 1}, 5)
    assert not special_colorful(EDGE, 5, 2, {0, 1}, 5)
    star = ColoredUGraph(4, STAR3.edges, [1, 2, 3, 4])
    assert special_colorful(star, 9, 4, {0}, 10)


def test_walk_fit():
    assert walk_fit_exists(EDGE, {1: 2, 2: 2})
    assert not walk_fit_exists(EDGE, {1: 2})
    assert walk_fit_exists(EDGE, {1: 1, 2: 2})


def test_edge_fit_variants():
    spec = FitSpec(EDGE, {1: 1, 2: 1}, frozenset({0, 1}), 3, 2, FIT_HALF)
    assert edge_fit_exists(spec)
    spec4 = FitSpec(EDGE, {1: 1, 2: 1}, frozenset({0, 1}), 4, 2, FIT_HALF)
    assert not edge_fit_exists(spec4)
    # counting each H edge as a full visit accepts k=4: the walk u,v,u,v exists
    full4 = FitSpec(EDGE, {1: 1, 2: 1}, frozenset({0, 1}), 4, 2, FIT_FULL)
    assert edge_fit_exists(full4)
    assert brute_rsimple_max(UGraph(2, [(0, 1)]), 2, 10) == 4
    bare = ColoredUGraph(2, [], [1, 2])
    assert edge_fit_exists(FitSpec(bare, {1: 1, 2: 1}, frozenset(), 2, 2))
    with pytest.raises(PreconditionViolated):
        edge_fit_exists(FitSpec(EDGE, {1: 3}, frozenset(), 3, 2))


def test_jobs_give_same_answer():
    g = UGraph(7, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 6)])
    best = brute_rsimple_max(g, 3, 30)
    for k in (best, best + 1):
        assert solve_undirected(g, k, 3, UndirSolverParams(jobs=2)) == (best >= k)
