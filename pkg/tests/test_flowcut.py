import random
from fractions import Fraction

import pytest

from sfvs import CutInstance, Graph, InfeasibleCutError, min_weight_vertex_cut
from sfvs.flowcut import cut_separates
from helpers import brute_separator_weight, random_graph, random_weights


def F(x):
    return Fraction(x)


def test_path_single_cut_vertex():
    g = Graph(3, [(0, 1), (1, 2)])
    res = min_weight_vertex_cut(CutInstance(g, 0, 2, {1: F(5)}))
    assert res.cut == (1,) and res.weight == 5


def test_diamond_needs_both():
    g = Graph(4, [(0, 1), (1, 2), (0, 3), (3, 2)])
    res = min_weight_vertex_cut(CutInstance(g, 0, 2, {1: F(1), 3: F(2)}))
    assert res.cut == (1, 3) and res.weight == 3


def test_already_disconnected():
    g = Graph(4, [(0, 1), (2, 3)])
    res = min_weight_vertex_cut(CutInstance(g, 0, 3, {1: F(1), 2: F(1)}))
    assert res.cut == () and res.weight == 0


def test_two_paths_derived_example():
    # routes 0-1-2 and 0-3-4-2 with w(1)=3, w(3)=1, w(4)=4
    g = Graph(5, [(0, 1), (1, 2), (0, 3), (3, 4), (4, 2)])
    weights = {1: F(3), 3: F(1), 4: F(4)}
    res = min_weight_vertex_cut(CutInstance(g, 0, 2, weights))
    assert brute_separator_weight(g, 0, 2, {1: F(3), 3: F(1), 4: F(4), 0: F(1), 2: F(1)}) == F(4)
    assert res.cut == (1, 3) and res.weight == 4


def test_terminal_guards():
    g = Graph(3, [(0, 1), (1, 2)])
    with pytest.raises(InfeasibleCutError):
        CutInstance(g, 1, 1, {0: F(1), 2: F(1)})
    adjacent = Graph(2, [(0, 1)])
    with pytest.raises(InfeasibleCutError):
        CutInstance(adjacent, 0, 1, {})


def test_flow_matches_brute_force_on_randoms():
    rng = random.Random(17)
    trials = 0
    while trials < 250:
        n = rng.randint(2, 10)
        g = random_graph(rng, n, rng.choice((0.25, 0.45, 0.7)))
        t1, t2 = rng.sample(range(n), 2) if n >= 2 else (0, 0)
        if t1 == t2 or g.has_edge(t1, t2):
            continue
        weights = {v: w for v, w in enumerate(random_weights(rng, n)) if v not in (t1, t2)}
        res = min_weight_vertex_cut(CutInstance(g, t1, t2, weights))
        assert not (res.cut_mask >> t1 & 1) and not (res.cut_mask >> t2 & 1)
        assert cut_separates(g, t1, t2, res.cut_mask)
        assert sum((weights[v] for v in res.cut), Fraction(0)) == res.weight
        assert res.weight == brute_separator_weight(g, t1, t2, weights)
        trials += 1
