import random

import pytest

from sfvs import (
    CapacityError,
    Graph,
    Instance,
    ModulatorDecomposition,
    SolverConfig,
    brute_force_max_tforest,
    build_cotree,
    certify_solution,
    cograph_subset_signature,
    cotree_graph,
    induced_subgraph,
    is_t_forest,
    max_tforest_cograph,
    max_tforest_with_modulator,
    random_cotree,
)
from sfvs.graph import InputError
from helpers import random_weights

DP = SolverConfig(backend="dp")


def unit(graph, terminals):
    return Instance.unit(graph, terminals)


def test_k3_single_terminal():
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    inst = unit(g, [0])
    sol = max_tforest_cograph(build_cotree(g), inst)
    assert sol.weight == 2 and sol.certified
    assert sol.weight == brute_force_max_tforest(inst).weight


def test_c4_single_terminal():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    inst = unit(g, [0])
    sol = max_tforest_cograph(build_cotree(g), inst)
    assert sol.weight == 3
    assert sol.weight == brute_force_max_tforest(inst).weight


def test_no_terminals_keeps_everything():
    rng = random.Random(2)
    g = cotree_graph(random_cotree(9, rng))
    inst = unit(g, [])
    sol = max_tforest_cograph(build_cotree(g), inst)
    assert sol.forest_mask == g.full_mask


def test_cotree_instance_mismatch():
    g = Graph(3, [(0, 1)])
    other = Graph(4, [(0, 1)])
    with pytest.raises(InputError):
        max_tforest_cograph(build_cotree(g), unit(other, []))


def test_cograph_dp_matches_brute_force():
    for seed in range(250):
        rng = random.Random(seed)
        n = rng.randint(1, 13)
        tree = random_cotree(n, rng)
        g = cotree_graph(tree)
        if seed % 2:
            inst = Instance.unit(g, rng.getrandbits(n))
        else:
            inst = Instance.weighted(g, rng.getrandbits(n), random_weights(rng, n))
        got = max_tforest_cograph(tree, inst)
        want = brute_force_max_tforest(inst)
        assert got.weight == want.weight
        assert got.forest_mask == want.forest_mask  # identical tie-break


def test_feasibility_predicate_equals_checker_small():
    for seed in range(60):
        rng = random.Random(seed)
        n = rng.randint(1, 7)
        tree = random_cotree(n, rng)
        g = cotree_graph(tree)
        t_mask = rng.getrandbits(n)
        inst = Instance.unit(g, t_mask)
        for subset in range(1 << n):
            feasible = cograph_subset_signature(tree, inst, subset) is not None
            sub, old = induced_subgraph(g, subset)
            t_sub = 0
            for new, o in enumerate(old):
                if t_mask >> o & 1:
                    t_sub |= 1 << new
            assert feasible == is_t_forest(sub, t_sub)


def test_modulator_empty_equals_cograph_dp():
    for seed in range(40):
        rng = random.Random(seed)
        n = rng.randint(1, 10)
        tree = random_cotree(n, rng)
        g = cotree_graph(tree)
        inst = Instance.unit(g, rng.getrandbits(n))
        dec = ModulatorDecomposition.build(g, 0)
        a = max_tforest_with_modulator(dec, inst, DP)
        b = max_tforest_cograph(tree, inst)
        assert a.weight == b.weight


def test_triangle_with_modulator_vertex():
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    inst = unit(g, [0])
    dec = ModulatorDecomposition.build(g, 0b001)  # remainder is an edge
    sol = max_tforest_with_modulator(dec, inst, DP)
    assert sol.weight == 2


def test_c5_with_adjacent_modulator_pair():
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    inst = unit(g, [0])
    dec = ModulatorDecomposition.build(g, 0b00011)  # remainder is a path
    sol = max_tforest_with_modulator(dec, inst, DP)
    assert sol.weight == brute_force_max_tforest(inst).weight == 4


def test_modulator_dp_matches_brute_force():
    from sfvs.cotree import is_cograph

    rng = random.Random(77)
    trials = 0
    while trials < 300:
        n = rng.randint(1, 10)
        g = Graph(
            n,
            [
                (u, v)
                for u in range(n)
                for v in range(u + 1, n)
                if rng.random() < rng.choice((0.3, 0.6))
            ],
        )
        p_mask = 0
        for v in rng.sample(range(n), min(rng.randint(0, 4), n)):
            p_mask |= 1 << v
        sub, _ = induced_subgraph(g, g.full_mask & ~p_mask)
        if sub.n and not is_cograph(sub):
            continue
        t_mask = rng.getrandbits(n)
        if trials % 3 == 0:
            inst = Instance.weighted(g, t_mask, random_weights(rng, n))
        else:
            inst = Instance.unit(g, t_mask)
        dec = ModulatorDecomposition.build(g, p_mask)
        got = max_tforest_with_modulator(dec, inst, DP)
        want = brute_force_max_tforest(inst)
        assert got.weight == want.weight, (g.adj, bin(p_mask), bin(t_mask))
        assert got.forest_mask == want.forest_mask
        trials += 1


def test_backends_agree():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(1, 9)
        g = cotree_graph(random_cotree(n, rng))
        inst = Instance.unit(g, rng.getrandbits(n))
        dec = ModulatorDecomposition.build(g, 0)
        a = max_tforest_with_modulator(dec, inst, SolverConfig(backend="brute"))
        b = max_tforest_with_modulator(dec, inst, SolverConfig(backend="dp"))
        c = max_tforest_with_modulator(dec, inst, SolverConfig(backend="auto"))
        assert a.forest_mask == b.forest_mask == c.forest_mask


def test_modulator_capacity_limit():
    g = Graph(6, [(0, 1)])
    inst = unit(g, [])
    dec = ModulatorDecomposition.build(g, 0b111111)
    with pytest.raises(CapacityError):
        max_tforest_with_modulator(dec, inst, SolverConfig(max_modulator=3))


def test_reachable_signatures_satisfy_field_implications():
    """x implies e and t; e implies count 2+; t implies count >= 1."""
    for seed in range(80):
        rng = random.Random(seed)
        n = rng.randint(1, 9)
        tree = random_cotree(n, rng)
        g = cotree_graph(tree)
        inst = Instance.unit(g, rng.getrandbits(n))
        for subset in range(1 << n):
            sig = cograph_subset_signature(tree, inst, subset)
            if sig is None:
                continue
            if sig.x:
                assert sig.e and sig.t
            if sig.e:
                assert sig.c == 2
            if sig.t:
                assert sig.c >= 1


def test_solutions_are_certified():
    rng = random.Random(8)
    for _ in range(30):
        n = rng.randint(1, 10)
        tree = random_cotree(n, rng)
        g = cotree_graph(tree)
        inst = Instance.unit(g, rng.getrandbits(n))
        sol = max_tforest_cograph(tree, inst)
        assert sol.certified
        assert certify_solution(inst, sol.forest_mask) is not None
