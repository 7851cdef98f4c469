import random

from sfvs import (
    Graph,
    Instance,
    GeneratorSpec,
    connected_components,
    generate,
    is_clique,
)
from sfvs.graph import popcount
from sfvs.parts import best_2part, best_3part, best_le1_part
from helpers import restricted_part_optima

TRIANGLE = Graph(3, [(0, 1), (1, 2), (0, 2)])
STAR = Graph(4, [(0, 1), (0, 2), (0, 3)])
C4 = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
C5 = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])


def test_le1_no_terminals_keeps_all():
    inst = Instance.unit(Graph(5, [(0, 1), (2, 3)]), [])
    r = best_le1_part(inst)
    assert r.solution.forest_mask == inst.graph.full_mask


def test_le1_star_drops_center():
    r = best_le1_part(Instance.unit(STAR, [0]))
    assert r.solution.weight == 3
    assert r.solution.forest == (1, 2, 3)


def test_le1_triangle():
    r = best_le1_part(Instance.unit(TRIANGLE, [0]))
    assert r.solution.weight == 2


def test_2part_c4():
    r = best_2part(Instance.unit(C4, [0]))
    assert r.solution.weight == 3
    assert r.info.center == 0 and sorted(r.info.neighbours) == [1, 3]


def test_2part_triangle_none():
    assert best_2part(Instance.unit(TRIANGLE, [0])) is None


def test_2part_c5():
    r = best_2part(Instance.unit(C5, [0]))
    assert r.solution.weight == 4


def test_3part_star_whole():
    r = best_3part(Instance.unit(STAR, [0]))
    assert r.solution.weight == 4
    assert r.info.full is False


def test_3part_spider_full_branch():
    spider = Graph(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)])
    r = best_3part(Instance.unit(spider, [0]))
    assert r.solution.weight == 7
    assert r.info.full is True


def test_3part_triangle_none():
    assert best_3part(Instance.unit(TRIANGLE, [0])) is None


def _promise_instances(count, max_n, weighted, seed0):
    made = 0
    seed = seed0
    while made < count:
        rng = random.Random(seed)
        spec = GeneratorSpec(
            "sp1p4_free_filtered",
            n=rng.randint(2, max_n),
            seed=seed,
            s=2,
            weighted=weighted,
            t_density=rng.choice((0.25, 0.5, 0.8)),
        )
        seed += 1
        yield generate(spec)
        made += 1


def test_part_ops_match_restricted_oracles():
    ops = {"le1": best_le1_part, "two": best_2part, "three": best_3part}
    for idx, inst in enumerate(_promise_instances(1000, 12, weighted=True, seed0=400)):
        want = restricted_part_optima(inst)
        for kind, op in ops.items():
            got = op(inst)
            have = got.solution.weight if got is not None else None
            assert have == want[kind], (idx, kind, have, want[kind], inst.graph.adj)


def test_separation_structure_of_certified_candidates():
    """Deleting the center from its component leaves one component per
    center neighbour, each holding a different neighbour."""
    collected = []
    for inst in _promise_instances(60, 9, weighted=False, seed0=900):
        for op in (best_2part, best_3part):
            op(inst, sink=lambda cand, i=inst: collected.append((i, cand)))
    assert collected
    for inst, cand in collected:
        u = cand.info.center
        fmask = cand.solution.forest_mask
        comp_u = next(
            c for c in connected_components(inst.graph, fmask) if c >> u & 1
        )
        pieces = connected_components(inst.graph, comp_u & ~(1 << u))
        kept_neighbours = [v for v in cand.info.neighbours if fmask >> v & 1]
        assert len(pieces) == len(kept_neighbours)
        for piece in pieces:
            inside = [v for v in kept_neighbours if piece >> v & 1]
            assert len(inside) == 1


def _clique_spiders(count, seed0):
    """Center u joined to v1,v2,v3, each vi absorbed into its own clique:
    these make the full 3-part branch fire, and they are (2P1+P4)-free."""
    from sfvs import find_induced_sp1_p4

    for seed in range(seed0, seed0 + count):
        rng = random.Random(seed)
        edges = [(0, 1), (0, 2), (0, 3)]
        nxt = 4
        groups = []
        for v in (1, 2, 3):
            size = rng.randint(1, 2)
            members = [v] + list(range(nxt, nxt + size))
            nxt += size
            groups.append(members)
            for i, a in enumerate(members):
                for b in members[i + 1 :]:
                    edges.append((a, b))
        g = Graph(nxt, edges)
        assert find_induced_sp1_p4(g, 2) is None
        t_extra = 0
        if rng.random() < 0.4:
            t_extra = 1 << rng.randrange(4, nxt)
        yield Instance.unit(g, (1 << 0) | t_extra)


def test_full_3part_candidates_are_clique_unions():
    """On promise inputs a full 3-part candidate is its center component and
    the component splits into cliques around the neighbours."""
    hits = []
    instances = list(_clique_spiders(25, 12000))
    instances.extend(_promise_instances(60, 9, weighted=False, seed0=1500))
    for inst in instances:
        best_3part(
            inst,
            sink=lambda cand, i=inst: hits.append((i, cand))
            if cand.info.full
            else None,
        )
    assert hits  # the suite must actually exercise the full branch
    for inst, cand in hits:
        u = cand.info.center
        fmask = cand.solution.forest_mask
        comp_u = next(
            c for c in connected_components(inst.graph, fmask) if c >> u & 1
        )
        assert comp_u == fmask  # the whole candidate is one component
        for piece in connected_components(inst.graph, comp_u & ~(1 << u)):
            assert is_clique(inst.graph, piece)


def test_candidate_degree_contracts():
    for inst in _promise_instances(40, 8, weighted=False, seed0=2500):
        got2 = best_2part(inst)
        if got2 is not None:
            u = got2.info.center
            deg = popcount(inst.graph.adj_mask[u] & got2.solution.forest_mask)
            assert deg == 2
        got3 = best_3part(inst)
        if got3 is not None:
            u = got3.info.center
            deg = popcount(inst.graph.adj_mask[u] & got3.solution.forest_mask)
            assert deg == 3
