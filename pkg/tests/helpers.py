"""Shared oracles and enumerators for the test suite.

Everything here is deliberately naive: these are the independent
implementations the fast code is differentially tested against.
"""

from __future__ import annotations

import random
from fractions import Fraction

from sfvs import Graph, Instance, bits, subset_is_t_forest
from sfvs.graph import popcount


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_weights(rng: random.Random, n: int, max_num: int = 9, max_den: int = 6):
    return [Fraction(rng.randint(1, max_num), rng.randint(1, max_den)) for _ in range(n)]


def edge_count_inside(g: Graph, keep_mask: int) -> int:
    """Edges of g with both endpoints in keep_mask, by brute pair scan."""
    count = 0
    for u in range(g.n):
        if not keep_mask >> u & 1:
            continue
        for v in g.adj[u]:
            if v > u and keep_mask >> v & 1:
                count += 1
    return count


def brute_separator_weight(g: Graph, t1: int, t2: int, weights) -> Fraction:
    """Minimum total weight over all vertex subsets separating t1 from t2."""
    from sfvs.flowcut import cut_separates

    others = [v for v in range(g.n) if v not in (t1, t2)]
    best = None
    for mask in range(1 << len(others)):
        sel = 0
        for i, v in enumerate(others):
            if mask >> i & 1:
                sel |= 1 << v
        if cut_separates(g, t1, t2, sel):
            w = sum((weights[v] for v in bits(sel)), Fraction(0))
            if best is None or w < best:
                best = w
    assert best is not None  # deleting every non-terminal always separates
    return best


def restricted_part_optima(inst: Instance) -> dict[str, Fraction | None]:
    """Brute-force optima over T-forests of each part shape, in one sweep.

    'le1': at most one kept terminal, of kept-degree <= 1;
    'two' / 'three': exactly one kept terminal of kept-degree 2 / 3.
    """
    g, t = inst.graph, inst.t_mask
    best: dict[str, Fraction | None] = {"le1": None, "two": None, "three": None}
    for mask in range(1 << inst.n):
        if not subset_is_t_forest(g, mask, t):
            continue
        kept_t = mask & t
        cnt = popcount(kept_t)
        kind = None
        if cnt == 0:
            kind = "le1"
        elif cnt == 1:
            u = kept_t.bit_length() - 1
            deg = popcount(g.adj_mask[u] & mask)
            if deg <= 1:
                kind = "le1"
            elif deg == 2:
                kind = "two"
            elif deg == 3:
                kind = "three"
        if kind is None:
            continue
        w = inst.weight_of(mask)
        if best[kind] is None or w > best[kind]:
            best[kind] = w
    return best


def core_mask(inst: Instance, forest_mask: int, s: int) -> int:
    """Vertices of the kept set with at most 2s-1 neighbours inside it."""
    out = 0
    for v in bits(forest_mask):
        if popcount(inst.graph.adj_mask[v] & forest_mask) <= 2 * s - 1:
            out |= 1 << v
    return out


def has_independent_subset(g: Graph, allowed: int, size: int) -> bool:
    from sfvs.cotree import _independent_set

    return _independent_set(g, allowed, size) is not None


def restricted_core_incomplete_optimum(inst: Instance, s: int) -> Fraction | None:
    """Brute-force optimum over T-forests whose core holds an independent
    set of size s."""
    best = None
    for mask in range(1 << inst.n):
        if not subset_is_t_forest(inst.graph, mask, inst.t_mask):
            continue
        if not has_independent_subset(inst.graph, core_mask(inst, mask, s), s):
            continue
        w = inst.weight_of(mask)
        if best is None or w > best:
            best = w
    return best


def all_cographs_up_to(max_n: int):
    """Every cograph with 1..max_n vertices, one labeled representative per
    isomorphism class, via canonical cotree enumeration.

    A canonical form is either a leaf or (kind, multiset of child forms)
    where no child has the same root kind; enumerating integer partitions
    with multiset-monotone children yields each class exactly once.
    """
    leaf = ("leaf",)
    forms: dict[int, list[tuple]] = {1: [leaf]}

    def parts_with_min(total: int, minimum: int):
        if total == 0:
            yield ()
            return
        for first in range(minimum, total + 1):
            for rest in parts_with_min(total - first, first):
                yield (first, *rest)

    for n in range(2, max_n + 1):
        found: list[tuple] = []
        for kind in ("union", "join"):
            for partition in parts_with_min(n, 1):
                if len(partition) < 2:
                    continue
                options = [
                    [f for f in forms[size] if f[0] != kind] for size in partition
                ]

                def choose(idx: int, prev: tuple | None, acc: list):
                    if idx == len(partition):
                        found.append((kind, tuple(acc)))
                        return
                    for form in options[idx]:
                        # within equal-size blocks keep children sorted to
                        # avoid emitting the same multiset twice
                        if (
                            prev is not None
                            and idx > 0
                            and partition[idx] == partition[idx - 1]
                            and form < acc[-1]
                        ):
                            continue
                        acc.append(form)
                        choose(idx + 1, form, acc)
                        acc.pop()

                choose(0, None, [])
        forms[n] = found

    def realize(form: tuple) -> Graph:
        edges: list[tuple[int, int]] = []
        counter = [0]

        def build(f: tuple) -> list[int]:
            if f[0] == "leaf":
                v = counter[0]
                counter[0] += 1
                return [v]
            groups = [build(child) for child in f[1]]
            if f[0] == "join":
                for i, ga in enumerate(groups):
                    for gb in groups[i + 1 :]:
                        edges.extend((a, b) for a in ga for b in gb)
            return [v for grp in groups for v in grp]

        vertices = build(form)
        return Graph(len(vertices), edges)

    for n in range(1, max_n + 1):
        for form in forms[n]:
            yield realize(form)
