"""Ground-truth brute-force solver and seeded instance generators.

Everything here exists to power differential tests: the solvers in the rest
of the package must agree exactly with `brute_force_max_tforest` on every
generated instance.  Generators are deterministic functions of their spec,
so failures replay bit-identically.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cotree import JOIN, UNION, Cotree, CotreeNode, cotree_graph, find_induced_sp1_p4
from .graph import (
    CapacityError,
    Graph,
    Instance,
    Solution,
    bits,
    popcount,
    set_lex_less,
)

BRUTE_FORCE_CAP = 26
_TABLE_CAP = 20
_CYCLE_BUDGET = 2_000_000


class GenerationError(RuntimeError):
    """Rejection sampling exhausted its retry budget."""


# ---------------------------------------------------------------------------
# Naive T-cycle search (third, definition-level implementation)


def has_t_cycle_naive(g: Graph, t_mask: int) -> bool:
    """Enumerate simple cycles by backtracking and test each against T.

    Exponential; intended for n <= 9 as the definitional oracle behind the
    fast checkers.
    """
    if g.n > 12:
        raise CapacityError("naive cycle enumeration is capped at n <= 12")
    adj = g.adj_mask

    def extend(s: int, path: list[int], path_mask: int) -> bool:
        last = path[-1]
        for w in bits(adj[last] & ~path_mask):
            if w < s:
                continue
            if w == s:
                continue  # found via closing test below
            if adj[w] >> s & 1 and len(path) >= 2 and path[1] < w:
                if (path_mask | (1 << w)) & t_mask:
                    return True
            if extend(s, path + [w], path_mask | (1 << w)):
                return True
        return False

    for s in range(g.n):
        for v1 in g.adj[s]:
            if v1 > s and extend(s, [s, v1], (1 << s) | (1 << v1)):
                return True
    return False


def subset_is_t_forest(g: Graph, s_mask: int, t_mask: int) -> bool:
    """Fast per-subset check: a terminal t in S is on a cycle of G[S] iff two
    of its S-neighbors are connected in S - t."""
    ts = s_mask & t_mask
    if ts == 0:
        return True
    adj = g.adj_mask
    for t in bits(ts):
        rest = s_mask & ~(1 << t)
        nb = adj[t] & rest
        if popcount(nb) < 2:
            continue
        pending = nb
        while pending:
            start = pending & -pending
            comp = start
            frontier = start
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= adj[v]
                frontier = nxt & rest & ~comp
                comp |= frontier
            if popcount(comp & nb) >= 2:
                return False
            pending &= ~comp
    return True


# ---------------------------------------------------------------------------
# Chordless T-cycle enumeration (minimal invalid subsets)


def _minimal_t_cycle_masks(g: Graph, t_mask: int) -> list[int] | None:
    """Vertex masks of chordless cycles intersecting T.

    These are exactly the minimal vertex sets whose induced subgraph has a
    T-cycle: any chord or off-cycle vertex yields a smaller such set.
    Returns None when the work budget is exceeded (degenerate inputs).
    """
    if t_mask == 0:
        return []
    adj = g.adj_mask
    out: list[int] = []
    budget = _CYCLE_BUDGET

    def grow(s: int, v1: int, last: int, path_mask: int, blocked: int) -> bool:
        nonlocal budget
        budget -= 1
        if budget <= 0:
            return False
        above = ~((1 << (s + 1)) - 1)
        cands = adj[last] & ~path_mask & above & ~blocked
        closing = cands & adj[s]
        for w in bits(closing):
            if v1 < w:
                cyc = path_mask | (1 << w)
                if cyc & t_mask:
                    out.append(cyc)
        for w in bits(cands & ~adj[s]):
            if not grow(s, v1, w, path_mask | (1 << w), blocked | adj[last]):
                return False
        return True

    for s in range(g.n):
        for v1 in g.adj[s]:
            if v1 > s:
                if not grow(s, v1, v1, (1 << s) | (1 << v1), 0):
                    return None
    return out


class SubsetTable:
    """Validity and weight of every vertex subset of one instance.

    Having a T-cycle is preserved by adding vertices, so the invalid masks
    are the upward closure of the chordless T-hitting cycles; the closure and
    the subset weights are filled in by n vectorized passes.  Built once per
    instance, then `best_avoiding` answers every reduced sub-instance (those
    are induced subgraphs, hence share the validity predicate).
    """

    def __init__(self, inst: Instance):
        n = inst.n
        if n > _TABLE_CAP:
            raise CapacityError(f"subset table capped at n <= {_TABLE_CAP}")
        self.inst = inst
        self.n = n
        size = 1 << n

        invalid = np.zeros(size, dtype=bool)
        minimal = _minimal_t_cycle_masks(inst.graph, inst.t_mask)
        if minimal is None:
            for mask in range(size):
                invalid[mask] = not subset_is_t_forest(inst.graph, mask, inst.t_mask)
        else:
            if minimal:
                invalid[np.array(minimal, dtype=np.int64)] = True
            idx = np.arange(size, dtype=np.int64)
            for b in range(n):
                has = (idx >> b & 1).astype(bool)
                invalid[has] |= invalid[idx[has] ^ (1 << b)]
        self.invalid = invalid

        scale = math.lcm(*(w.denominator for w in inst.weights)) if n else 1
        scaled = [int(w * scale) for w in inst.weights]
        if sum(scaled) >= 1 << 62:
            raise CapacityError("scaled weights overflow the table's int64 range")
        self.scale = scale
        weights = np.zeros(size, dtype=np.int64)
        idx = np.arange(size, dtype=np.int64)
        for b in range(n):
            has = (idx >> b & 1).astype(bool)
            weights[has] = weights[idx[has] ^ (1 << b)] + scaled[b]
        self._weights = weights
        self._idx = idx

    def is_valid(self, mask: int) -> bool:
        return not bool(self.invalid[mask])

    def best_avoiding(self, forbidden: int = 0) -> Solution:
        """Max-weight valid subset disjoint from *forbidden*, deterministic
        (weight, then lexicographically smallest vertex list)."""
        ok = ~self.invalid
        if forbidden:
            ok = ok & ((self._idx & forbidden) == 0)
        vals = np.where(ok, self._weights, np.int64(-1))
        best = int(vals.max())
        ties = np.nonzero(vals == best)[0]
        mask = int(ties[0])
        for cand in ties[1:]:
            cand = int(cand)
            if set_lex_less(cand, mask):
                mask = cand
        return Solution(self.n, mask, Fraction(best, self.scale), certified=False)


def brute_force_max_tforest_plain(inst: Instance) -> Solution:
    """Reference brute force: plain counting over all subsets, each checked."""
    if inst.n > BRUTE_FORCE_CAP:
        raise CapacityError(f"brute force capped at n <= {BRUTE_FORCE_CAP}")
    g = inst.graph
    best_mask = 0
    best_w = Fraction(0)
    for mask in range(1 << inst.n):
        if not subset_is_t_forest(g, mask, inst.t_mask):
            continue
        w = inst.weight_of(mask)
        if w > best_w or (w == best_w and set_lex_less(mask, best_mask)):
            best_mask, best_w = mask, w
    return Solution(inst.n, best_mask, best_w, certified=True)


def brute_force_max_tforest(inst: Instance) -> Solution:
    """Exact maximum-weight T-forest by exhaustive subset enumeration."""
    if inst.n > BRUTE_FORCE_CAP:
        raise CapacityError(f"brute force capped at n <= {BRUTE_FORCE_CAP}")
    if inst.n <= _TABLE_CAP:
        try:
            sol = SubsetTable(inst).best_avoiding()
            return Solution(sol.n, sol.forest_mask, sol.weight, certified=True)
        except CapacityError:
            pass
    return brute_force_max_tforest_plain(inst)


# ---------------------------------------------------------------------------
# Instance generators

FAMILIES = (
    "random_gnp",
    "random_cograph",
    "cograph_plus_modulator",
    "sp1p4_free_filtered",
    "split_like",
    "petersen_variant",
)


@dataclass(frozen=True)
class GeneratorSpec:
    """Seeded description of a test instance; equal specs generate
    bit-identical instances."""

    family: str
    n: int
    seed: int
    edge_prob: float = 0.5
    modulator: int = 3
    s: int = 2
    t_density: float = 0.35
    weighted: bool = False
    max_weight_num: int = 12
    max_weight_den: int = 8

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 0:
            raise ValueError("n must be >= 0")


def random_cotree(n: int, rng: random.Random) -> Cotree:
    """Random binary cotree on vertices 0..n-1 built by repeated merges."""
    if n <= 0:
        raise ValueError("cotree needs at least one leaf")
    nodes = [CotreeNode(kind=0, vertex=i, leaf_mask=1 << i) for i in range(n)]
    while len(nodes) > 1:
        a = rng.randrange(len(nodes))
        b = rng.randrange(len(nodes) - 1)
        if b >= a:
            b += 1
        a, b = min(a, b), max(a, b)
        right = nodes.pop(b)
        left = nodes.pop(a)
        kind = UNION if rng.random() < 0.5 else JOIN
        nodes.append(
            CotreeNode(kind, left=left, right=right, leaf_mask=left.leaf_mask | right.leaf_mask)
        )
    return Cotree(nodes[0], n)


def _sample_terminals(n: int, rng: random.Random, density: float) -> int:
    t = 0
    for v in range(n):
        if rng.random() < density:
            t |= 1 << v
    return t


def _sample_weights(spec: GeneratorSpec, rng: random.Random) -> tuple[Fraction, ...]:
    if not spec.weighted:
        return (Fraction(1),) * spec.n
    return tuple(
        Fraction(rng.randint(1, spec.max_weight_num), rng.randint(1, spec.max_weight_den))
        for _ in range(spec.n)
    )


def _gnp_edges(n: int, p: float, rng: random.Random) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]


def _petersen_subdivided() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges = [e for e in outer + spokes + inner if e != (0, 1)]
    edges += [(0, 10), (1, 10)]  # vertex 10 subdivides the removed edge
    return Graph(11, edges)


def generate(spec: GeneratorSpec) -> Instance:
    """Build the instance described by *spec* (see GeneratorSpec)."""
    rng = random.Random(spec.seed)
    fam = spec.family
    if fam == "random_gnp":
        g = Graph(spec.n, _gnp_edges(spec.n, spec.edge_prob, rng))
    elif fam == "random_cograph":
        g = cotree_graph(random_cotree(spec.n, rng)) if spec.n else Graph(0)
    elif fam == "cograph_plus_modulator":
        p = min(spec.modulator, spec.n)
        base = spec.n - p
        edges: list[tuple[int, int]] = []
        if base:
            edges.extend(cotree_graph(random_cotree(base, rng)).edges())
        for i in range(base, spec.n):
            for j in range(i + 1, spec.n):
                if rng.random() < 0.5:
                    edges.append((i, j))
            for j in range(base):
                if rng.random() < spec.edge_prob:
                    edges.append((j, i))
        g = Graph(spec.n, edges)
    elif fam == "sp1p4_free_filtered":
        g = None
        for _ in range(2000):
            p = rng.choice((0.3, 0.5, 0.65, 0.8, 0.9))
            cand = Graph(spec.n, _gnp_edges(spec.n, p, rng))
            if find_induced_sp1_p4(cand, spec.s) is None:
                g = cand
                break
        if g is None:
            raise GenerationError(
                f"no (s={spec.s})P1+P4-free graph found within budget for n={spec.n}"
            )
    elif fam == "split_like":
        clique = spec.n // 2
        edges = [(u, v) for u in range(clique) for v in range(u + 1, clique)]
        for u in range(clique, spec.n):
            for v in range(clique):
                if rng.random() < spec.edge_prob:
                    edges.append((v, u))
        g = Graph(spec.n, edges)
    elif fam == "petersen_variant":
        g = _petersen_subdivided()
    else:  # pragma: no cover - guarded by GeneratorSpec
        raise ValueError(fam)

    if fam == "petersen_variant":
        t_mask = 0
        for v in rng.sample(range(g.n), 4):
            t_mask |= 1 << v
        return Instance(g, t_mask, (Fraction(1),) * g.n)

    return Instance(g, _sample_terminals(g.n, rng, spec.t_density), _sample_weights(spec, rng))
