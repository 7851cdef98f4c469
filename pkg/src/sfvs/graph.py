"""Core graph, instance and solution types.

Vertices are dense integers 0..n-1 and every vertex set in this package is a
Python int used as a bitmask (bit v set <=> vertex v in the set).  Weights are
exact rationals (fractions.Fraction), so optimality comparisons never go
through floating point.  All types are immutable after construction and all
operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class InputError(ValueError):
    """Malformed input: bad vertex ids, nonpositive weights, parse errors."""


class CapacityError(RuntimeError):
    """Instance exceeds a configured or hard size limit."""


# ---------------------------------------------------------------------------
# Bitmask helpers


def mask_of(vertices: Iterable[int] | int) -> int:
    """Normalize an iterable of vertex ids (or an existing mask) to a bitmask."""
    if isinstance(vertices, int):
        return vertices
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Iterate the set bits of *mask* in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_list(mask: int) -> list[int]:
    return list(bits(mask))


def popcount(mask: int) -> int:
    return mask.bit_count()


def set_lex_less(a: int, b: int) -> bool:
    """Compare two vertex sets by their ascending vertex lists, lexicographically.

    Equivalent to tuple(sorted(a)) < tuple(sorted(b)) but works directly on
    bitmasks: find the lowest differing bit; if it belongs to *a*, then *a* is
    smaller unless *b* is a strict prefix of *a* below that bit.
    """
    d = a ^ b
    if d == 0:
        return False
    low = d & -d
    if a & low:
        return b > low
    return a < low


# ---------------------------------------------------------------------------
# Graph


class Graph:
    """Simple undirected graph in canonical form.

    Neighbor lists are sorted ascending and duplicate-free; adjacency is also
    available as one bitmask per vertex for set-algebra queries (built lazily,
    so very large graphs that only need list traversals avoid the cost).
    Self-loops are rejected; duplicate edges collapse.
    """

    __slots__ = ("n", "m", "adj", "full_mask", "_adj_mask")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InputError(f"negative vertex count {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj = tuple(tuple(sorted(s)) for s in nbrs)
        self.m = sum(len(a) for a in self.adj) // 2
        self.full_mask = (1 << n) - 1
        self._adj_mask: tuple[int, ...] | None = None

    @property
    def adj_mask(self) -> tuple[int, ...]:
        if self._adj_mask is None:
            masks = []
            for a in self.adj:
                m = 0
                for v in a:
                    m |= 1 << v
                masks.append(m)
            self._adj_mask = tuple(masks)
        return self._adj_mask

    def has_edge(self, u: int, v: int) -> bool:
        if self._adj_mask is not None:
            return bool(self._adj_mask[u] >> v & 1)
        a = self.adj[u]
        if len(a) > 8:
            lo, hi = 0, len(a)
            while lo < hi:
                mid = (lo + hi) // 2
                if a[mid] < v:
                    lo = mid + 1
                else:
                    hi = mid
            return lo < len(a) and a[lo] == v
        return v in a

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) with u < v, in lexicographic order."""
        for u in range(self.n):
            for v in self.adj[u]:
                if v > u:
                    yield (u, v)

    def complement_adj_mask(self, v: int) -> int:
        return self.full_mask & ~self.adj_mask[v] & ~(1 << v)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def induced_subgraph(g: Graph, keep: Iterable[int] | int) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on *keep*, plus the id mapping.

    Returns (sub, old_ids) where old_ids[new_id] = old_id; new ids are assigned
    in ascending old-id order, so the mapping old->new is order-preserving.
    """
    keep_mask = mask_of(keep)
    if keep_mask & ~g.full_mask:
        raise InputError("keep set contains vertices outside the graph")
    old_ids = tuple(bits(keep_mask))
    new_of_old = {old: new for new, old in enumerate(old_ids)}
    edges = []
    for new_u, old_u in enumerate(old_ids):
        rest = g.adj_mask[old_u] & keep_mask
        for old_v in bits(rest):
            if old_v > old_u:
                edges.append((new_u, new_of_old[old_v]))
    return Graph(len(old_ids), edges), old_ids


def connected_components(g: Graph, within: Iterable[int] | int | None = None) -> list[int]:
    """Connected components as bitmasks, ordered by smallest contained vertex.

    With *within* given, components are those of the induced subgraph on that
    set (vertex ids unchanged).
    """
    allowed = g.full_mask if within is None else mask_of(within)
    comps: list[int] = []
    todo = allowed
    while todo:
        start = todo & -todo
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj_mask[v]
            frontier = nxt & allowed & ~comp
            comp |= frontier
        comps.append(comp)
        todo &= ~comp
    return comps


def is_independent(g: Graph, s: Iterable[int] | int) -> bool:
    s_mask = mask_of(s)
    for v in bits(s_mask):
        if g.adj_mask[v] & s_mask:
            return False
    return True


def is_clique(g: Graph, s: Iterable[int] | int) -> bool:
    s_mask = mask_of(s)
    for v in bits(s_mask):
        if (s_mask & ~(1 << v)) & ~g.adj_mask[v]:
            return False
    return True


# ---------------------------------------------------------------------------
# Instances and solutions


@dataclass(frozen=True)
class Instance:
    """A graph together with a terminal set T and positive rational weights."""

    graph: Graph
    t_mask: int
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.t_mask & ~self.graph.full_mask:
            raise InputError("terminal set contains vertices outside the graph")
        if len(self.weights) != self.graph.n:
            raise InputError("weight vector length does not match vertex count")
        for v, w in enumerate(self.weights):
            if w <= 0:
                raise InputError(f"weight of vertex {v} is {w}; weights must be positive")

    @classmethod
    def unit(cls, graph: Graph, terminals: Iterable[int] | int = 0) -> "Instance":
        return cls(graph, mask_of(terminals), (Fraction(1),) * graph.n)

    @classmethod
    def weighted(
        cls,
        graph: Graph,
        terminals: Iterable[int] | int,
        weights: Sequence[Fraction | int],
    ) -> "Instance":
        return cls(graph, mask_of(terminals), tuple(Fraction(w) for w in weights))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def unit_weights(self) -> bool:
        one = Fraction(1)
        return all(w == one for w in self.weights)

    def weight_of(self, s: Iterable[int] | int) -> Fraction:
        total = Fraction(0)
        for v in bits(mask_of(s)):
            total += self.weights[v]
        return total

    @property
    def total_weight(self) -> Fraction:
        return self.weight_of(self.graph.full_mask)

    def restrict(self, keep: Iterable[int] | int) -> tuple["Instance", tuple[int, ...]]:
        """Sub-instance induced on *keep*; terminals and weights carry over."""
        sub, old_ids = induced_subgraph(self.graph, keep)
        t_sub = 0
        for new, old in enumerate(old_ids):
            if self.t_mask >> old & 1:
                t_sub |= 1 << new
        w_sub = tuple(self.weights[old] for old in old_ids)
        return Instance(sub, t_sub, w_sub), old_ids


@dataclass(frozen=True)
class Solution:
    """A vertex set F kept as a forest-side solution, with its exact weight.

    `certified` is set only after the T-forest checker accepted (forest, T).
    The deleted side V \\ F is the complement view.
    """

    n: int
    forest_mask: int
    weight: Fraction
    certified: bool = False

    @classmethod
    def from_mask(cls, inst: Instance, forest_mask: int, certified: bool = False) -> "Solution":
        return cls(inst.n, forest_mask, inst.weight_of(forest_mask), certified)

    @property
    def deleted_mask(self) -> int:
        return ((1 << self.n) - 1) & ~self.forest_mask

    @property
    def forest(self) -> tuple[int, ...]:
        return tuple(bits(self.forest_mask))

    @property
    def deleted(self) -> tuple[int, ...]:
        return tuple(bits(self.deleted_mask))


def better_solution(a: Solution | None, b: Solution | None) -> Solution | None:
    """Deterministic max: larger weight wins, ties go to the lexicographically
    smaller sorted vertex list.  Used as the reduction everywhere so that
    parallel and sequential evaluation return identical answers."""
    if a is None:
        return b
    if b is None:
        return a
    if a.weight != b.weight:
        return a if a.weight > b.weight else b
    if set_lex_less(b.forest_mask, a.forest_mask):
        return b
    return a
