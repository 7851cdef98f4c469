"""Cograph recognition, cotree construction and induced-pattern search.

A cograph (P4-free graph) decomposes recursively into disjoint unions and
joins of smaller cographs; the cotree records that decomposition with leaf /
union / join nodes.  Internal nodes are binarized by a left-deep fold in
child order, children ordered by smallest contained vertex, so construction
is deterministic.

`find_induced_sp1_p4` searches for an induced copy of sP1+P4 (s pairwise
non-adjacent vertices plus an induced 4-vertex path, with no edges between
the two parts); it is the class validator for the solvers' preconditions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, bit_list, bits, connected_components

LEAF = 0
UNION = 1
JOIN = 2


@dataclass(eq=False)
class CotreeNode:
    kind: int
    vertex: int = -1
    left: "CotreeNode | None" = None
    right: "CotreeNode | None" = None
    leaf_mask: int = 0


@dataclass(eq=False)
class Cotree:
    """Binary cotree realizing a graph: u,v adjacent iff their lowest common
    ancestor is a join node."""

    root: CotreeNode
    n: int

    def postorder(self) -> list[CotreeNode]:
        order: list[CotreeNode] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            order.append(node)
            if node.kind != LEAF:
                stack.append(node.left)
                stack.append(node.right)
        order.reverse()
        return order


class NotCographError(Exception):
    """Raised when cotree construction meets an induced P4; carries it."""

    def __init__(self, p4: tuple[int, int, int, int]):
        super().__init__(f"graph contains an induced P4 {p4}")
        self.p4 = p4


def _fold(kind: int, parts: list[CotreeNode]) -> CotreeNode:
    node = parts[0]
    for nxt in parts[1:]:
        node = CotreeNode(kind, left=node, right=nxt, leaf_mask=node.leaf_mask | nxt.leaf_mask)
    return node


def _co_components(g: Graph, within: int) -> list[int]:
    """Components of the complement of the induced subgraph on *within*."""
    comps: list[int] = []
    todo = within
    while todo:
        start = todo & -todo
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= within & ~g.adj_mask[v] & ~(1 << v)
            frontier = nxt & ~comp
            comp |= frontier
        comps.append(comp)
        todo &= ~comp
    return comps


def _find_p4_within(g: Graph, within: int) -> tuple[int, int, int, int]:
    """Locate an induced P4 a-b-c-d inside *within*.  Scans the middle edge
    (b,c) and picks a in N(b)\\N[c], d in N(c)\\N[b] with a,d non-adjacent."""
    for b in bit_list(within):
        for c in bits(g.adj_mask[b] & within):
            a_cands = g.adj_mask[b] & within & ~g.adj_mask[c] & ~(1 << c)
            if not a_cands:
                continue
            d_all = g.adj_mask[c] & within & ~g.adj_mask[b] & ~(1 << b)
            if not d_all:
                continue
            for a in bits(a_cands):
                d_cands = d_all & ~g.adj_mask[a] & ~(1 << a)
                if d_cands:
                    d = (d_cands & -d_cands).bit_length() - 1
                    return (a, b, c, d)
    raise AssertionError("no induced P4 found although decomposition is stuck")


def build_cotree(g: Graph) -> Cotree:
    """Build a binarized cotree of g, or raise NotCographError with a P4.

    Complement-decomposition recursion: a disconnected part is a union over
    its components, a co-disconnected part is a join over its co-components,
    and a part connected in both senses with >= 2 vertices contains a P4.
    """
    if g.n == 0:
        raise ValueError("cotree of the empty graph is undefined")

    def rec(within: int) -> CotreeNode:
        if within & (within - 1) == 0:
            return CotreeNode(LEAF, vertex=within.bit_length() - 1, leaf_mask=within)
        comps = connected_components(g, within)
        if len(comps) > 1:
            return _fold(UNION, [rec(c) for c in comps])
        cocomps = _co_components(g, within)
        if len(cocomps) > 1:
            return _fold(JOIN, [rec(c) for c in cocomps])
        raise NotCographError(_find_p4_within(g, within))

    return Cotree(rec(g.full_mask), g.n)


def is_cograph(g: Graph) -> bool:
    if g.n == 0:
        return True
    try:
        build_cotree(g)
        return True
    except NotCographError:
        return False


def cotree_graph(tree: Cotree) -> Graph:
    """Materialize the graph a cotree realizes (leaf vertices keep their ids)."""
    n = tree.n
    adj = [0] * (max((node.vertex for node in tree.postorder() if node.kind == LEAF), default=-1) + 1)
    if len(adj) < n:
        adj.extend([0] * (n - len(adj)))
    for node in tree.postorder():
        if node.kind == JOIN:
            lm, rm = node.left.leaf_mask, node.right.leaf_mask
            for v in bits(lm):
                adj[v] |= rm
            for v in bits(rm):
                adj[v] |= lm
    edges = [(u, v) for u in range(len(adj)) for v in bits(adj[u]) if v > u]
    return Graph(len(adj), edges)


# ---------------------------------------------------------------------------
# Induced sP1+P4 search


@dataclass(frozen=True)
class PatternWitness:
    """Vertices realizing sP1+P4: the s isolated vertices, then the path."""

    isolated: tuple[int, ...]
    path: tuple[int, int, int, int]

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.isolated + self.path


def _iter_p4s(g: Graph):
    full = g.full_mask
    for b in range(g.n):
        for c in g.adj[b]:
            a_cands = g.adj_mask[b] & ~g.adj_mask[c] & ~(1 << c)
            if not a_cands:
                continue
            d_all = g.adj_mask[c] & ~g.adj_mask[b] & ~(1 << b) & full
            if not d_all:
                continue
            for a in bits(a_cands):
                for d in bits(d_all & ~g.adj_mask[a] & ~(1 << a)):
                    yield (a, b, c, d)


def _independent_set(g: Graph, allowed: int, s: int) -> int | None:
    """Smallest-first search for an independent set of size s inside allowed;
    returns its mask or None.  Exponential only in s."""
    if s == 0:
        return 0
    for v in bits(allowed):
        above = allowed & ~((1 << (v + 1)) - 1)
        sub = _independent_set(g, above & ~g.adj_mask[v], s - 1)
        if sub is not None:
            return (1 << v) | sub
    return None


def find_induced_sp1_p4(g: Graph, s: int) -> PatternWitness | None:
    """Exhaustively search for an induced sP1+P4; None when g is free of it."""
    if s < 0:
        raise ValueError("s must be >= 0")
    for a, b, c, d in _iter_p4s(g):
        if s == 0:
            return PatternWitness((), (a, b, c, d))
        closed = (1 << a) | (1 << b) | (1 << c) | (1 << d)
        closed |= g.adj_mask[a] | g.adj_mask[b] | g.adj_mask[c] | g.adj_mask[d]
        iso = _independent_set(g, g.full_mask & ~closed, s)
        if iso is not None:
            return PatternWitness(tuple(bits(iso)), (a, b, c, d))
    return None
