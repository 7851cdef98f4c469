"""Linear-time T-forest recognition with a T-cycle witness on rejection.

A T-cycle is a cycle containing a terminal; a graph is a T-forest when it has
no T-cycle.  A vertex lies on a cycle exactly when one of its biconnected
blocks has three or more vertices (equivalently: when it is incident to a
non-bridge edge), so the check reduces to block / bridge computation.

Two independent implementations are kept on purpose and differentially
tested against each other and against a naive cycle enumerator:

* block-based (`t_cycle_witness`), which also extracts a witness cycle,
* contraction-based (`t_forest_by_contraction`), which contracts every
  component of F - T and tests the resulting capped multigraph for cycles.

`is_t_forest` dispatches to a flat-array bridge scan on large inputs; the
answer is always identical to the block-based check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, Instance, Solution, bits, connected_components, induced_subgraph, mask_of

_FAST_PATH_SIZE = 20000  # n + m above which the flat-array scan is used


@dataclass(frozen=True)
class TCycleWitness:
    """A cycle (as a vertex sequence) together with one terminal on it."""

    cycle: tuple[int, ...]
    t_vertex: int


def validate_witness(g: Graph, t_mask: int, witness: TCycleWitness) -> bool:
    """Mechanical witness check: distinct vertices, consecutive adjacency
    (cyclically), length >= 3, and the flagged vertex is a terminal."""
    cyc = witness.cycle
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        return False
    if witness.t_vertex not in cyc or not (t_mask >> witness.t_vertex & 1):
        return False
    return all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


# ---------------------------------------------------------------------------
# Block-based check with witness extraction


def _blocks(g: Graph):
    """Biconnected blocks as vertex masks, via an iterative low-link DFS."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    ptr = [0] * n
    parent = [-1] * n
    edge_stack: list[tuple[int, int]] = []
    blocks: list[int] = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [root]
        while stack:
            v = stack[-1]
            nbrs = g.adj[v]
            if ptr[v] < len(nbrs):
                u = nbrs[ptr[v]]
                ptr[v] += 1
                if disc[u] == -1:
                    parent[u] = v
                    disc[u] = low[u] = timer
                    timer += 1
                    edge_stack.append((v, u))
                    stack.append(u)
                elif u != parent[v] and disc[u] < disc[v]:
                    edge_stack.append((v, u))
                    if disc[u] < low[v]:
                        low[v] = disc[u]
            else:
                stack.pop()
                if not stack:
                    continue
                p = stack[-1]
                if low[v] < low[p]:
                    low[p] = low[v]
                if low[v] >= disc[p]:
                    # pop one block: edges down to and including (p, v)
                    block = 0
                    while True:
                        a, b = edge_stack.pop()
                        block |= (1 << a) | (1 << b)
                        if (a, b) == (p, v):
                            break
                    blocks.append(block)
    return blocks


def _cycle_through(g: Graph, block: int, t: int) -> TCycleWitness:
    """Inside a biconnected block with >= 3 vertices, build a cycle through t:
    take two block-neighbors of t and connect them by a path avoiding t."""
    nbrs = list(bits(g.adj_mask[t] & block))
    start, goal = nbrs[0], nbrs[1]
    allowed = block & ~(1 << t)
    prev = {start: -1}
    frontier = [start]
    while goal not in prev:
        nxt = []
        for v in frontier:
            for u in bits(g.adj_mask[v] & allowed):
                if u not in prev:
                    prev[u] = v
                    nxt.append(u)
        frontier = nxt
    path = [goal]
    while path[-1] != start:
        path.append(prev[path[-1]])
    return TCycleWitness(cycle=(t, *reversed(path)), t_vertex=t)


def t_cycle_witness(g: Graph, t_mask: int) -> TCycleWitness | None:
    """Return a T-cycle of g, or None when g is a T-forest.

    Block-based: a terminal is on a cycle iff it lies in a block with at
    least three vertices; single-edge blocks are bridges and acyclic.
    """
    t_mask = mask_of(t_mask)
    for block in _blocks(g):
        hit = block & t_mask
        if hit and block.bit_count() >= 3:
            return _cycle_through(g, block, (hit & -hit).bit_length() - 1)
    return None


# ---------------------------------------------------------------------------
# Flat-array bridge scan for large graphs


def _t_forest_bridges(g: Graph, t_mask: int) -> bool:
    """Accept iff every terminal has only bridge edges: build a CSR adjacency
    with edge ids, run one iterative low-link DFS marking non-bridge edges."""
    import numpy as np

    n = g.n
    degs = np.fromiter((len(a) for a in g.adj), dtype=np.int64, count=n)
    start_arr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degs, out=start_arr[1:])
    total = int(start_arr[n])
    from itertools import chain

    to_arr = np.fromiter(chain.from_iterable(g.adj), dtype=np.int64, count=total)
    src_arr = np.repeat(np.arange(n, dtype=np.int64), degs)
    keys = np.where(src_arr < to_arr, src_arr * n + to_arr, to_arr * n + src_arr)
    _, eid_arr = np.unique(keys, return_inverse=True)
    m = total // 2
    start = start_arr.tolist()
    flat_to = to_arr.tolist()
    flat_eid = eid_arr.tolist()
    disc = [-1] * n
    low = [0] * n
    ptr = start[:]
    parent_edge = [-1] * n
    bridge = [False] * m
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [root]
        while stack:
            v = stack[-1]
            i = ptr[v]
            if i < start[v + 1]:
                ptr[v] = i + 1
                u = flat_to[i]
                e = flat_eid[i]
                if disc[u] == -1:
                    parent_edge[u] = e
                    disc[u] = low[u] = timer
                    timer += 1
                    stack.append(u)
                elif e != parent_edge[v] and disc[u] < low[v]:
                    low[v] = disc[u]
            else:
                stack.pop()
                if stack:
                    p = stack[-1]
                    if low[v] < low[p]:
                        low[p] = low[v]
                    if low[v] > disc[p]:
                        bridge[parent_edge[v]] = True
    for t in bits(t_mask):
        for i in range(start[t], start[t + 1]):
            if not bridge[flat_eid[i]]:
                return False
    return True


def is_t_forest(g: Graph, t_mask: int) -> bool:
    """Decide whether g has no cycle through a terminal.  O(n + m)."""
    t_mask = mask_of(t_mask)
    if t_mask == 0:
        return True
    if g.n + g.m > _FAST_PATH_SIZE:
        return _t_forest_bridges(g, t_mask)
    return t_cycle_witness(g, t_mask) is None


# ---------------------------------------------------------------------------
# Contraction-based check (independent twin)


@dataclass(frozen=True)
class ContractionSketch:
    """Quotient of a graph where each component of F - T becomes one node.

    Nodes are ('t', v) for terminals and ('c', i) for contracted components;
    edge multiplicities are capped at 2.  The original graph is a T-forest iff
    the quotient is acyclic, where any multi-edge counts as a cycle.
    """

    nodes: tuple[tuple[str, int], ...]
    multiplicities: dict[tuple[tuple[str, int], tuple[str, int]], int]

    def acyclic(self) -> bool:
        if any(mult >= 2 for mult in self.multiplicities.values()):
            return False
        index = {node: i for i, node in enumerate(self.nodes)}
        uf = list(range(len(self.nodes)))

        def find(x: int) -> int:
            while uf[x] != x:
                uf[x] = uf[uf[x]]
                x = uf[x]
            return x

        for a, b in self.multiplicities:
            ra, rb = find(index[a]), find(index[b])
            if ra == rb:
                return False
            uf[ra] = rb
        return True


def contract_non_t(g: Graph, t_mask: int) -> ContractionSketch:
    t_mask = mask_of(t_mask)
    comps = connected_components(g, g.full_mask & ~t_mask)
    comp_of: dict[int, int] = {}
    for i, comp in enumerate(comps):
        for v in bits(comp):
            comp_of[v] = i
    nodes: list[tuple[str, int]] = [("t", v) for v in bits(t_mask)]
    nodes.extend(("c", i) for i in range(len(comps)))
    mult: dict[tuple[tuple[str, int], tuple[str, int]], int] = {}
    for t in bits(t_mask):
        for u in g.adj[t]:
            if t_mask >> u & 1:
                if u < t:
                    continue
                key = (("t", t), ("t", u))
            else:
                key = (("t", t), ("c", comp_of[u]))
            mult[key] = min(2, mult.get(key, 0) + 1)
    return ContractionSketch(tuple(nodes), mult)


def t_forest_by_contraction(g: Graph, t_mask: int) -> bool:
    return contract_non_t(g, t_mask).acyclic()


def certify_solution(inst: Instance, forest_mask: int) -> Solution | None:
    """Check a candidate vertex set against the instance; None on rejection.

    The induced subgraph on the candidate is built and run through the
    checker, so a returned Solution always carries certified=True honestly.
    """
    sub, old_ids = induced_subgraph(inst.graph, forest_mask)
    t_sub = 0
    for new, old in enumerate(old_ids):
        if inst.t_mask >> old & 1:
            t_sub |= 1 << new
    if not is_t_forest(sub, t_sub):
        return None
    return Solution.from_mask(inst, forest_mask, certified=True)
