"""Minimum-weight vertex cut between two non-adjacent terminals.

Classic node-splitting reduction to max-flow: every non-terminal vertex v
becomes an arc v_in -> v_out with capacity w(v); every original edge becomes
a pair of arcs of effectively infinite capacity; terminals stay unsplit.
Rational weights are scaled by the common denominator to integers, so the
blocking-flow computation is exact and strongly terminating; the optimum is
unscaled afterwards.  The cut is read off the residual frontier: split arcs
whose tail is reachable from the source and whose head is not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .graph import Graph, InputError, bits, mask_of


class InfeasibleCutError(InputError):
    """Terminals equal or adjacent: no vertex set can separate them."""


@dataclass(frozen=True)
class CutInstance:
    graph: Graph
    t1: int
    t2: int
    weights: Mapping[int, Fraction]

    def __post_init__(self) -> None:
        g = self.graph
        if not (0 <= self.t1 < g.n and 0 <= self.t2 < g.n):
            raise InputError("terminal out of range")
        if self.t1 == self.t2:
            raise InfeasibleCutError("terminals coincide")
        if g.has_edge(self.t1, self.t2):
            raise InfeasibleCutError("terminals are adjacent")
        for v in range(g.n):
            if v in (self.t1, self.t2):
                continue
            if v not in self.weights:
                raise InputError(f"missing weight for vertex {v}")
            if self.weights[v] <= 0:
                raise InputError(f"weight of vertex {v} must be positive")


@dataclass(frozen=True)
class CutResult:
    cut_mask: int
    weight: Fraction

    @property
    def cut(self) -> tuple[int, ...]:
        return tuple(bits(self.cut_mask))


class _Dinic:
    """Max-flow with BFS level graph + DFS blocking flow, integer capacities."""

    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_arc(self, u: int, v: int, cap: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(cap)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            queue = [s]
            for v in queue:
                for e in self.head[v]:
                    if self.cap[e] > 0 and level[self.to[e]] == -1:
                        level[self.to[e]] = level[v] + 1
                        queue.append(self.to[e])
            if level[t] == -1:
                return flow
            it = [0] * self.n
            stack = [s]
            path: list[int] = []
            while stack:
                v = stack[-1]
                if v == t:
                    pushed = min(self.cap[e] for e in path)
                    for e in path:
                        self.cap[e] -= pushed
                        self.cap[e ^ 1] += pushed
                    flow += pushed
                    # retreat to the first saturated arc on the path
                    for i, e in enumerate(path):
                        if self.cap[e] == 0:
                            del stack[i + 1 :]
                            del path[i:]
                            break
                    continue
                advanced = False
                while it[v] < len(self.head[v]):
                    e = self.head[v][it[v]]
                    if self.cap[e] > 0 and level[self.to[e]] == level[v] + 1:
                        stack.append(self.to[e])
                        path.append(e)
                        advanced = True
                        break
                    it[v] += 1
                if not advanced:
                    level[v] = -1
                    stack.pop()
                    if path:
                        path.pop()

    def reachable(self, s: int) -> list[bool]:
        seen = [False] * self.n
        seen[s] = True
        queue = [s]
        for v in queue:
            for e in self.head[v]:
                if self.cap[e] > 0 and not seen[self.to[e]]:
                    seen[self.to[e]] = True
                    queue.append(self.to[e])
        return seen


def min_weight_vertex_cut(inst: CutInstance) -> CutResult:
    """Minimum-weight set of non-terminal vertices separating t1 from t2."""
    g = inst.graph
    t1, t2 = inst.t1, inst.t2
    others = [v for v in range(g.n) if v not in (t1, t2)]
    scale = math.lcm(*(inst.weights[v].denominator for v in others)) if others else 1
    scaled = {v: int(inst.weights[v] * scale) for v in others}
    inf = 1 + sum(scaled.values())

    # node ids: t1 -> 0, t2 -> 1, v_in -> 2 + 2i, v_out -> 3 + 2i
    node_in: dict[int, int] = {}
    node_out: dict[int, int] = {}
    for i, v in enumerate(others):
        node_in[v] = 2 + 2 * i
        node_out[v] = 3 + 2 * i
    node_in[t1] = node_out[t1] = 0
    node_in[t2] = node_out[t2] = 1

    net = _Dinic(2 + 2 * len(others))
    for v in others:
        net.add_arc(node_in[v], node_out[v], scaled[v])
    for u, v in g.edges():
        net.add_arc(node_out[u], node_in[v], inf)
        net.add_arc(node_out[v], node_in[u], inf)

    value = net.max_flow(0, 1)
    seen = net.reachable(0)
    cut_mask = 0
    for v in others:
        if seen[node_in[v]] and not seen[node_out[v]]:
            cut_mask |= 1 << v
    return CutResult(cut_mask, Fraction(value, scale))


def cut_separates(g: Graph, t1: int, t2: int, cut_mask: int) -> bool:
    """True when removing the cut leaves t1 and t2 in different components."""
    allowed = g.full_mask & ~mask_of(cut_mask)
    frontier = 1 << t1
    comp = frontier
    goal = 1 << t2
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj_mask[v]
        frontier = nxt & allowed & ~comp
        comp |= frontier
        if comp & goal:
            return False
    return True
