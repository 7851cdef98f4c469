"""Maximum-weight solutions whose terminal content is one low-degree center.

A <=1-part solution keeps at most one terminal, of degree at most 1; 2-part
and 3-part solutions keep exactly one terminal u (the center) with exactly
two / three neighbours in the kept set (the center neighbours).  The center's
component minus u splits into one component per center neighbour, which is
why the 2-part and 3-part searches reduce to minimum-weight vertex cuts
between center neighbours after pruning the other terminals and the center's
other neighbours.

The 3-part search distinguishes non-full candidates (some center neighbour
is alone in its component; solved by one cut per choice) from full ones
(every component has a second vertex); fullness forces, on (2P1+P4)-free
inputs, the whole solution to be the center component with complete
components around the neighbours, which the x1,x2,x3 guessing below
reconstructs directly.

Every candidate is re-certified with the checker before it can win, so on
inputs outside the promise class the ops still return valid, possibly
sub-optimal, solutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .checker import certify_solution
from .flowcut import CutInstance, min_weight_vertex_cut
from .graph import InputError, Instance, Solution, bit_list, bits, set_lex_less

CandidateSink = Callable[["PartSolution"], None]


@dataclass(frozen=True)
class PartSolutionKind:
    kind: str  # 'le1' | 'two_part' | 'three_part'
    center: int | None
    neighbours: tuple[int, ...]
    full: bool | None = None  # three_part only: full-branch candidate


@dataclass(frozen=True)
class PartSolution:
    solution: Solution
    info: PartSolutionKind


def _bump(stats: dict | None, key: str, amount: int = 1) -> None:
    if stats is not None:
        stats[key] = stats.get(key, 0) + amount


def _consider(
    best: PartSolution | None,
    inst: Instance,
    forest_mask: int,
    info: PartSolutionKind,
    stats: dict | None,
    sink: CandidateSink | None,
) -> PartSolution | None:
    _bump(stats, "tried")
    sol = certify_solution(inst, forest_mask)
    if sol is None:
        _bump(stats, "discarded")
        return best
    _bump(stats, "certified")
    cand = PartSolution(sol, info)
    if sink is not None:
        sink(cand)
    if best is None:
        return cand
    if sol.weight > best.solution.weight or (
        sol.weight == best.solution.weight
        and set_lex_less(sol.forest_mask, best.solution.forest_mask)
    ):
        return cand
    return best


def _centers(inst: Instance, fixed_center: int | None) -> list[int]:
    if fixed_center is None:
        return bit_list(inst.t_mask)
    if not (inst.t_mask >> fixed_center & 1):
        raise InputError(f"fixed center {fixed_center} is not a terminal")
    return [fixed_center]


def best_le1_part(
    inst: Instance,
    fixed_center: int | None = None,
    stats: dict | None = None,
    sink: CandidateSink | None = None,
) -> PartSolution | None:
    """Best solution with at most one kept terminal, of kept-degree <= 1.

    Candidates: all of V minus the terminals; one terminal u plus every
    non-terminal non-neighbour of u; and each of those plus a single
    non-terminal neighbour of u.  With fixed_center given, only candidates
    containing that center are considered.
    """
    g = inst.graph
    full = g.full_mask
    best: PartSolution | None = None
    if fixed_center is None:
        best = _consider(
            best, inst, full & ~inst.t_mask, PartSolutionKind("le1", None, ()), stats, sink
        )
    for u in _centers(inst, fixed_center):
        base = (1 << u) | (full & ~inst.t_mask & ~g.adj_mask[u])
        best = _consider(best, inst, base, PartSolutionKind("le1", u, ()), stats, sink)
        for v in bits(g.adj_mask[u] & ~inst.t_mask):
            best = _consider(
                best, inst, base | (1 << v), PartSolutionKind("le1", u, (v,)), stats, sink
            )
    return best


def _cut_candidate(inst: Instance, keep_mask: int, t1: int, t2: int) -> int:
    """Min-weight vertex cut between t1 and t2 inside G[keep_mask]; returns
    the kept mask (keep minus the cut)."""
    sub, old_ids = inst.restrict(keep_mask)
    pos = {old: new for new, old in enumerate(old_ids)}
    a, b = pos[t1], pos[t2]
    weights = {
        v: sub.weights[v] for v in range(sub.n) if v not in (a, b)
    }
    cut = min_weight_vertex_cut(CutInstance(sub.graph, a, b, weights))
    removed = 0
    for v in bits(cut.cut_mask):
        removed |= 1 << old_ids[v]
    return keep_mask & ~removed


def best_2part(
    inst: Instance,
    fixed_center: int | None = None,
    stats: dict | None = None,
    sink: CandidateSink | None = None,
) -> PartSolution | None:
    """Best solution keeping exactly one terminal u with exactly two kept
    neighbours v1, v2.  For each guess, the other neighbours of u and the
    other terminals are deleted and a minimum cut separates v1 from v2."""
    g = inst.graph
    full = g.full_mask
    best: PartSolution | None = None
    for u in _centers(inst, fixed_center):
        options = bit_list(g.adj_mask[u] & ~inst.t_mask)
        for v1, v2 in combinations(options, 2):
            if g.has_edge(v1, v2):
                _bump(stats, "tried")
                _bump(stats, "discarded")
                continue
            pair = (1 << v1) | (1 << v2)
            remove = (g.adj_mask[u] & ~pair) | (inst.t_mask & ~(1 << u))
            keep = full & ~remove
            forest = _cut_candidate(inst, keep & ~(1 << u), v1, v2)
            best = _consider(
                best,
                inst,
                forest | (1 << u),
                PartSolutionKind("two_part", u, (v1, v2)),
                stats,
                sink,
            )
    return best


def best_3part(
    inst: Instance,
    stats: dict | None = None,
    sink: CandidateSink | None = None,
) -> PartSolution | None:
    """Best solution keeping exactly one terminal u with exactly three kept
    neighbours; sound on all inputs, optimal on (2P1+P4)-free ones."""
    g = inst.graph
    full = g.full_mask
    t_mask = inst.t_mask
    best: PartSolution | None = None
    for u in bit_list(t_mask):
        options = bit_list(g.adj_mask[u] & ~t_mask)
        for trip in combinations(options, 3):
            v1, v2, v3 = trip
            trip_mask = (1 << v1) | (1 << v2) | (1 << v3)
            if (
                g.has_edge(v1, v2)
                or g.has_edge(v1, v3)
                or g.has_edge(v2, v3)
            ):
                _bump(stats, "tried")
                _bump(stats, "discarded")
                continue
            gprime = full & ~(g.adj_mask[u] & ~trip_mask)

            # non-full: one neighbour vi is alone, cut between the other two
            for i in range(3):
                vi = trip[i]
                vj, vk = (trip[(i + 1) % 3], trip[(i + 2) % 3])
                region = (
                    gprime
                    & ~(1 << u)
                    & ~(1 << vi)
                    & ~g.adj_mask[vi]
                    & ~(t_mask & ~(1 << u))
                )
                forest = _cut_candidate(inst, region, vj, vk)
                best = _consider(
                    best,
                    inst,
                    forest | (1 << u) | (1 << vi),
                    PartSolutionKind("three_part", u, trip, full=False),
                    stats,
                    sink,
                )

            # full: prune to vertices adjacent to exactly one of the triple,
            # then guess one extra vertex xi per neighbour component
            core = (1 << u) | trip_mask
            g2 = core
            for w in bits(gprime & ~core & ~t_mask):
                hits = (
                    (1 if g.has_edge(w, v1) else 0)
                    + (1 if g.has_edge(w, v2) else 0)
                    + (1 if g.has_edge(w, v3) else 0)
                )
                if hits == 1:
                    g2 |= 1 << w
            x_opts = [bit_list(g.adj_mask[v] & g2 & ~core) for v in trip]
            for x1 in x_opts[0]:
                for x2 in x_opts[1]:
                    if x2 == x1 or g.has_edge(x1, x2):
                        continue
                    for x3 in x_opts[2]:
                        if x3 in (x1, x2) or g.has_edge(x1, x3) or g.has_edge(x2, x3):
                            _bump(stats, "tried")
                            _bump(stats, "discarded")
                            continue
                        xs = (x1, x2, x3)
                        exempt = core | (1 << x1) | (1 << x2) | (1 << x3)
                        forest = exempt
                        for w in bits(g2 & ~exempt):
                            keep_w = False
                            for i, vi in enumerate(trip):
                                if not g.has_edge(w, vi):
                                    continue
                                others = xs[:i] + xs[i + 1 :]
                                if g.has_edge(w, xs[i]) and not any(
                                    g.has_edge(w, xo) for xo in others
                                ):
                                    keep_w = True
                                break
                            if keep_w:
                                forest |= 1 << w
                        best = _consider(
                            best,
                            inst,
                            forest,
                            PartSolutionKind("three_part", u, trip, full=True),
                            stats,
                            sink,
                        )
    return best
