"""End-to-end solvers for maximum-weight T-forests.

`solve_weighted_2p1p4` is exact on (2P1+P4)-free graphs with arbitrary
positive rational weights; `solve_unweighted_sp1p4` is exact on
(sP1+P4)-free graphs with unit weights for any s.  Both run a handful of
branches, each producing certified candidates, and take the deterministic
maximum; outside the promise class every branch still certifies, so the
result degrades to a valid (possibly sub-optimal) solution and the class
check reports the violation witness.

Branch layout for the weighted solver:
  (a) core-incomplete search (independent low-degree pair, s = 2);
  (b) solutions keeping at most one terminal: <=1-part, 2-part, 3-part;
  (c) solutions keeping exactly two terminals u1, u2 (necessarily adjacent,
      both of kept-degree <= 3): either one of them has degree 1, handled by
      re-running the <=1-part / 2-part search with the other as fixed center
      on a pruned graph, or both have degree exactly 2, handled by one
      vertex cut per choice of their second neighbours.

The unweighted solver combines the core-incomplete search (at the given s)
with brute-force enumeration of the terminal side: at most 2s-2 kept
terminals, and at most that many deleted non-terminals.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable

from .checker import certify_solution
from .core_incomplete import best_core_incomplete
from .cotree import PatternWitness, find_induced_sp1_p4
from .graph import (
    InputError,
    Instance,
    Solution,
    bit_list,
    bits,
    better_solution,
)
from .parts import PartSolution, best_2part, best_3part, best_le1_part
from .reduced import DEFAULT_CONFIG, SolverConfig

# sink receives (branch_name, info_tuple, solution) for every certified candidate
AuditSink = Callable[[str, tuple, Solution], None]


@dataclass(frozen=True)
class SolveReport:
    best: Solution
    branch_stats: dict[str, dict[str, int]]
    class_check: str  # 'ok' | 'violated' | 'skipped'
    class_witness: PatternWitness | None
    decision: bool | None


def _class_check(inst: Instance, s: int, mode: str) -> tuple[str, PatternWitness | None]:
    run = mode == "on" or (mode == "auto" and inst.n <= 40)
    if not run:
        return "skipped", None
    witness = find_induced_sp1_p4(inst.graph, s)
    if witness is None:
        return "ok", None
    return "violated", witness


def _merge_stats(dest: dict, name: str, frag: dict) -> None:
    slot = dest.setdefault(name, {})
    for key, val in frag.items():
        slot[key] = slot.get(key, 0) + val


def _run_tasks(tasks, threads: int):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda fn: fn(), tasks))
    return [fn() for fn in tasks]


def _two_terminal_pair_task(inst: Instance, u1: int, u2: int, sink: AuditSink | None):
    """Candidates keeping exactly the adjacent terminals u1, u2."""
    from .parts import _cut_candidate  # shared cut plumbing

    g = inst.graph
    full = g.full_mask
    t_mask = inst.t_mask

    def run() -> tuple[str, Solution | None, dict]:
        stats = {"pairs": 1}
        best: Solution | None = None

        def consider(mask: int, info: tuple) -> None:
            nonlocal best
            stats["tried"] = stats.get("tried", 0) + 1
            sol = certify_solution(inst, mask)
            if sol is None:
                stats["discarded"] = stats.get("discarded", 0) + 1
                return
            stats["certified"] = stats.get("certified", 0) + 1
            if sink is not None:
                sink("two_terminal", info, sol)
            best = better_solution(best, sol)

        # one of the two terminals has kept-degree 1
        for a, b in ((u1, u2), (u2, u1)):
            keep = full & ~(1 << a) & ~(g.adj_mask[a] & ~(1 << b))
            sub, old_ids = inst.restrict(keep)
            pos = {old: new for new, old in enumerate(old_ids)}
            for op in (best_le1_part, best_2part):
                part = op(sub, fixed_center=pos[b])
                if part is None:
                    continue
                host = 1 << a
                for v in part.solution.forest:
                    host |= 1 << old_ids[v]
                consider(host, (u1, u2))

        # both terminals have kept-degree exactly 2
        for v1 in bits(g.adj_mask[u1] & ~t_mask):
            if g.has_edge(v1, u2):
                continue
            for v2 in bits(g.adj_mask[u2] & ~t_mask):
                if v2 == v1 or g.has_edge(v2, u1) or g.has_edge(v1, v2):
                    continue
                keep = (
                    full
                    & ~t_mask
                    & ~(g.adj_mask[u1] & ~(1 << v1))
                    & ~(g.adj_mask[u2] & ~(1 << v2))
                )
                forest = _cut_candidate(inst, keep, v1, v2)
                consider(forest | (1 << u1) | (1 << u2), (u1, u2, v1, v2))

        return "two_terminal", best, stats

    return run


def solve_weighted_2p1p4(
    inst: Instance,
    k: Fraction | None = None,
    validate_class: str = "auto",
    threads: int = 1,
    config: SolverConfig = DEFAULT_CONFIG,
    sink: AuditSink | None = None,
) -> SolveReport:
    """Maximum-weight T-forest; exact whenever the graph is (2P1+P4)-free."""
    g = inst.graph

    def part_task(name: str, op) -> Callable:
        def run() -> tuple[str, Solution | None, dict]:
            stats: dict = {}
            part_sink = None
            if sink is not None:

                def part_sink(cand: PartSolution) -> None:
                    sink(name, (cand.info,), cand.solution)

            part = op(inst, stats=stats, sink=part_sink)
            return name, None if part is None else part.solution, stats

        return run

    def core_task() -> tuple[str, Solution | None, dict]:
        stats: dict = {}
        sol = best_core_incomplete(inst, 2, config=config, stats=stats)
        if sol is not None and sink is not None:
            sink("core_incomplete", (2,), sol)
        return "core_incomplete", sol, stats

    tasks: list[Callable] = [
        core_task,
        part_task("le1_part", best_le1_part),
        part_task("two_part", best_2part),
        part_task("three_part", best_3part),
    ]
    t_list = bit_list(inst.t_mask)
    for i, u1 in enumerate(t_list):
        for u2 in t_list[i + 1 :]:
            if g.has_edge(u1, u2):
                tasks.append(_two_terminal_pair_task(inst, u1, u2, sink))

    results = _run_tasks(tasks, threads)

    branch_stats: dict[str, dict[str, int]] = {}
    best: Solution | None = None
    for name, sol, frag in results:
        _merge_stats(branch_stats, name, frag)
        best = better_solution(best, sol)
    assert best is not None  # the <=1-part branch always yields a candidate

    check, witness = _class_check(inst, 2, validate_class)
    decision = None if k is None else (inst.total_weight - best.weight <= k)
    return SolveReport(best, branch_stats, check, witness, decision)


def solve_unweighted_sp1p4(
    inst: Instance,
    s: int,
    k: Fraction | None = None,
    validate_class: str = "auto",
    threads: int = 1,
    config: SolverConfig = DEFAULT_CONFIG,
    sink: AuditSink | None = None,
) -> SolveReport:
    """Maximum-size T-forest; exact whenever the graph is (sP1+P4)-free.
    Requires unit weights; s is clamped up to 2 internally (any lower bound
    on s is admissible since the graph classes are nested)."""
    if not inst.unit_weights:
        raise InputError("the unweighted solver requires unit weights")
    if s < 0:
        raise InputError("s must be >= 0")
    s_eff = max(s, 2)
    g = inst.graph
    full = g.full_mask
    non_t = full & ~inst.t_mask
    t_list = bit_list(inst.t_mask)
    non_t_list = bit_list(non_t)

    def core_task() -> tuple[str, Solution | None, dict]:
        stats: dict = {}
        sol = best_core_incomplete(inst, s_eff, config=config, stats=stats)
        if sol is not None and sink is not None:
            sink("core_incomplete", (s_eff,), sol)
        return "core_incomplete", sol, stats

    def enum_task(w_combos: list[tuple[int, ...]]) -> Callable:
        def run() -> tuple[str, Solution | None, dict]:
            stats: dict = {}
            best: Solution | None = None
            for wc in w_combos:
                w_mask = 0
                for u in wc:
                    w_mask |= 1 << u
                for xsize in range(0, len(wc) + 1):
                    for xc in combinations(non_t_list, xsize):
                        x_mask = 0
                        for v in xc:
                            x_mask |= 1 << v
                        mask = w_mask | (non_t & ~x_mask)
                        stats["tried"] = stats.get("tried", 0) + 1
                        sol = certify_solution(inst, mask)
                        if sol is None:
                            stats["discarded"] = stats.get("discarded", 0) + 1
                            continue
                        stats["certified"] = stats.get("certified", 0) + 1
                        if sink is not None:
                            sink("terminal_enum", (wc, xc), sol)
                        best = better_solution(best, sol)
            return "terminal_enum", best, stats

        return run

    w_combos: list[tuple[int, ...]] = []
    for wsize in range(0, min(2 * s_eff - 2, len(t_list)) + 1):
        w_combos.extend(combinations(t_list, wsize))
    chunk = max(1, (len(w_combos) + max(threads, 1) - 1) // max(threads, 1))
    tasks: list[Callable] = [core_task]
    for i in range(0, len(w_combos), chunk):
        tasks.append(enum_task(w_combos[i : i + chunk]))

    results = _run_tasks(tasks, threads)
    branch_stats: dict[str, dict[str, int]] = {}
    best: Solution | None = None
    for name, sol, frag in results:
        _merge_stats(branch_stats, name, frag)
        best = better_solution(best, sol)
    assert best is not None  # W = X = empty always yields V - T

    check, witness = _class_check(inst, s, validate_class)
    decision = None if k is None else (inst.total_weight - best.weight <= k)
    return SolveReport(best, branch_stats, check, witness, decision)
