"""Guess-and-reduce search around independent sets of low-degree vertices.

The core of a kept set F (for a parameter s >= 2) is its vertices with at
most 2s-1 neighbours inside F; F is core-incomplete when the core contains
an independent set of size s.  Such a solution survives the following
reduction: guess the independent set U and a superset Z of its kept
neighbourhood (|Z| <= s(2s-1)), delete N(U) \\ Z, and solve the remainder
exactly.  After the deletion U u Z is a modulator to a cograph whenever the
input is (sP1+P4)-free, which is what the modulator solver needs.

Only Z subseteq N(U) is enumerated: vertices of Z outside N(U) never change
the deleted set, so they never change the reduced instance.  Reduced
instances are memoized by their deleted set.

The returned solution is the best certified candidate over all guesses.  It
is always at least as heavy as every core-incomplete solution, but it may
itself fail to be core-incomplete when some reduced instance's optimum is a
heavier core-complete set; callers take the maximum with the core-complete
branches, so this only ever helps.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from itertools import combinations

from .checker import certify_solution
from .cotree import NotCographError
from .graph import CapacityError, InputError, Instance, Solution, bit_list, better_solution
from .oracle import SubsetTable
from .reduced import (
    DEFAULT_CONFIG,
    ModulatorDecomposition,
    SolverConfig,
    max_tforest_with_modulator,
)


def _independent_sets(inst: Instance, size: int):
    g = inst.graph
    for combo in combinations(range(inst.n), size):
        ok = True
        for i, u in enumerate(combo):
            for v in combo[i + 1 :]:
                if g.has_edge(u, v):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield combo


def _deleted_sets(inst: Instance, s: int, stats: dict | None):
    """All distinct deletion masks N(U) \\ Z over admissible guesses (U, Z),
    each paired with one witnessing modulator U u Z."""
    g = inst.graph
    z_cap = s * (2 * s - 1)
    seen: dict[int, int] = {}
    for combo in _independent_sets(inst, s):
        u_mask = 0
        for u in combo:
            u_mask |= 1 << u
        nu = 0
        for u in combo:
            nu |= g.adj_mask[u]
        nu &= ~u_mask
        nu_list = bit_list(nu)
        if stats is not None:
            stats["independent_sets"] = stats.get("independent_sets", 0) + 1
        for zsize in range(0, min(z_cap, len(nu_list)) + 1):
            for zc in combinations(nu_list, zsize):
                z_mask = 0
                for z in zc:
                    z_mask |= 1 << z
                deleted = nu & ~z_mask
                if stats is not None:
                    stats["guesses"] = stats.get("guesses", 0) + 1
                if deleted not in seen:
                    seen[deleted] = u_mask | z_mask
    return seen


def best_core_incomplete(
    inst: Instance,
    s: int,
    config: SolverConfig = DEFAULT_CONFIG,
    threads: int = 1,
    stats: dict | None = None,
) -> Solution | None:
    """Best certified solution over all low-degree-independent-set guesses,
    or None when the graph has no independent set of size s."""
    if s < 2:
        raise InputError("core-incomplete search needs s >= 2")
    if inst.n < s:
        return None

    reduced = _deleted_sets(inst, s, stats)
    if not reduced:
        return None

    table: SubsetTable | None = None
    backend = config.backend
    if backend == "auto":
        backend = "brute" if inst.n <= config.brute_threshold else "dp"
    if backend == "brute":
        try:
            table = SubsetTable(inst)
        except CapacityError:
            table = None

    def solve_one(item: tuple[int, int]) -> tuple[Solution | None, bool]:
        deleted, p_mask = item
        if table is not None:
            cand = table.best_avoiding(deleted)
            return certify_solution(inst, cand.forest_mask), False
        keep = inst.graph.full_mask & ~deleted
        sub, old_ids = inst.restrict(keep)
        p_sub = 0
        for new, old in enumerate(old_ids):
            if p_mask >> old & 1:
                p_sub |= 1 << new
        try:
            dec = ModulatorDecomposition.build(sub.graph, p_sub)
        except NotCographError:
            return None, True
        got = max_tforest_with_modulator(dec, sub, config)
        host_mask = 0
        for v in got.forest:
            host_mask |= 1 << old_ids[v]
        return certify_solution(inst, host_mask), False

    items = sorted(reduced.items())
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(solve_one, items))
    else:
        results = [solve_one(item) for item in items]

    best: Solution | None = None
    violations = 0
    for sol, violated in results:
        violations += violated
        best = better_solution(best, sol)
    if stats is not None and violations:
        stats["class_violations"] = stats.get("class_violations", 0) + violations
    return best
