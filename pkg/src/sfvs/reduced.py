"""Exact maximum-weight T-forest solvers for cographs, plain and with a
bounded modulator.

In a cograph every cycle through a vertex implies a chordless C3 or C4
through it, and chordless cycles only appear across join nodes of the
cotree.  The plain solver therefore runs a DP over the cotree whose state is
a four-field signature of the selected set (count class, has-edge,
has-terminal, has-terminal-edge); the join rules below reject exactly the
selections that would close a cycle through a terminal.

The modulator solver handles graphs that become cographs after deleting a
small vertex set P.  Kept modulator subsets are enumerated outright; for
each one the cotree DP tracks, instead of one signature, a capped multiset
of per-component profiles describing how each connected component of the
selected cograph part looks from the modulator: its shape (no terminal /
terminal-centered star / terminal leaves hanging off a non-terminal blob),
and per modulator vertex the capped number of attachment edges.  At the
root, the kept modulator vertices and two representatives per profile class
are materialized into the same contracted multigraph the checker uses, and
acyclicity of that sketch decides feasibility.  Count caps at "2 or more"
are safe because a cycle can use at most two parallel connections of any
kind; the differential suites against the brute-force oracle police this.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import oracle
from .checker import certify_solution
from .cotree import LEAF, UNION, Cotree, build_cotree
from .graph import (
    CapacityError,
    Graph,
    InputError,
    Instance,
    Solution,
    bits,
    induced_subgraph,
    mask_of,
    set_lex_less,
)


@dataclass(frozen=True)
class SolverConfig:
    """Backend switch for the modulator solver.

    backend 'brute' answers with the exhaustive oracle, 'dp' always runs the
    profile DP, 'auto' picks brute force up to brute_threshold vertices.
    """

    backend: str = "auto"
    brute_threshold: int = 24
    max_modulator: int = 16

    def __post_init__(self) -> None:
        if self.backend not in ("dp", "brute", "auto"):
            raise InputError(f"unknown backend {self.backend!r}")


DEFAULT_CONFIG = SolverConfig()


# ---------------------------------------------------------------------------
# Signature DP on pure cographs


class Signature(NamedTuple):
    c: int  # how many vertices selected: 0, 1, or 2 meaning "2 or more"
    e: bool  # selection induces at least one edge
    t: bool  # selection contains a terminal
    x: bool  # selection induces an edge with a terminal endpoint


EMPTY_SIG = Signature(0, False, False, False)


def sig_union(a: Signature, b: Signature) -> Signature:
    return Signature(min(2, a.c + b.c), a.e or b.e, a.t or b.t, a.x or b.x)


def sig_join(a: Signature, b: Signature) -> Signature | None:
    """Merge across a join, or None when the merge closes a terminal cycle.

    With both sides selected, the new cycles are triangles (an edge on one
    side plus any vertex of the other) and C4s (two vertices per side); they
    hit a terminal exactly in the three rejected cases.
    """
    if a.c and b.c:
        if a.c == 2 and b.c == 2 and (a.t or b.t):
            return None
        if a.e and (a.x or b.t):
            return None
        if b.e and (b.x or a.t):
            return None
    return Signature(
        min(2, a.c + b.c),
        a.e or b.e or (a.c >= 1 and b.c >= 1),
        a.t or b.t,
        a.x or b.x or (a.t and b.c >= 1) or (b.t and a.c >= 1),
    )


def _check_cotree_matches(cotree: Cotree, inst: Instance) -> None:
    if cotree.n != inst.n or cotree.root.leaf_mask != inst.graph.full_mask:
        raise InputError("cotree leaves do not match the instance's vertex set")


def _best_entry(table: dict, key, weight: Fraction, mask: int) -> None:
    cur = table.get(key)
    if cur is None or weight > cur[0] or (weight == cur[0] and set_lex_less(mask, cur[1])):
        table[key] = (weight, mask)


def max_tforest_cograph(cotree: Cotree, inst: Instance) -> Solution:
    """Maximum-weight vertex set inducing a T-forest, for a cograph given by
    its cotree.  The result is re-certified with the checker."""
    _check_cotree_matches(cotree, inst)
    states: dict[int, dict[Signature, tuple[Fraction, int]]] = {}
    zero = Fraction(0)
    for node in cotree.postorder():
        if node.kind == LEAF:
            v = node.vertex
            tab = {EMPTY_SIG: (zero, 0)}
            sig = Signature(1, False, bool(inst.t_mask >> v & 1), False)
            _best_entry(tab, sig, inst.weights[v], 1 << v)
        else:
            merge = sig_union if node.kind == UNION else sig_join
            left = states.pop(id(node.left))
            right = states.pop(id(node.right))
            tab = {}
            for sa, (wa, ma) in left.items():
                for sb, (wb, mb) in right.items():
                    sm = merge(sa, sb)
                    if sm is not None:
                        _best_entry(tab, sm, wa + wb, ma | mb)
        states[id(node)] = tab

    root = states[id(cotree.root)]
    best_w, best_mask = zero, 0
    for w, m in root.values():
        if w > best_w or (w == best_w and set_lex_less(m, best_mask)):
            best_w, best_mask = w, m
    sol = certify_solution(inst, best_mask)
    if sol is None:
        raise RuntimeError("cotree DP produced an uncertifiable selection")
    return sol


def cograph_subset_signature(cotree: Cotree, inst: Instance, subset: int) -> Signature | None:
    """Signature the DP assigns to one fixed subset, or None when the join
    rules reject it.  This is the DP's feasibility predicate in isolation,
    kept separate so it can be compared against the checker subset by
    subset."""
    _check_cotree_matches(cotree, inst)
    subset = mask_of(subset)
    sigs: dict[int, Signature | None] = {}
    for node in cotree.postorder():
        if node.kind == LEAF:
            v = node.vertex
            if subset >> v & 1:
                sig = Signature(1, False, bool(inst.t_mask >> v & 1), False)
            else:
                sig = EMPTY_SIG
        else:
            sa = sigs.pop(id(node.left))
            sb = sigs.pop(id(node.right))
            if sa is None or sb is None:
                sig = None
            elif node.kind == UNION:
                sig = sig_union(sa, sb)
            else:
                sig = sig_join(sa, sb)
        sigs[id(node)] = sig
    return sigs[id(cotree.root)]


# ---------------------------------------------------------------------------
# Modulator decomposition


@dataclass(frozen=True)
class ModulatorDecomposition:
    """A vertex set P plus a cotree of G - P, witnessing that the host graph
    is a cograph after deleting P.  Cross edges and G[P] stay in `graph`."""

    graph: Graph
    p_mask: int
    cotree: Cotree | None  # None when P covers the whole graph
    old_ids: tuple[int, ...]  # cotree leaf id -> host vertex id

    @classmethod
    def build(cls, graph: Graph, p: int) -> "ModulatorDecomposition":
        p_mask = mask_of(p)
        if p_mask & ~graph.full_mask:
            raise InputError("modulator contains vertices outside the graph")
        rest = graph.full_mask & ~p_mask
        if rest == 0:
            return cls(graph, p_mask, None, ())
        sub, old_ids = induced_subgraph(graph, rest)
        return cls(graph, p_mask, build_cotree(sub), old_ids)


# Component profiles.  Encodings (always tuples, so states hash and sort):
#   (PLAIN, size2, attach)                      no terminal in the component
#   (TSTAR, size2, center_vec, leaves, tleaves) terminal-centered star
#   (TPART, 1, part_attach, tleaves)            non-terminal blob + terminal leaves
# attach / part_attach: per modulator vertex, capped count 0|1|2 of its edges
# into the component's non-terminal part; center_vec and every pattern are
# 0/1 adjacency vectors; leaves/tleaves are sorted ((pattern, count),...)
# with counts capped at 2 and all-zero patterns pruned (they cannot lie on
# any cycle through the modulator).

PLAIN, TSTAR, TPART = 0, 1, 2


def _satadd_vec(acc: list[int], vec, times: int) -> None:
    for i, val in enumerate(vec):
        if val:
            acc[i] = min(2, acc[i] + val * times)


def _merge_patterns(dest: dict, pattern, times: int) -> None:
    if any(pattern):
        dest[pattern] = min(2, dest.get(pattern, 0) + times)


def _packed(dest: dict) -> tuple:
    return tuple(sorted(dest.items()))


def _state_flags(state: tuple) -> tuple[int, bool, bool, bool]:
    c = 0
    e = t = x = False
    for prof, mult in state:
        kind, size2 = prof[0], prof[1]
        c = min(2, c + (2 if size2 else 1) * mult)
        e = e or bool(size2)
        t = t or kind != PLAIN
        x = x or (kind == TSTAR and size2) or kind == TPART
    return c, e, t, x


def _join_profile_states(sa: tuple, sb: tuple, mlen: int) -> tuple | None:
    """Merge all components of both sides into one across a join, or None
    when the merge closes a terminal cycle.  Mirrors sig_join, then works
    out the shape of the single merged component."""
    if not sa:
        return sb
    if not sb:
        return sa
    ca, ea, ta, xa = _state_flags(sa)
    cb, eb, tb, xb = _state_flags(sb)
    if ca == 2 and cb == 2 and (ta or tb):
        return None
    if ea and (xa or tb):
        return None
    if eb and (xb or ta):
        return None

    if not ta and not tb:
        attach = [0] * mlen
        for prof, mult in sa + sb:
            _satadd_vec(attach, prof[2], mult)
        return ((PLAIN, 1, tuple(attach)), 1),

    # A terminal is involved; one side is a single vertex (the hub).
    if ca == 1:
        hub, others = sa[0][0], sb
    else:
        # cb == 1 is forced: both sides >= 2 with a terminal was rejected.
        hub, others = sb[0][0], sa

    if hub[0] == TSTAR:
        # terminal center; the other side is an independent set of singletons
        leaves: dict = {}
        tleaves: dict = {}
        for prof, mult in others:
            if prof[0] == PLAIN:
                _merge_patterns(leaves, prof[2], mult)
            else:
                _merge_patterns(tleaves, prof[2], mult)
        return ((TSTAR, 1, hub[2], _packed(leaves), _packed(tleaves)), 1),

    # hub is a plain vertex; the other side mixes plain components and
    # terminal singletons, which become leaves hanging off the merged blob
    part = [0] * mlen
    _satadd_vec(part, hub[2], 1)
    tleaves = {}
    for prof, mult in others:
        if prof[0] == PLAIN:
            _satadd_vec(part, prof[2], mult)
        else:
            _merge_patterns(tleaves, prof[2], mult)
    return ((TPART, 1, tuple(part), _packed(tleaves)), 1),


def _union_profile_states(sa: tuple, sb: tuple) -> tuple:
    counts: dict = {}
    for prof, mult in sa + sb:
        counts[prof] = min(2, counts.get(prof, 0) + mult)
    return _packed(counts)


def _leaf_profile(terminal: bool, avec: tuple) -> tuple:
    if terminal:
        return (TSTAR, 0, avec, (), ())
    return (PLAIN, 0, avec)


# ---------------------------------------------------------------------------
# Root sketch: materialize modulator + profile representatives and test the
# contracted multigraph for cycles (same semantics as checker.contract_non_t)


def _sketch_accepts(inst: Instance, mlist: tuple[int, ...], state: tuple) -> bool:
    g = inst.graph
    t_mask = inst.t_mask
    mlen = len(mlist)

    parent = list(range(mlen))  # union-find over non-terminal atoms

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    def new_atom() -> int:
        parent.append(len(parent))
        return len(parent) - 1

    q_is_t = [bool(t_mask >> q & 1) for q in mlist]
    raw_edges: list[tuple] = []  # (endpoint, endpoint); ('t', ...) or ('a', atom)
    serial = 0

    def t_node() -> tuple:
        nonlocal serial
        serial += 1
        return ("t", "c", serial)

    def q_node(i: int) -> tuple:
        return ("t", "m", i)

    # modulator-internal edges
    for i in range(mlen):
        for j in range(i + 1, mlen):
            if not g.has_edge(mlist[i], mlist[j]):
                continue
            if q_is_t[i] and q_is_t[j]:
                raw_edges.append((q_node(i), q_node(j)))
            elif q_is_t[i]:
                raw_edges.append((q_node(i), ("a", j)))
            elif q_is_t[j]:
                raw_edges.append((q_node(j), ("a", i)))
            else:
                union(i, j)

    def wire_vector(node: tuple | None, atom: int | None, vec, counted: bool) -> None:
        """Connect a profile element to the modulator per its adjacency
        vector: unions into non-terminal atoms, edges to terminal ones."""
        for qi, val in enumerate(vec):
            if not val:
                continue
            if q_is_t[qi]:
                times = val if counted else 1
                other = node if node is not None else ("a", atom)
                for _ in range(times):
                    raw_edges.append((q_node(qi), other))
            else:
                if atom is not None:
                    union(atom, qi)
                else:
                    raw_edges.append((node, ("a", qi)))

    for prof, mult in state:
        for _ in range(mult):
            kind = prof[0]
            if kind == PLAIN:
                p = new_atom()
                wire_vector(None, p, prof[2], counted=True)
            elif kind == TSTAR:
                center = t_node()
                wire_vector(center, None, prof[2], counted=False)
                for pattern, cnt in prof[3]:
                    for _ in range(cnt):
                        leaf = new_atom()
                        raw_edges.append((center, ("a", leaf)))
                        wire_vector(None, leaf, pattern, counted=False)
                for pattern, cnt in prof[4]:
                    for _ in range(cnt):
                        tl = t_node()
                        raw_edges.append((center, tl))
                        wire_vector(tl, None, pattern, counted=False)
            else:  # TPART
                p = new_atom()
                wire_vector(None, p, prof[2], counted=True)
                for pattern, cnt in prof[3]:
                    for _ in range(cnt):
                        tl = t_node()
                        raw_edges.append((tl, ("a", p)))
                        wire_vector(tl, None, pattern, counted=False)

    # resolve atoms to their groups and count multiplicities (capped view)
    counts: dict[tuple, int] = {}
    for a, b in raw_edges:
        if a[0] == "a":
            a = ("g", find(a[1]))
        if b[0] == "a":
            b = ("g", find(b[1]))
        key = (a, b) if a <= b else (b, a)
        counts[key] = counts.get(key, 0) + 1
        if counts[key] >= 2:
            return False

    roots: dict[tuple, tuple] = {}

    def qfind(x: tuple) -> tuple:
        while roots.setdefault(x, x) != x:
            roots[x] = roots[roots[x]]
            x = roots[x]
        return x

    for a, b in counts:
        ra, rb = qfind(a), qfind(b)
        if ra == rb:
            return False
        roots[ra] = rb
    return True


# ---------------------------------------------------------------------------
# Modulator solver


def _submasks(mask: int):
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def max_tforest_with_modulator(
    dec: ModulatorDecomposition,
    inst: Instance,
    config: SolverConfig = DEFAULT_CONFIG,
) -> Solution:
    """Exact maximum-weight T-forest of the full host graph (the modulator is
    part of the search space).  Backend per config; results are identical."""
    if dec.graph != inst.graph:
        raise InputError("decomposition does not belong to this instance")
    if dec.p_mask.bit_count() > config.max_modulator:
        raise CapacityError(
            f"modulator size {dec.p_mask.bit_count()} exceeds the configured "
            f"limit {config.max_modulator}"
        )
    backend = config.backend
    if backend == "auto":
        backend = "brute" if inst.n <= config.brute_threshold else "dp"
    if backend == "brute":
        sol = oracle.brute_force_max_tforest(inst)
        out = certify_solution(inst, sol.forest_mask)
        if out is None:
            raise RuntimeError("brute-force optimum failed certification")
        return out

    zero = Fraction(0)
    best_w, best_mask = None, 0
    for m_sub in _submasks(dec.p_mask):
        mlist = tuple(bits(m_sub))
        if certify_solution(inst, m_sub) is None:
            continue  # the kept modulator vertices alone already carry a T-cycle
        mlen = len(mlist)
        avecs = {
            hv: tuple(1 if inst.graph.has_edge(hv, q) else 0 for q in mlist)
            for hv in dec.old_ids
        }
        if dec.cotree is None:
            root_states = {(): (zero, 0)}
        else:
            states: dict[int, dict] = {}
            for node in dec.cotree.postorder():
                if node.kind == LEAF:
                    hv = dec.old_ids[node.vertex]
                    tab = {(): (zero, 0)}
                    prof = _leaf_profile(bool(inst.t_mask >> hv & 1), avecs[hv])
                    _best_entry(tab, ((prof, 1),), inst.weights[hv], 1 << hv)
                else:
                    left = states.pop(id(node.left))
                    right = states.pop(id(node.right))
                    tab = {}
                    for sa, (wa, ma) in left.items():
                        for sb, (wb, mb) in right.items():
                            if node.kind == UNION:
                                sm = _union_profile_states(sa, sb)
                            else:
                                sm = _join_profile_states(sa, sb, mlen)
                            if sm is not None:
                                _best_entry(tab, sm, wa + wb, ma | mb)
                states[id(node)] = tab
            root_states = states[id(dec.cotree.root)]

        w_m = inst.weight_of(m_sub)
        for state, (w, mask) in root_states.items():
            if not _sketch_accepts(inst, mlist, state):
                continue
            total = w + w_m
            full = mask | m_sub
            if (
                best_w is None
                or total > best_w
                or (total == best_w and set_lex_less(full, best_mask))
            ):
                best_w, best_mask = total, full

    if best_w is None:
        # the empty selection is always feasible; reaching here means a bug
        raise RuntimeError("modulator DP rejected every selection")
    out = certify_solution(inst, best_mask)
    if out is None:
        raise RuntimeError("modulator DP optimum failed certification")
    return out
