"""Instance file format and machine-readable result records.

Instance files are line-oriented in the DIMACS tradition, 1-indexed:

    c optional comment
    p sfvs <n> <m>
    e <u> <v>          exactly m of these
    t <u>              terminal
    w <u> <num>/<den>  optional weight, default 1/1, must be positive
    k <num>/<den>      optional decision threshold on the deleted weight

Vertices are 1..n externally and 0..n-1 internally; the mapping is fixed.
`serialize_instance` emits the canonical form (sorted edge/terminal/weight
lines, unit weights omitted), and parse(serialize(x)) == x.

Result records are JSON objects on standard output with the forest/deleted
partition (1-indexed, sorted), the exact optimum as "num/den", branch
statistics and timings; everything except the timings block is a
deterministic function of the instance and the solver flags.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .checker import certify_solution
from .graph import Graph, InputError, Instance, bit_list
from .pipeline import SolveReport


@dataclass(frozen=True)
class ParsedInstance:
    instance: Instance
    threshold: Fraction | None


def _parse_fraction(token: str, where: str) -> Fraction:
    try:
        if "/" in token:
            num, den = token.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(token))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: bad rational {token!r}") from exc


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_instance(text: str) -> ParsedInstance:
    n = -1
    m_declared = -1
    edges: list[tuple[int, int]] = []
    edge_seen: set[tuple[int, int]] = set()
    terminals: set[int] = set()
    weights: dict[int, Fraction] = {}
    threshold: Fraction | None = None

    def vertex(token: str, lineno: int) -> int:
        try:
            v = int(token)
        except ValueError as exc:
            raise InputError(f"line {lineno}: bad vertex id {token!r}") from exc
        if not (1 <= v <= n):
            raise InputError(f"line {lineno}: vertex {v} out of range 1..{n}")
        return v - 1

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        tag = fields[0]
        if tag == "p":
            if n != -1:
                raise InputError(f"line {lineno}: duplicate problem line")
            if len(fields) != 4 or fields[1] != "sfvs":
                raise InputError(f"line {lineno}: expected 'p sfvs <n> <m>'")
            try:
                n, m_declared = int(fields[2]), int(fields[3])
            except ValueError as exc:
                raise InputError(f"line {lineno}: bad problem line") from exc
            if n < 0 or m_declared < 0:
                raise InputError(f"line {lineno}: negative counts")
            continue
        if n == -1:
            raise InputError(f"line {lineno}: '{tag}' line before the problem line")
        if tag == "e":
            if len(fields) != 3:
                raise InputError(f"line {lineno}: expected 'e <u> <v>'")
            u, v = vertex(fields[1], lineno), vertex(fields[2], lineno)
            if u == v:
                raise InputError(f"line {lineno}: self-loop at vertex {u + 1}")
            key = (min(u, v), max(u, v))
            if key in edge_seen:
                raise InputError(f"line {lineno}: duplicate edge {u + 1} {v + 1}")
            edge_seen.add(key)
            edges.append(key)
        elif tag == "t":
            if len(fields) != 2:
                raise InputError(f"line {lineno}: expected 't <u>'")
            u = vertex(fields[1], lineno)
            if u in terminals:
                raise InputError(f"line {lineno}: duplicate terminal {u + 1}")
            terminals.add(u)
        elif tag == "w":
            if len(fields) != 3:
                raise InputError(f"line {lineno}: expected 'w <u> <num>/<den>'")
            u = vertex(fields[1], lineno)
            if u in weights:
                raise InputError(f"line {lineno}: duplicate weight for vertex {u + 1}")
            w = _parse_fraction(fields[2], f"line {lineno}")
            if w <= 0:
                raise InputError(f"line {lineno}: weight must be positive")
            weights[u] = w
        elif tag == "k":
            if len(fields) != 2:
                raise InputError(f"line {lineno}: expected 'k <num>/<den>'")
            if threshold is not None:
                raise InputError(f"line {lineno}: duplicate threshold line")
            threshold = _parse_fraction(fields[1], f"line {lineno}")
        else:
            raise InputError(f"line {lineno}: unknown line type {tag!r}")

    if n == -1:
        raise InputError("missing problem line 'p sfvs <n> <m>'")
    if len(edges) != m_declared:
        raise InputError(f"header declares {m_declared} edges, found {len(edges)}")
    graph = Graph(n, edges)
    wvec = tuple(weights.get(v, Fraction(1)) for v in range(n))
    t_mask = 0
    for u in terminals:
        t_mask |= 1 << u
    return ParsedInstance(Instance(graph, t_mask, wvec), threshold)


def serialize_instance(inst: Instance, threshold: Fraction | None = None) -> str:
    lines = [f"p sfvs {inst.n} {inst.graph.m}"]
    for u, v in sorted(inst.graph.edges()):
        lines.append(f"e {u + 1} {v + 1}")
    for u in bit_list(inst.t_mask):
        lines.append(f"t {u + 1}")
    one = Fraction(1)
    for v, w in enumerate(inst.weights):
        if w != one:
            lines.append(f"w {v + 1} {format_fraction(w)}")
    if threshold is not None:
        lines.append(f"k {format_fraction(threshold)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Result records


def build_result_record(
    inst: Instance,
    report: SolveReport,
    mode: str,
    s: int | None,
    threshold: Fraction | None,
    timings: dict[str, float] | None,
) -> dict:
    best = report.best
    record: dict = {
        "mode": mode,
        "n": inst.n,
        "m": inst.graph.m,
        "optimum_weight": format_fraction(best.weight),
        "deleted_weight": format_fraction(inst.total_weight - best.weight),
        "forest": [v + 1 for v in best.forest],
        "deleted": [v + 1 for v in best.deleted],
        "certified": best.certified,
        "class_check": report.class_check,
        "branch_stats": report.branch_stats,
    }
    if s is not None:
        record["s"] = s
    if report.class_witness is not None:
        record["class_witness"] = {
            "isolated": [v + 1 for v in report.class_witness.isolated],
            "path": [v + 1 for v in report.class_witness.path],
        }
    if threshold is not None:
        record["threshold"] = format_fraction(threshold)
        record["decision"] = report.decision
    if timings is not None:
        record["timings"] = timings
    return record


def record_to_json(record: dict, include_timings: bool = True) -> str:
    out = dict(record)
    if not include_timings:
        out.pop("timings", None)
    return json.dumps(out, indent=2, sort_keys=True) + "\n"


def parse_record(text: str) -> dict:
    try:
        record = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"result file is not valid JSON: {exc}") from exc
    if not isinstance(record, dict):
        raise InputError("result file must contain a JSON object")
    return record


def verify_record(parsed: ParsedInstance, record: dict) -> str | None:
    """Re-check a result record against its instance; None when sound,
    otherwise the first violated invariant."""
    inst = parsed.instance
    for key in ("n", "forest", "deleted", "optimum_weight"):
        if key not in record:
            raise InputError(f"result record is missing the {key!r} field")
    if record["n"] != inst.n:
        raise InputError(
            f"result is for n={record['n']} but the instance has n={inst.n}"
        )
    try:
        forest = [int(v) for v in record["forest"]]
        deleted = [int(v) for v in record["deleted"]]
    except (TypeError, ValueError):
        raise InputError("forest/deleted fields must be lists of vertex ids")
    for v in forest + deleted:
        if not (1 <= v <= inst.n):
            raise InputError(f"vertex {v} out of range 1..{inst.n}")

    forest_mask = 0
    for v in forest:
        forest_mask |= 1 << (v - 1)
    deleted_mask = 0
    for v in deleted:
        deleted_mask |= 1 << (v - 1)
    if forest_mask & deleted_mask:
        return "forest and deleted sets overlap"
    if forest_mask | deleted_mask != inst.graph.full_mask:
        return "forest and deleted sets do not cover all vertices"
    if len(set(forest)) != len(forest) or len(set(deleted)) != len(deleted):
        return "duplicate vertex ids in forest/deleted"

    claimed = _parse_fraction(str(record["optimum_weight"]), "optimum_weight")
    actual = inst.weight_of(forest_mask)
    if claimed != actual:
        return (
            f"claimed weight {format_fraction(claimed)} does not match the "
            f"forest's weight {format_fraction(actual)}"
        )
    if certify_solution(inst, forest_mask) is None:
        return "forest contains a cycle through a terminal"
    if parsed.threshold is not None and "decision" in record:
        expect = inst.total_weight - actual <= parsed.threshold
        if bool(record["decision"]) != expect:
            return "decision flag does not match the threshold comparison"
    return None
