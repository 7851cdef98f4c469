"""Command-line interface.

Subcommands: solve (run a pipeline, JSON record on stdout), verify (re-check
a record against its instance), gen (seeded instance generator), recognize
(induced sP1+P4 search), bench (timing suites with CSV + figure output).

Exit codes: 0 ok / affirmative, 1 negative answer or violated invariant,
2 malformed input, 3 capacity or generation limits hit.  Diagnostics go to
standard error; records and instance files go to standard output.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .bench import SUITES, run_suite
from .cotree import find_induced_sp1_p4
from .fileio import (
    build_result_record,
    parse_instance,
    parse_record,
    record_to_json,
    serialize_instance,
    verify_record,
)
from .graph import CapacityError, InputError
from .oracle import FAMILIES, GenerationError, GeneratorSpec, generate
from .pipeline import solve_unweighted_sp1p4, solve_weighted_2p1p4
from .reduced import SolverConfig


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _cmd_solve(args: argparse.Namespace) -> int:
    t_start = time.perf_counter()
    parsed = parse_instance(_read(args.file))
    t_parsed = time.perf_counter()
    config = SolverConfig(
        backend=args.backend,
        brute_threshold=args.brute_threshold,
        max_modulator=args.max_modulator,
    )
    common = dict(
        k=parsed.threshold,
        validate_class=args.validate_class,
        threads=args.threads,
        config=config,
    )
    if args.unweighted:
        report = solve_unweighted_sp1p4(parsed.instance, args.s, **common)
        mode: str = "unweighted"
        s: int | None = args.s
    else:
        report = solve_weighted_2p1p4(parsed.instance, **common)
        mode, s = "weighted", None
    t_solved = time.perf_counter()
    timings = {
        "parse_s": round(t_parsed - t_start, 6),
        "solve_s": round(t_solved - t_parsed, 6),
        "total_s": round(t_solved - t_start, 6),
    }
    record = build_result_record(parsed.instance, report, mode, s, parsed.threshold, timings)
    sys.stdout.write(record_to_json(record, include_timings=not args.no_timings))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    parsed = parse_instance(_read(args.instance))
    record = parse_record(_read(args.result))
    violation = verify_record(parsed, record)
    if violation is None:
        print("ok", file=sys.stderr)
        return 0
    print(violation)
    return 1


def _cmd_gen(args: argparse.Namespace) -> int:
    spec = GeneratorSpec(
        family=args.family,
        n=args.n,
        seed=args.seed,
        edge_prob=args.edge_prob,
        modulator=args.modulator,
        s=args.s,
        t_density=args.t_density,
        weighted=args.weighted,
    )
    inst = generate(spec)
    sys.stdout.write(serialize_instance(inst, threshold=None))
    return 0


def _cmd_recognize(args: argparse.Namespace) -> int:
    parsed = parse_instance(_read(args.file))
    witness = find_induced_sp1_p4(parsed.instance.graph, args.s)
    if witness is None:
        print("free")
        return 0
    isolated = " ".join(str(v + 1) for v in witness.isolated)
    path = " ".join(str(v + 1) for v in witness.path)
    print(f"witness isolated: [{isolated}] path: [{path}]")
    return 1


def _cmd_bench(args: argparse.Namespace) -> int:
    rows = run_suite(args.suite, args.out, seed=args.seed)
    for row in rows:
        print(
            f"{row['case']:>24}  n={row['n']:>7}  m={row['m']:>8}  "
            f"{row['seconds']:>8.4f}s  -> {row['result']}"
        )
    print(f"wrote {args.out}/{args.suite}.csv and {args.out}/{args.suite}.png", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sfvs",
        description="Exact subset feedback vertex set solvers on (sP1+P4)-free graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file, JSON record on stdout")
    p_solve.add_argument("file")
    mode = p_solve.add_mutually_exclusive_group()
    mode.add_argument("--weighted", action="store_true", help="weighted solver (default)")
    mode.add_argument("--unweighted", action="store_true", help="unit-weight solver")
    p_solve.add_argument("--s", type=int, default=2, help="pattern parameter for --unweighted")
    p_solve.add_argument("--backend", choices=("dp", "brute", "auto"), default="auto")
    p_solve.add_argument("--brute-threshold", type=int, default=24)
    p_solve.add_argument("--max-modulator", type=int, default=16)
    p_solve.add_argument("--validate-class", choices=("auto", "on", "off"), default="auto")
    p_solve.add_argument("--threads", type=int, default=1)
    p_solve.add_argument("--no-timings", action="store_true", help="omit timings from the record")
    p_solve.set_defaults(func=_cmd_solve)

    p_verify = sub.add_parser("verify", help="re-check a result record against its instance")
    p_verify.add_argument("instance")
    p_verify.add_argument("result")
    p_verify.set_defaults(func=_cmd_verify)

    p_gen = sub.add_parser("gen", help="generate a seeded instance file on stdout")
    p_gen.add_argument("--family", choices=FAMILIES, required=True)
    p_gen.add_argument("--n", type=int, default=10)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--edge-prob", type=float, default=0.5)
    p_gen.add_argument("--modulator", type=int, default=3)
    p_gen.add_argument("--s", type=int, default=2)
    p_gen.add_argument("--t-density", type=float, default=0.35)
    p_gen.add_argument("--weighted", action="store_true")
    p_gen.set_defaults(func=_cmd_gen)

    p_rec = sub.add_parser("recognize", help="search for an induced sP1+P4")
    p_rec.add_argument("--s", type=int, required=True)
    p_rec.add_argument("file")
    p_rec.set_defaults(func=_cmd_recognize)

    p_bench = sub.add_parser("bench", help="run a timing suite, write CSV + figure")
    p_bench.add_argument("--suite", choices=SUITES, required=True)
    p_bench.add_argument("--out", default="bench-out")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.set_defaults(func=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (CapacityError, GenerationError) as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
