"""Fixed benchmark suites: delimited timing output plus rendered figures.

Each suite writes <suite>.csv and a matplotlib figure <suite>.png into the
output directory and returns its rows.  Timings are wall-clock and therefore
not deterministic; everything else about a suite (instances, sizes, seeds)
is.  The full solver pipelines are only exercised at small sizes on purpose:
their guess enumeration is high-degree polynomial, so large inputs belong
to the cograph DP and checker suites, which are the near-linear paths.
"""

from __future__ import annotations

import csv
import random
import time
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .checker import is_t_forest
from .cotree import cotree_graph
from .graph import Graph, Instance
from .oracle import GeneratorSpec, generate, random_cotree
from .pipeline import solve_unweighted_sp1p4, solve_weighted_2p1p4
from .reduced import max_tforest_cograph

SUITES = ("checker", "cograph", "pipeline")


def _random_gnm(n: int, m: int, rng: random.Random) -> Graph:
    seen: set[tuple[int, int]] = set()
    while len(seen) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            seen.add((min(u, v), max(u, v)))
    return Graph(n, seen)


def _checker_rows(seed: int) -> list[dict]:
    rows = []
    rng = random.Random(seed)
    for n in (20_000, 50_000, 100_000):
        m = 3 * n
        g = _random_gnm(n, m, rng)
        t_mask = 0
        for v in rng.sample(range(n), max(1, n // 100)):
            t_mask |= 1 << v
        start = time.perf_counter()
        accepted = is_t_forest(g, t_mask)
        elapsed = time.perf_counter() - start
        rows.append(
            {"case": "gnm_check", "n": n, "m": m, "seconds": round(elapsed, 4), "result": accepted}
        )
    return rows


def _cograph_rows(seed: int) -> list[dict]:
    rows = []
    for n in (250, 500, 1000, 2000):
        rng = random.Random(seed + n)
        tree = random_cotree(n, rng)
        g = cotree_graph(tree)
        t_mask = 0
        for v in range(n):
            if rng.random() < 0.3:
                t_mask |= 1 << v
        inst = Instance.unit(g, t_mask)
        start = time.perf_counter()
        sol = max_tforest_cograph(tree, inst)
        elapsed = time.perf_counter() - start
        rows.append(
            {
                "case": "cotree_dp",
                "n": n,
                "m": g.m,
                "seconds": round(elapsed, 4),
                "result": str(sol.weight),
            }
        )
    return rows


def _pipeline_rows(seed: int) -> list[dict]:
    rows = []
    for idx in range(4):
        spec = GeneratorSpec(
            "sp1p4_free_filtered", n=9, seed=seed + idx, s=2, weighted=True, t_density=0.4
        )
        inst = generate(spec)
        start = time.perf_counter()
        rep = solve_weighted_2p1p4(inst, validate_class="off")
        elapsed = time.perf_counter() - start
        rows.append(
            {
                "case": f"weighted_seed{seed + idx}",
                "n": inst.n,
                "m": inst.graph.m,
                "seconds": round(elapsed, 4),
                "result": str(rep.best.weight),
            }
        )
    for idx in range(4):
        spec = GeneratorSpec(
            "sp1p4_free_filtered", n=9, seed=seed + 50 + idx, s=2, t_density=0.4
        )
        inst = generate(spec)
        start = time.perf_counter()
        rep = solve_unweighted_sp1p4(inst, 2, validate_class="off")
        elapsed = time.perf_counter() - start
        rows.append(
            {
                "case": f"unweighted_seed{seed + 50 + idx}",
                "n": inst.n,
                "m": inst.graph.m,
                "seconds": round(elapsed, 4),
                "result": str(rep.best.weight),
            }
        )
    return rows


_RUNNERS = {
    "checker": _checker_rows,
    "cograph": _cograph_rows,
    "pipeline": _pipeline_rows,
}


def _render_figure(suite: str, rows: list[dict], path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    xs = [row["n"] for row in rows]
    ys = [row["seconds"] for row in rows]
    ax.plot(xs, ys, marker="o", linewidth=1.5)
    for row in rows:
        ax.annotate(
            row["case"],
            (row["n"], row["seconds"]),
            textcoords="offset points",
            xytext=(4, 4),
            fontsize=7,
        )
    ax.set_xlabel("vertices")
    ax.set_ylabel("seconds")
    ax.set_title(f"{suite} suite timings")
    if len(set(xs)) > 1:
        ax.set_xscale("log")
    ax.set_yscale("log")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def run_suite(suite: str, out_dir: str | Path, seed: int = 0) -> list[dict]:
    if suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = _RUNNERS[suite](seed)
    csv_path = out / f"{suite}.csv"
    with csv_path.open("w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=["case", "n", "m", "seconds", "result"])
        writer.writeheader()
        writer.writerows(rows)
    _render_figure(suite, rows, out / f"{suite}.png")
    return rows
