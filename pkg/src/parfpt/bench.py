"""Named solver strategies and the benchmark matrix.

The six strategies are desk-scale analogues of the work/time trade-off
for vertex cover, from a Buss kernel plus brute force down to a cascade
kernel feeding the degree-3 branching rule.
"""

from __future__ import annotations

import csv
import io
import json
import statistics
from dataclasses import asdict, dataclass, replace
from typing import Dict, Iterable, List, Optional, Sequence

from .branching import (
    DEGREE_FAMILY,
    EDGE_FAMILY,
    family_branching_number,
    predicted_depth_bound,
    shallow_depth_bound,
)
from .engine import NodeBudgetExceeded, RunConfig, run
from .generators import gnp, planted_vc
from .graph import Instance
from .kernels import BUSS, LP, Cascade
from .rules import BruteForceRule, DegreeRule, EdgeRule, MatchingRule, ResourceLimit

STRATEGIES: Dict[str, RunConfig] = {
    "buss-brute": RunConfig(BruteForceRule(), "b_one", init_kernel=Cascade((BUSS,))),
    "b1-edge": RunConfig(EdgeRule(), "b_one"),
    "bstar-matching": RunConfig(MatchingRule(), "b_star"),
    "b1-degree": RunConfig(DegreeRule(), "b_one"),
    "bstar-matching-interleave": RunConfig(
        MatchingRule(), "b_star", init_kernel=Cascade((BUSS, LP)), interleave_kernel=BUSS
    ),
    "cascade-b1-degree": RunConfig(DegreeRule(), "b_one", init_kernel=Cascade((BUSS, LP))),
}


def strategy(name: str, **overrides) -> RunConfig:
    try:
        base = STRATEGIES[name]
    except KeyError:
        raise ValueError(f"unknown strategy {name!r}; choose from {', '.join(STRATEGIES)}") from None
    return replace(base, **overrides)


def predicted(name: str, k: int) -> dict:
    """Branching number and depth bound the theory predicts for a strategy."""
    cfg = STRATEGIES[name]
    if cfg.rule.family is None:
        return {"xi": None, "xiPowK": None, "predictedDepth": 0}
    xi = family_branching_number(cfg.rule.family)
    if cfg.branch_mode == "b_star":
        depth = shallow_depth_bound(k)
    else:
        depth = predicted_depth_bound(cfg.rule.family, k)
    return {"xi": round(xi, 6), "xiPowK": round(xi**k, 3), "predictedDepth": depth}


@dataclass
class BenchRow:
    strategy: str
    config: str
    family: str
    n: int
    k: int
    seeds: str
    runs: int
    yes: int
    medianWork: Optional[float]
    medianSpan: Optional[float]
    medianTreeSize: Optional[float]
    medianTreeDepth: Optional[float]
    medianTreeWork: Optional[float]
    medianWallClock: Optional[float]
    maxTreeDepth: Optional[int]
    xi: Optional[float]
    xiPowK: Optional[float]
    predictedDepth: int
    status: str = "ok"


def make_instance(family: str, n: int, k: int, seed: int, p: float = 0.3) -> Instance:
    if family == "planted":
        return planted_vc(n, k, seed)
    if family == "gnp":
        return Instance(gnp(n, p, seed), k)
    raise ValueError(f"unknown family {family!r}")


def _median(xs):
    return statistics.median(xs) if xs else None


def bench_row(
    name: str,
    family: str,
    n: int,
    k: int,
    seeds: Sequence[int],
    p: float = 0.3,
    node_budget: Optional[int] = 200_000,
    exec_mode: str = "sequential",
    workers: int = 1,
) -> BenchRow:
    cfg = strategy(name, accounting="exhaustive", node_budget=node_budget, exec_mode=exec_mode, workers=workers)
    results = []
    status = "ok"
    for seed in seeds:
        inst = make_instance(family, n, k, seed, p)
        try:
            results.append(run(cfg, inst))
        except (NodeBudgetExceeded, ResourceLimit) as exc:
            status = f"error: seed {seed}: {exc}"
            break
    ms = [m for _, m in results]
    seed_list = list(seeds)
    return BenchRow(
        strategy=name,
        config=cfg.fingerprint(),
        family=family if family != "gnp" else f"gnp(p={p})",
        n=n,
        k=k,
        seeds=f"{seed_list[0]}..{seed_list[-1]}" if seed_list else "",
        runs=len(results),
        yes=sum(v.answer == "yes" for v, _ in results),
        medianWork=_median([m.work_units for m in ms]),
        medianSpan=_median([m.span_units for m in ms]),
        medianTreeSize=_median([m.tree_size for m in ms]),
        medianTreeDepth=_median([m.tree_depth for m in ms]),
        medianTreeWork=_median([m.tree_work for m in ms]),
        medianWallClock=_median([round(m.wall_clock, 6) for m in ms]),
        maxTreeDepth=max((m.tree_depth for m in ms), default=None),
        status=status,
        **predicted(name, k),
    )


def run_bench(
    strategies: Iterable[str],
    family: str,
    ks: Iterable[int],
    seeds: Sequence[int],
    n: Optional[int] = None,
    n_per_k: int = 10,
    p: float = 0.3,
    node_budget: Optional[int] = 200_000,
) -> List[BenchRow]:
    if len(seeds) < 3:
        raise ValueError("bench rows aggregate over at least 3 seeds")
    rows = []
    for name in strategies:
        for k in ks:
            size = n if n is not None else max(n_per_k * k, k)
            rows.append(bench_row(name, family, size, k, seeds, p, node_budget))
    return rows


def rows_to_csv(rows: Sequence[BenchRow]) -> str:
    buf = io.StringIO()
    fields = list(BenchRow.__dataclass_fields__)
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(asdict(row))
    return buf.getvalue()


def rows_to_json(rows: Sequence[BenchRow]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2) + "\n"
