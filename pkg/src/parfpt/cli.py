"""Command-line entry point: ``parfpt solve|kernel|xi|bench|oracle``.

``solve`` and ``oracle`` exit 0 for a yes-instance and 1 for a no-instance;
``kernel`` exits 1 only when the kernels alone reject the instance. Any
error exits 2. All JSON goes to standard output with a fixed key order.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .bench import STRATEGIES, rows_to_csv, rows_to_json, run_bench
from .branching import branching_number, family, family_branching_number
from .engine import NodeBudgetExceeded, RunConfig, metrics_record, run
from .generators import gnp, planted_vc
from .graph import Instance, read_graph
from .kernels import BUSS, KERNELS, LP, Cascade, CascadeOrderError
from .oracle import brute_force_vc
from .rules import RULES, ResourceLimit

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


def _triple(text: str, types):
    parts = text.split(",")
    if len(parts) != len(types):
        raise CliError(f"expected {len(types)} comma-separated values, got {text!r}")
    try:
        return [t(x) for t, x in zip(types, parts)]
    except ValueError:
        raise CliError(f"malformed value list {text!r}") from None


def _load_instance(args) -> Instance:
    sources = [s for s in (args.input, args.gnp, args.planted) if s]
    if len(sources) != 1:
        raise CliError("give exactly one of --input, --gnp, --planted")
    if args.planted:
        n, k, seed = _triple(args.planted, (int, int, int))
        inst = planted_vc(n, k, seed)
        if args.k is not None:
            inst = Instance(inst.graph, args.k, inst.planted)
        return inst
    if args.k is None:
        raise CliError("--k is required unless --planted is used")
    if args.gnp:
        n, p, seed = _triple(args.gnp, (int, float, int))
        return Instance(gnp(n, p, seed), args.k)
    return Instance(read_graph(args.input), args.k)


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="DIMACS or 0-based edge-list file")
    p.add_argument("--gnp", metavar="N,P,SEED", help="random G(n, p) graph")
    p.add_argument("--planted", metavar="N,K,SEED", help="graph with a planted cover of size K")
    p.add_argument("--k", type=int, help="solution budget (defaults to K for --planted)")


def _init_kernel(name: str):
    if name == "none":
        return None
    if name == "cascade":
        return Cascade((BUSS, LP))
    return Cascade((KERNELS[name],))


def cmd_solve(args) -> int:
    inst = _load_instance(args)
    config = RunConfig(
        rule=RULES[args.rule](),
        branch_mode={"b1": "b_one", "bstar": "b_star"}[args.branch],
        exec_mode={"seq": "sequential", "par": "parallel"}[args.exec],
        init_kernel=_init_kernel(args.init_kernel),
        interleave_kernel=None if args.interleave == "none" else KERNELS[args.interleave],
        workers=args.workers,
        node_budget=args.node_budget,
        accounting=args.accounting,
    )
    verdict, metrics = run(config, inst)
    print(json.dumps(metrics_record(config, inst, verdict, metrics)))
    return EXIT_YES if verdict.answer == "yes" else EXIT_NO


def cmd_kernel(args) -> int:
    inst = _load_instance(args)
    names = [s.strip() for s in args.stages.split(",") if s.strip()]
    try:
        stages = Cascade(tuple(KERNELS[n] for n in names))
    except KeyError as exc:
        raise CliError(f"unknown kernel {exc.args[0]!r}") from None
    out = stages(inst)
    for spec, st in zip(stages.stages, out.stages):
        if st.verdict is None and st.size_out(spec.measure) > spec.size_bound(st.k_out):
            raise CliError(f"{spec.name} output exceeds its size bound")
    reduced = out.instance
    record = {
        "verdict": out.verdict,
        "k": inst.k,
        "n": inst.graph.n,
        "m": inst.graph.m,
        "finalK": reduced.k if reduced is not None else None,
        "finalVertices": reduced.graph.n if reduced is not None else 0,
        "finalEdges": reduced.graph.m if reduced is not None else 0,
        "forced": list(out.forced),
        "discardedCount": len(out.discarded),
        "workUnits": out.work,
        "spanUnits": out.span,
        "stages": [st.as_dict() for st in out.stages],
    }
    print(json.dumps(record))
    return EXIT_NO if out.verdict == "no" else EXIT_YES


def cmd_xi(args) -> int:
    vectors = []
    for text in args.vector:
        try:
            d = tuple(int(x) for x in text.split(","))
        except ValueError:
            raise CliError(f"malformed vector {text!r}") from None
        if not d or any(x < 1 for x in d):
            raise CliError(f"branching vector entries must be positive: {text!r}")
        vectors.append(d)
    for d in vectors:
        print(f"xi({','.join(map(str, d))}) = {branching_number(d):.6f}")
    if len(vectors) > 1:
        print(f"xi_D = {family_branching_number(family(*vectors)):.6f}")
    return 0


def _k_range(text: str) -> List[int]:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            return [int(lo)]
        return list(range(int(lo), int(hi) + 1))
    except ValueError:
        raise CliError(f"malformed k range {text!r}") from None


def cmd_bench(args) -> int:
    names = [s.strip() for s in args.strategies.split(",")] if args.strategies else list(STRATEGIES)
    for name in names:
        if name not in STRATEGIES:
            raise CliError(f"unknown strategy {name!r}")
    rows = run_bench(
        names,
        args.family,
        _k_range(args.k_range),
        list(range(args.seed_start, args.seed_start + args.seeds)),
        n=args.n,
        n_per_k=args.n_per_k,
        p=args.p,
        node_budget=args.node_budget,
    )
    text = rows_to_csv(rows) if args.out == "csv" else rows_to_json(rows)
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_oracle(args) -> int:
    inst = _load_instance(args)
    res = brute_force_vc(inst.graph, inst.k)
    print(json.dumps({"optimum": res.optimum, "member": res.member, "witness": list(res.witness)}))
    return EXIT_YES if res.member else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parfpt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide a vertex-cover instance and print run metrics")
    _add_input_flags(p)
    p.add_argument("--rule", choices=sorted(RULES), default="edge")
    p.add_argument("--branch", choices=("b1", "bstar"), default="b1")
    p.add_argument("--exec", choices=("seq", "par"), default="seq")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--init-kernel", choices=("none", "buss", "lp", "cascade"), default="none")
    p.add_argument("--interleave", choices=("none", "buss"), default="none")
    p.add_argument("--accounting", choices=("exhaustive", "fast"), default="exhaustive")
    p.add_argument("--node-budget", type=int, default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("kernel", help="run a kernel cascade and print its stage report")
    _add_input_flags(p)
    p.add_argument("--stages", default="buss,lp", help="comma-separated: buss, lp")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("xi", help="branching numbers of vectors and their family")
    p.add_argument("--vector", action="append", required=True, metavar="D1,D2,...")
    p.set_defaults(func=cmd_xi)

    p = sub.add_parser("bench", help="run the strategy matrix and emit a table")
    p.add_argument("--family", choices=("planted", "gnp"), default="planted")
    p.add_argument("--k-range", default="4..8", metavar="A..B")
    p.add_argument("--seeds", type=int, default=3)
    p.add_argument("--seed-start", type=int, default=0)
    p.add_argument("--strategies", default=None, help=f"comma-separated subset of: {', '.join(STRATEGIES)}")
    p.add_argument("--n", type=int, default=None, help="fixed vertex count (default: n-per-k * k)")
    p.add_argument("--n-per-k", type=int, default=10)
    p.add_argument("--p", type=float, default=0.3, help="edge probability for --family gnp")
    p.add_argument("--node-budget", type=int, default=200_000)
    p.add_argument("--out", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default=None, help="write the table here instead of standard output")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle", help="brute-force minimum vertex cover (small graphs)")
    _add_input_flags(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (CliError, ValueError, OSError, NodeBudgetExceeded, ResourceLimit, CascadeOrderError) as exc:
        print(f"parfpt {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
