"""Search-tree execution with work/span accounting.

Each tree node is charged through a :class:`~parfpt.cost.NodeCost`. Work
is summed over all nodes; span is the largest sum of node spans along a
root-to-leaf path, plus the span of the initial kernel. Children of a node
are independent tasks, so the node set (and with it every metric) does not
depend on how the tree is scheduled.
"""

from __future__ import annotations

import concurrent.futures as cf
import json
import multiprocessing
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple, Union

from .cost import NodeCost
from .cost import estimate_wall_time as _brent
from .graph import Graph, Instance, VertexSet
from .kernels import Cascade, KernelSpec, StageReport
from .rules import NO, YES, RuleImplementation, b_one, b_star

BRANCH_MODES = ("b_one", "b_star")
EXEC_MODES = ("sequential", "parallel")
ACCOUNTING = ("exhaustive", "fast")


class NodeBudgetExceeded(RuntimeError):
    """The search tree grew past ``RunConfig.node_budget``."""


@dataclass(frozen=True)
class RunConfig:
    rule: RuleImplementation
    branch_mode: str = "b_one"
    exec_mode: str = "sequential"
    init_kernel: Optional[Union[Cascade, KernelSpec]] = None
    interleave_kernel: Optional[KernelSpec] = None
    workers: int = 1
    node_budget: Optional[int] = None
    accounting: str = "exhaustive"

    def __post_init__(self):
        if self.branch_mode not in BRANCH_MODES:
            raise ValueError(f"branch_mode must be one of {BRANCH_MODES}")
        if self.exec_mode not in EXEC_MODES:
            raise ValueError(f"exec_mode must be one of {EXEC_MODES}")
        if self.accounting not in ACCOUNTING:
            raise ValueError(f"accounting must be one of {ACCOUNTING}")
        if self.workers < 1:
            raise ValueError("workers must be positive")
        if self.interleave_kernel is not None and not self.interleave_kernel.polynomial:
            raise ValueError("interleaving needs a kernel of polynomial size")

    def fingerprint(self) -> str:
        """Identifies the logical configuration; scheduling choices are left out."""
        init = self.init_kernel.name if self.init_kernel is not None else "none"
        inter = self.interleave_kernel.name if self.interleave_kernel is not None else "none"
        return (
            f"rule={self.rule.name};branch={self.branch_mode};init={init};"
            f"interleave={inter};accounting={self.accounting}"
        )


@dataclass(frozen=True)
class Verdict:
    answer: str
    witness: Optional[VertexSet] = None


@dataclass
class RunMetrics:
    work_units: int = 0
    span_units: int = 0
    tree_size: int = 0
    tree_depth: int = 0
    stages: Tuple[StageReport, ...] = ()
    wall_clock: float = 0.0
    max_node_work: int = 0
    max_node_span: int = 0

    @property
    def init_work(self) -> int:
        return sum(st.work for st in self.stages)

    @property
    def init_span(self) -> int:
        return sum(st.span for st in self.stages)

    @property
    def tree_work(self) -> int:
        return self.work_units - self.init_work

    @property
    def tree_span(self) -> int:
        return self.span_units - self.init_span

    def estimate_wall_time(self, p: int) -> float:
        return _brent(self.work_units, self.span_units, p)


def estimate_wall_time(metrics: RunMetrics, p: int) -> float:
    """Brent bound ``W/p + T`` in cost units."""
    return metrics.estimate_wall_time(p)


def verify_witness(g: Graph, cover) -> bool:
    c = set(cover)
    return all(u in c or v in c for u, v in g.edges())


# -- tree exploration ---------------------------------------------------------

# node: (graph, budget, vertices taken so far in root ids, depth, span above, path)
Node = Tuple[Graph, int, VertexSet, int, int, Tuple[int, ...]]


@dataclass
class _Ctx:
    rule: RuleImplementation
    branch_mode: str
    interleave: Optional[KernelSpec]
    s: int
    on_branch: Optional[Callable] = field(default=None, repr=False)


@dataclass
class _Acc:
    work: int = 0
    span: int = 0
    size: int = 0
    depth: int = 0
    max_node_work: int = 0
    max_node_span: int = 0
    yes_path: Optional[Tuple[int, ...]] = None
    yes_witness: Optional[VertexSet] = None

    def record(self, node: Node, cost: NodeCost) -> None:
        self.size += 1
        self.work += cost.work
        self.span = max(self.span, node[4] + cost.span)
        self.depth = max(self.depth, node[3])
        self.max_node_work = max(self.max_node_work, cost.work)
        self.max_node_span = max(self.max_node_span, cost.span)

    def found(self, path, witness) -> None:
        if self.yes_path is None or path < self.yes_path:
            self.yes_path, self.yes_witness = path, witness

    def merge(self, other: "_Acc") -> None:
        self.work += other.work
        self.size += other.size
        self.span = max(self.span, other.span)
        self.depth = max(self.depth, other.depth)
        self.max_node_work = max(self.max_node_work, other.max_node_work)
        self.max_node_span = max(self.max_node_span, other.max_node_span)
        if other.yes_path is not None:
            self.found(other.yes_path, other.yes_witness)


def _expand(ctx: _Ctx, node: Node):
    """Process one node. Returns ``(verdict, witness, children, cost)``."""
    g, k, taken, depth, above, path = node
    cost = NodeCost().charge("overhead", 1)
    if ctx.interleave is not None:
        out = ctx.interleave(Instance(g, k), cost)
        taken = taken + out.forced
        if out.verdict == NO:
            return NO, None, [], cost
        if out.verdict == YES:
            return YES, tuple(sorted(taken)), [], cost
        g, k = out.instance.graph, out.instance.k

    if ctx.branch_mode == "b_star":
        outcome = b_star(ctx.rule, g, k, (), cost, s=ctx.s)
    else:
        outcome = b_one(ctx.rule, g, k, (), cost)
    if outcome.verdict == YES:
        extra = g.original(ctx.rule.certificate(g, k))
        return YES, tuple(sorted(taken + extra)), [], cost
    if outcome.verdict == NO:
        return NO, None, [], cost
    if ctx.on_branch is not None:
        ctx.on_branch(k, ctx.s, outcome)

    # children are materialized in parallel: one scan per child
    cost.charge("scan", len(outcome.branches) * (g.n + g.m))
    below = above + cost.span
    children = [
        (g.delete_vertices(added), k - spent, taken + g.original(added), depth + 1, below, path + (i,))
        for i, (added, spent) in enumerate(outcome.branches)
    ]
    return None, None, children, cost


def _dfs(ctx: _Ctx, roots: List[Node], acc: _Acc, budget: Optional[int], fast: bool) -> None:
    stack = list(reversed(roots))
    while stack:
        node = stack.pop()
        verdict, witness, children, cost = _expand(ctx, node)
        acc.record(node, cost)
        if budget is not None and acc.size > budget:
            raise NodeBudgetExceeded(f"search tree exceeded {budget} nodes")
        if verdict == YES:
            acc.found(node[5], witness)
            if fast:
                return
        stack.extend(reversed(children))


def _subtree_task(ctx: _Ctx, root: Node, budget: Optional[int], fast: bool) -> _Acc:
    acc = _Acc()
    _dfs(ctx, [root], acc, budget, fast)
    return acc


def _pool_context():
    methods = multiprocessing.get_all_start_methods()
    return multiprocessing.get_context("fork" if "fork" in methods else None)


def _parallel(ctx: _Ctx, root: Node, acc: _Acc, budget: Optional[int], fast: bool, workers: int) -> None:
    # expand breadth-first until there is enough independent work for the pool
    target = 4 * workers
    frontier = deque([root])
    while frontier and len(frontier) < target:
        node = frontier.popleft()
        verdict, witness, children, cost = _expand(ctx, node)
        acc.record(node, cost)
        if budget is not None and acc.size > budget:
            raise NodeBudgetExceeded(f"search tree exceeded {budget} nodes")
        if verdict == YES:
            acc.found(node[5], witness)
            if fast:
                return
        frontier.extend(children)
    if not frontier:
        return

    remote = _Ctx(ctx.rule, ctx.branch_mode, ctx.interleave, ctx.s)
    remaining = None if budget is None else budget - acc.size
    if workers == 1:
        for node in frontier:
            part = _subtree_task(remote, node, remaining, fast)
            acc.merge(part)
            if remaining is not None and acc.size > budget:
                raise NodeBudgetExceeded(f"search tree exceeded {budget} nodes")
            if fast and part.yes_path is not None:
                return
        return

    with cf.ProcessPoolExecutor(max_workers=workers, mp_context=_pool_context()) as pool:
        futures = [pool.submit(_subtree_task, remote, node, remaining, fast) for node in frontier]
        try:
            for fut in cf.as_completed(futures):
                part = fut.result()
                acc.merge(part)
                if budget is not None and acc.size > budget:
                    raise NodeBudgetExceeded(f"search tree exceeded {budget} nodes")
                if fast and part.yes_path is not None:
                    break
        finally:
            for fut in futures:
                fut.cancel()


def run(config: RunConfig, inst: Instance, on_branch: Optional[Callable] = None) -> Tuple[Verdict, RunMetrics]:
    """Decide ``inst`` with the configured kernels and search tree.

    ``on_branch(budget, s, outcome)`` is invoked for every branching step
    executed in this process (all of them in sequential mode).
    """
    start = time.perf_counter()
    metrics = RunMetrics()
    g0 = inst.graph
    taken: VertexSet = ()
    g, k = g0, inst.k

    if config.init_kernel is not None:
        out = config.init_kernel(inst)
        metrics.stages = out.stages
        metrics.work_units = out.work
        metrics.span_units = out.span
        taken = out.forced
        if out.verdict is not None:
            metrics.wall_clock = time.perf_counter() - start
            witness = _to_input_ids(g0, taken) if out.verdict == YES else None
            return Verdict(out.verdict, witness), metrics
        g, k = out.instance.graph, out.instance.k

    ctx = _Ctx(config.rule, config.branch_mode, config.interleave_kernel, config.rule.max_branch_size(g), on_branch)
    root: Node = (g, k, taken, 0, metrics.span_units, ())
    acc = _Acc()
    fast = config.accounting == "fast"
    if config.exec_mode == "parallel":
        _parallel(ctx, root, acc, config.node_budget, fast, config.workers)
    else:
        _dfs(ctx, [root], acc, config.node_budget, fast)

    metrics.work_units += acc.work
    metrics.span_units = max(metrics.span_units, acc.span)
    metrics.tree_size = acc.size
    metrics.tree_depth = acc.depth
    metrics.max_node_work = acc.max_node_work
    metrics.max_node_span = acc.max_node_span
    metrics.wall_clock = time.perf_counter() - start
    if acc.yes_path is not None:
        return Verdict(YES, _to_input_ids(g0, acc.yes_witness)), metrics
    return Verdict(NO), metrics


def _to_input_ids(g: Graph, root_ids) -> VertexSet:
    index = {label: v for v, label in enumerate(g.labels)}
    return tuple(sorted(index[x] for x in set(root_ids)))


def metrics_record(config: RunConfig, inst: Instance, verdict: Verdict, metrics: RunMetrics) -> dict:
    """One run in the metrics schema (insertion order is the stable key order)."""
    return {
        "answer": verdict.answer,
        "witnessSize": len(verdict.witness) if verdict.witness is not None else None,
        "witness": list(verdict.witness) if verdict.witness is not None else None,
        "k": inst.k,
        "n": inst.graph.n,
        "m": inst.graph.m,
        "workUnits": metrics.work_units,
        "spanUnits": metrics.span_units,
        "treeSize": metrics.tree_size,
        "treeDepth": metrics.tree_depth,
        "stages": [st.as_dict() for st in metrics.stages],
        "wallClockSec": round(metrics.wall_clock, 6),
        "config": config.fingerprint(),
    }


def metrics_json(record: dict) -> str:
    return json.dumps(record)
