"""Vertex-cover kernelizations (Buss, LP) and kernel cascades."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

from .cost import NodeCost
from .graph import Graph, Instance, VertexSet
from .matching import maximum_bipartite_matching
from .rules import NO, YES

PROBE_KS = (8, 16, 32, 64)


@dataclass(frozen=True)
class StageReport:
    name: str
    k_in: int
    k_out: int
    in_vertices: int
    in_edges: int
    out_vertices: int
    out_edges: int
    work: int
    span: int
    verdict: Optional[str] = None

    @property
    def in_size(self) -> int:
        return self.in_vertices + self.in_edges

    @property
    def out_size(self) -> int:
        return self.out_vertices + self.out_edges

    def size_in(self, measure: str) -> int:
        return self.in_edges if measure == "edges" else self.in_vertices

    def size_out(self, measure: str) -> int:
        return self.out_edges if measure == "edges" else self.out_vertices

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "inSize": self.in_size,
            "outSize": self.out_size,
            "work": self.work,
            "span": self.span,
            "kIn": self.k_in,
            "kOut": self.k_out,
            "inVertices": self.in_vertices,
            "inEdges": self.in_edges,
            "outVertices": self.out_vertices,
            "outEdges": self.out_edges,
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class KernelOutcome:
    """Result of a kernelization.

    ``verdict`` is ``"yes"``/``"no"`` when the kernel decided the instance,
    otherwise ``instance`` holds the reduced instance. ``forced`` and
    ``discarded`` are in root ids; on a yes verdict ``forced`` is a cover.
    """

    verdict: Optional[str]
    instance: Optional[Instance]
    forced: VertexSet = ()
    discarded: VertexSet = ()
    stages: Tuple[StageReport, ...] = ()

    @property
    def work(self) -> int:
        return sum(st.work for st in self.stages)

    @property
    def span(self) -> int:
        return sum(st.span for st in self.stages)


@dataclass(frozen=True)
class KernelSpec:
    """A kernel algorithm with its declared size bound and cost orders.

    ``measure`` says whether ``size_bound`` counts edges or vertices of the
    reduced graph.
    """

    name: str
    apply: Callable[..., KernelOutcome] = field(repr=False)
    size_bound: Callable[[int], int] = field(repr=False)
    measure: str
    work_order: str
    span_order: str
    polynomial: bool = True

    def __call__(self, inst: Instance, cost: Optional[NodeCost] = None) -> KernelOutcome:
        return self.apply(inst, cost)


def _report(name, inst, out_graph, k_out, cost, verdict=None) -> StageReport:
    g = inst.graph
    return StageReport(
        name=name,
        k_in=inst.k,
        k_out=k_out,
        in_vertices=g.n,
        in_edges=g.m,
        out_vertices=out_graph.n if out_graph is not None else 0,
        out_edges=out_graph.m if out_graph is not None else 0,
        work=cost.work,
        span=cost.span,
        verdict=verdict,
    )


def buss_kernel(inst: Instance, cost: Optional[NodeCost] = None) -> KernelOutcome:
    """Force vertices of degree > k, drop isolated vertices, enforce the k^2 edge bound.

    High-degree vertices are forced in rounds: each round removes every
    vertex whose current degree exceeds the current budget (each of them
    lies in every small cover), as a parallel implementation would.
    """
    local = NodeCost()
    g, k = inst.graph, inst.k
    forced: List[int] = []
    verdict = None
    while True:
        local.charge("scan", g.n + g.m)
        high = [v for v in range(g.n) if len(g.adj[v]) > k]
        if not high:
            break
        forced.extend(g.labels[v] for v in high)
        k -= len(high)
        if k < 0:
            verdict = NO
            break
        g = g.delete_vertices(high)

    discarded: Tuple[int, ...] = ()
    if verdict is None:
        local.charge("scan", g.n + g.m)
        discarded = g.original(v for v in range(g.n) if not g.adj[v])
        g = g.without_isolated()
        if g.m > k * k:
            verdict = NO
        elif g.m == 0:
            verdict = YES

    if cost is not None:
        cost.absorb(local)
    if verdict is not None:
        stage = _report("buss", inst, None, max(k, 0), local, verdict)
        return KernelOutcome(verdict, None, tuple(sorted(forced)), discarded, (stage,))
    stage = _report("buss", inst, g, k, local)
    return KernelOutcome(None, Instance(g, k), tuple(sorted(forced)), discarded, (stage,))


def half_integral_lp(g: Graph) -> List[float]:
    """Optimal half-integral solution of the vertex-cover LP relaxation.

    Computed from a König cover C of the bipartite double cover (edges
    ``(u, L)-(v, R)`` and ``(v, L)-(u, R)`` per edge ``{u, v}``), with
    ``x_v = |{(v, L), (v, R)} & C| / 2``.
    """
    left = list(range(g.n))
    edges = []
    for u in range(g.n):
        for v in sorted(g.adj[u]):
            edges.append((u, v))
    bm = maximum_bipartite_matching(left, left, edges)
    return [((v in bm.cover_left) + (v in bm.cover_right)) / 2 for v in range(g.n)]


def lp_kernel(inst: Instance, cost: Optional[NodeCost] = None) -> KernelOutcome:
    """Nemhauser-Trotter reduction: force x=1, discard x=0, keep the x=1/2 part.

    The kept part has at most ``2k'`` vertices when the LP value is at most k.
    """
    local = NodeCost()
    g, k = inst.graph, inst.k
    # Hopcroft-Karp on the double cover: O(m sqrt(n)), no parallel version assumed
    touches = (g.n + 2 * g.m) * max(1, int((2 * g.n) ** 0.5))
    local.charge("sequential", touches)
    x = half_integral_lp(g)
    doubled = sum(int(2 * xv) for xv in x)
    if cost is not None:
        cost.absorb(local)

    ones = [v for v in range(g.n) if x[v] == 1.0]
    zeros = [v for v in range(g.n) if x[v] == 0.0]
    halves = [v for v in range(g.n) if x[v] == 0.5]
    forced = g.original(ones)
    discarded = g.original(zeros)
    if doubled > 2 * k:
        return KernelOutcome(NO, None, forced, discarded, (_report("lp", inst, None, k, local, NO),))
    k_out = k - len(ones)
    reduced = g.induced(halves)
    if reduced.m == 0:
        return KernelOutcome(YES, None, forced, discarded, (_report("lp", inst, None, k_out, local, YES),))
    stage = _report("lp", inst, reduced, k_out, local)
    return KernelOutcome(None, Instance(reduced, k_out), forced, discarded, (stage,))


def _buss_bound(k: int) -> int:
    return k * k


def _lp_bound(k: int) -> int:
    return 2 * k


BUSS = KernelSpec("buss", buss_kernel, _buss_bound, "edges", "n + m", "log(n + m)")
LP = KernelSpec("lp", lp_kernel, _lp_bound, "vertices", "m sqrt(n)", "m sqrt(n)")
KERNELS = {"buss": BUSS, "lp": LP}


class CascadeOrderError(ValueError):
    pass


@dataclass(frozen=True)
class Cascade:
    """Kernels applied in sequence, ordered by strictly decreasing size bound."""

    stages: Tuple[KernelSpec, ...]

    def __post_init__(self):
        stages = tuple(self.stages)
        if not stages:
            raise CascadeOrderError("cascade needs at least one stage")
        for a, b in zip(stages, stages[1:]):
            if not all(a.size_bound(k) > b.size_bound(k) for k in PROBE_KS):
                raise CascadeOrderError(f"{a.name} -> {b.name}: size bounds must strictly decrease")
        object.__setattr__(self, "stages", stages)

    @property
    def name(self) -> str:
        return ",".join(st.name for st in self.stages)

    @property
    def size_bound(self):
        return self.stages[-1].size_bound

    @property
    def polynomial(self) -> bool:
        return all(st.polynomial for st in self.stages)

    def __call__(self, inst: Instance, cost: Optional[NodeCost] = None) -> KernelOutcome:
        return cascade(self.stages, inst, cost)


def cascade(stages: Sequence[KernelSpec], inst: Instance, cost: Optional[NodeCost] = None) -> KernelOutcome:
    """Apply ``stages`` in order, stopping at the first verdict.

    Forced and discarded vertices accumulate in root ids; reduced graphs keep
    their label maps, so translation composes automatically.
    """
    if not isinstance(stages, Cascade):
        Cascade(tuple(stages))
        stages = tuple(stages)
    else:
        stages = stages.stages
    forced: List[int] = []
    discarded: List[int] = []
    reports: List[StageReport] = []
    current = inst
    for st in stages:
        out = st(current, cost)
        forced.extend(out.forced)
        discarded.extend(out.discarded)
        reports.extend(out.stages)
        if out.verdict is not None:
            return KernelOutcome(out.verdict, None, tuple(sorted(forced)), tuple(sorted(discarded)), tuple(reports))
        current = out.instance
    return KernelOutcome(None, current, tuple(sorted(forced)), tuple(sorted(discarded)), tuple(reports))


def cascade_prefix_parallel_report(outcome: KernelOutcome, r: int) -> dict:
    """Split a cascade run into a parallel prefix (stages 1..r) and a sequential tail.

    The prefix contributes its charged span; the tail contributes its work as
    time, and its input size is bounded by the prefix's output bound.
    """
    t = len(outcome.stages)
    if not 1 <= r <= max(t, 1):
        raise ValueError(f"r={r} outside 1..{t}")
    prefix, tail = outcome.stages[:r], outcome.stages[r:]
    return {
        "r": r,
        "stages": t,
        "prefixWork": sum(st.work for st in prefix),
        "prefixSpan": sum(st.span for st in prefix),
        "sequentialWork": sum(st.work for st in tail),
        "sequentialInputEdges": tail[0].in_edges if tail else 0,
        "sequentialInputVertices": tail[0].in_vertices if tail else 0,
        "time": sum(st.span for st in prefix) + sum(st.work for st in tail),
    }
