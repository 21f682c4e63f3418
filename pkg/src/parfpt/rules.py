"""Local branching rules for vertex cover and the B1 / B* branch generators.

A rule is an implementation triple ``decide / choices / branches`` working
on a graph ``g``, a budget ``k`` and a partial solution ``p`` (local ids).
Everything is evaluated on ``g - p`` without materializing it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .branching import DEGREE_FAMILY, EDGE_FAMILY, BranchingFamily
from .cost import charge_cost
from .graph import Edge, Graph, VertexSet
from .matching import maximal_matching, maximal_set_packing

YES = "yes"
NO = "no"


class ContractViolation(ValueError):
    """A rule procedure was called outside the inputs it is defined on."""


class ResourceLimit(RuntimeError):
    """A computation would exceed a configured size guard."""


def _residual_edges(g: Graph, p: FrozenSet[int]) -> List[Edge]:
    if not p:
        return list(g.edges())
    return [(u, v) for u, v in g.edges() if u not in p and v not in p]


def _residual_degree(g: Graph, p: FrozenSet[int], v: int) -> int:
    if not p:
        return len(g.adj[v])
    return len(g.adj[v] - p)


def _closed_neighborhood(g: Graph, p: FrozenSet[int], v: int) -> VertexSet:
    return tuple(sorted((g.adj[v] - p) | {v}))


def _touches(g: Graph) -> int:
    return g.n + g.m


def _components(g: Graph, p: FrozenSet[int]) -> List[List[int]]:
    """Connected components of ``g - p`` (vertices listed in traversal order)."""
    seen = set(p)
    comps = []
    for start in range(g.n):
        if start in seen:
            continue
        seen.add(start)
        comp, stack = [], [start]
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in sorted(g.adj[v] - seen, reverse=True):
                seen.add(u)
                stack.append(u)
        comps.append(comp)
    return comps


def _walk(g: Graph, p: FrozenSet[int], comp: Sequence[int]) -> List[int]:
    """Order the vertices of a path or cycle component along the path/cycle."""
    members = set(comp)
    ends = [v for v in comp if len((g.adj[v] - p) & members) < 2]
    start = min(ends) if ends else min(comp)
    order, prev, cur = [start], None, start
    while True:
        nxt = [u for u in sorted((g.adj[cur] - p) & members) if u != prev and u != start]
        if not nxt or nxt[0] in order:
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order


def degree_two_cover(g: Graph, p: FrozenSet[int] = frozenset()) -> VertexSet:
    """Minimum vertex cover of ``g - p`` when its maximum degree is at most 2."""
    cover = []
    for comp in _components(g, p):
        if len(comp) < 2:
            continue
        walk = _walk(g, p, comp)
        if any(_residual_degree(g, p, v) > 2 for v in walk):
            raise ContractViolation("degree-two solver called on a vertex of degree >= 3")
        cover.extend(walk[1::2])
        is_cycle = all(_residual_degree(g, p, v) == 2 for v in walk)
        if is_cycle and len(walk) % 2 == 1:
            cover.append(walk[0])
    return tuple(sorted(cover))


def solve_degree_two(g: Graph, budget: int, p: FrozenSet[int] = frozenset()) -> str:
    """Decide vertex cover on a disjoint union of paths and cycles.

    A path with e edges needs ceil(e/2) vertices, a cycle of length l
    needs ceil(l/2).
    """
    if any(_residual_degree(g, p, v) > 2 for v in range(g.n) if v not in p):
        raise ContractViolation("graph has a vertex of degree >= 3")
    return YES if len(degree_two_cover(g, p)) <= budget else NO


class RuleImplementation:
    """Base class of the shipped rules.

    ``family`` is the set of branching vectors B1 produces with this rule;
    ``max_branch_size(g)`` is the bound ``s`` on any emitted branch set for
    instances derived from ``g``.
    """

    name = "rule"
    family: Optional[BranchingFamily] = None

    def decide(self, g: Graph, k: int, p: FrozenSet[int] = frozenset(), cost=None) -> Optional[str]:
        raise NotImplementedError

    def choices(self, g: Graph, k: int, p: FrozenSet[int] = frozenset(), cost=None) -> List[VertexSet]:
        raise NotImplementedError

    def branches(self, g: Graph, k: int, p: FrozenSet[int], s: Sequence[int], cost=None) -> List[VertexSet]:
        raise NotImplementedError

    def certificate(self, g: Graph, k: int, p: FrozenSet[int] = frozenset()) -> VertexSet:
        """Vertices completing ``p`` to a cover when ``decide`` said yes."""
        return ()

    def max_branch_size(self, g: Graph) -> int:
        return 1

    def __repr__(self) -> str:
        return f"<rule {self.name}>"

    def __eq__(self, other):
        return type(self) is type(other)

    def __hash__(self):
        return hash(type(self))


class EdgeRule(RuleImplementation):
    """Branch on an edge {u, v}: take u or take v."""

    name = "edge"
    family = EDGE_FAMILY

    def decide(self, g, k, p=frozenset(), cost=None):
        charge_cost(cost, "scan", _touches(g))
        budget = k - len(p)
        if budget < 0:
            return NO
        if not any(_residual_degree(g, p, v) for v in range(g.n) if v not in p):
            return YES
        if budget == 0:
            return NO
        return None

    def choices(self, g, k, p=frozenset(), cost=None):
        charge_cost(cost, "scan", _touches(g))
        return _residual_edges(g, p)

    def branches(self, g, k, p, s, cost=None):
        charge_cost(cost, "scan", 2)
        s = tuple(s)
        if len(s) != 2 or s[0] in p or s[1] in p or not g.has_edge(s[0], s[1]):
            raise ContractViolation(f"{s} is not an edge of G - P")
        u, v = sorted(s)
        return [(u,), (v,)]


class MatchingRule(EdgeRule):
    """Edge rule whose choices are a maximal matching, with matching-based decisions.

    If the matching has more than ``k'`` edges no cover fits; if its
    endpoints (2|M| vertices) fit in the budget they form a cover.
    """

    name = "matching"

    def _matching(self, g, p, cost):
        charge_cost(cost, "matching", _touches(g))
        return maximal_matching(g, exclude=p)

    def decide(self, g, k, p=frozenset(), cost=None):
        budget = k - len(p)
        if budget < 0:
            return NO
        m = self._matching(g, p, cost)
        if not m:
            return YES
        if len(m) > budget:
            return NO
        if 2 * len(m) <= budget:
            return YES
        return None

    def certificate(self, g, k, p=frozenset()):
        return tuple(sorted(v for e in maximal_matching(g, exclude=p) for v in e))

    def choices(self, g, k, p=frozenset(), cost=None):
        return [tuple(e) for e in self._matching(g, p, cost)]


class DegreeRule(RuleImplementation):
    """Branch on a vertex v of degree >= 3: take v, or take all its neighbors.

    Instances of maximum degree 2 are decided directly.
    """

    name = "degree"
    family = DEGREE_FAMILY

    def decide(self, g, k, p=frozenset(), cost=None):
        charge_cost(cost, "scan", _touches(g))
        budget = k - len(p)
        if budget < 0:
            return NO
        if all(_residual_degree(g, p, v) <= 2 for v in range(g.n) if v not in p):
            charge_cost(cost, "scan", _touches(g))
            return solve_degree_two(g, budget, p)
        return None

    def certificate(self, g, k, p=frozenset()):
        return degree_two_cover(g, p)

    def choices(self, g, k, p=frozenset(), cost=None):
        charge_cost(cost, "scan", _touches(g))
        ranked = sorted(
            (v for v in range(g.n) if v not in p and _residual_degree(g, p, v) >= 3),
            key=lambda v: (-_residual_degree(g, p, v), v),
        )
        out, seen = [], set()
        for v in ranked:
            s = _closed_neighborhood(g, p, v)
            if s not in seen:
                seen.add(s)
                out.append(s)
        return out

    def center(self, g, p, s) -> int:
        s = tuple(sorted(s))
        for v in s:
            if v not in p and _residual_degree(g, p, v) >= 3 and _closed_neighborhood(g, p, v) == s:
                return v
        raise ContractViolation(f"{s} is not the closed neighborhood of a degree >= 3 vertex")

    def branches(self, g, k, p, s, cost=None):
        charge_cost(cost, "scan", len(tuple(s)))
        v = self.center(g, p, s)
        rest = tuple(u for u in sorted(s) if u != v)
        return [(v,), rest]

    def max_branch_size(self, g):
        return max(g.max_degree(), 1)


class BruteForceRule(RuleImplementation):
    """Decides every instance by enumerating candidate covers (no branching).

    Used after a kernel, where the instance size depends on ``k`` only.
    """

    name = "brute"
    family = None

    def __init__(self, max_vertices: int = 40):
        self.max_vertices = max_vertices

    def _solve(self, g, k, p, cost=None):
        budget = k - len(p)
        if budget < 0:
            return None
        verts = [v for v in range(g.n) if v not in p and _residual_degree(g, p, v)]
        if len(verts) > self.max_vertices:
            raise ResourceLimit(f"brute force over {len(verts)} vertices exceeds guard {self.max_vertices}")
        bit = {v: 1 << i for i, v in enumerate(verts)}
        edges = [bit[u] | bit[v] for u, v in _residual_edges(g, p)]
        tested = 0
        found = None
        for size in range(0, min(budget, len(verts)) + 1):
            for combo in itertools.combinations(range(len(verts)), size):
                tested += 1
                mask = 0
                for i in combo:
                    mask |= 1 << i
                if all(e & mask for e in edges):
                    found = tuple(verts[i] for i in combo)
                    break
            if found is not None:
                break
        charge_cost(cost, "scan", tested * (len(edges) + 1))
        return found

    def decide(self, g, k, p=frozenset(), cost=None):
        return NO if self._solve(g, k, p, cost) is None else YES

    def certificate(self, g, k, p=frozenset()):
        return tuple(sorted(self._solve(g, k, p)))

    def choices(self, g, k, p=frozenset(), cost=None):
        raise ContractViolation("brute-force rule decides every instance")

    def branches(self, g, k, p, s, cost=None):
        raise ContractViolation("brute-force rule decides every instance")

    def __eq__(self, other):
        return isinstance(other, BruteForceRule) and other.max_vertices == self.max_vertices

    def __hash__(self):
        return hash((BruteForceRule, self.max_vertices))


def vc_edge_rule() -> EdgeRule:
    return EdgeRule()


def vc_matching_rule() -> MatchingRule:
    return MatchingRule()


def vc_degree_rule() -> DegreeRule:
    return DegreeRule()


RULES = {"edge": EdgeRule, "matching": MatchingRule, "degree": DegreeRule, "brute": BruteForceRule}


@dataclass(frozen=True)
class BranchOutcome:
    """Either a verdict or a nonempty list of ``(added vertices, budget spent)`` branches."""

    verdict: Optional[str] = None
    branches: Tuple[Tuple[VertexSet, int], ...] = ()
    packing: Tuple[VertexSet, ...] = ()

    @property
    def decided(self) -> bool:
        return self.verdict is not None


def _emit(p: FrozenSet[int], k: int, combos: Iterable[Tuple[VertexSet, ...]]) -> BranchOutcome:
    budget = k - len(p)
    out = []
    for xs in combos:
        added = set(p)
        for x in xs:
            added.update(x)
        spent = len(added) - len(p)
        # a branch spending more than the budget cannot lead to a solution
        if spent <= budget:
            out.append((tuple(sorted(added)), spent))
    if not out:
        return BranchOutcome(verdict=NO)
    return BranchOutcome(branches=tuple(out))


def b_one(rule: RuleImplementation, g: Graph, k: int, p: Iterable[int] = (), cost=None) -> BranchOutcome:
    """Standard branching: branch on the first structure returned by ``choices``."""
    p = frozenset(p)
    if len(p) > k:
        raise ContractViolation("partial solution exceeds budget")
    verdict = rule.decide(g, k, p, cost)
    if verdict is not None:
        return BranchOutcome(verdict=verdict)
    n_choices = rule.choices(g, k, p, cost)
    if not n_choices:
        raise ContractViolation(f"{rule.name}: choices empty on an undecided instance")
    s = tuple(n_choices[0])
    fam = rule.branches(g, k, p, s, cost)
    return _emit(p, k, ((x,) for x in fam))


def packing_cap(k: int, p_size: int, s: int) -> int:
    return max(1, (k - p_size) // (s + 1))


def b_star(
    rule: RuleImplementation, g: Graph, k: int, p: Iterable[int] = (), cost=None, s: Optional[int] = None
) -> BranchOutcome:
    """Branch simultaneously on a capped maximal packing of disjoint structures.

    ``s`` bounds the size of any branch set; it defaults to the rule's bound
    on ``g``. The packing holds at most ``max(1, (k - |p|) // (s + 1))``
    structures, so every child keeps a constant fraction of the budget.
    """
    p = frozenset(p)
    if len(p) > k:
        raise ContractViolation("partial solution exceeds budget")
    verdict = rule.decide(g, k, p, cost)
    if verdict is not None:
        return BranchOutcome(verdict=verdict)
    if s is None:
        s = rule.max_branch_size(g)
    n_choices = rule.choices(g, k, p, cost)
    if not n_choices:
        raise ContractViolation(f"{rule.name}: choices empty on an undecided instance")
    cap = packing_cap(k, len(p), s)
    charge_cost(cost, "packing", sum(len(x) for x in n_choices))
    packing = maximal_set_packing(n_choices, cap)
    families = [rule.branches(g, k, p, sj, cost) for sj in packing]
    out = _emit(p, k, itertools.product(*families))
    return BranchOutcome(verdict=out.verdict, branches=out.branches, packing=tuple(packing))
