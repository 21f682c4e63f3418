"""Matchings and packings used by the branching rules and the LP kernel.

Maximal matching and maximal set packing are greedy scans in a fixed order
rather than the polylog-time parallel algorithms; the engine still charges
them as polylog-span primitives (see ``parfpt.cost``).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

from .graph import Edge, Graph, VertexSet


def maximal_matching(g: Graph, exclude: Iterable[int] = ()) -> List[Edge]:
    """Greedy maximal matching of ``g - exclude``, scanning edges in ascending order."""
    used = set(exclude)
    blocked = set(used)
    matching = []
    for u, v in g.edges():
        if u in blocked or v in blocked:
            continue
        matching.append((u, v))
        blocked.add(u)
        blocked.add(v)
    return matching


def conflict_graph(structures: Sequence[Iterable[int]]) -> List[Set[int]]:
    """Adjacency over structure indices; two structures conflict when they intersect."""
    owners: Dict[int, List[int]] = {}
    for i, s in enumerate(structures):
        for v in s:
            owners.setdefault(v, []).append(i)
    conflicts: List[Set[int]] = [set() for _ in structures]
    for idx in owners.values():
        for a in idx:
            for b in idx:
                if a != b:
                    conflicts[a].add(b)
    return conflicts


def greedy_independent_set(adj: Sequence[Set[int]], cap: Optional[int] = None) -> List[int]:
    """Maximal independent set taken greedily in index order, stopped at ``cap`` members."""
    chosen: List[int] = []
    blocked: Set[int] = set()
    for v in range(len(adj)):
        if cap is not None and len(chosen) >= cap:
            break
        if v in blocked:
            continue
        chosen.append(v)
        blocked.add(v)
        blocked.update(adj[v])
    return chosen


def maximal_set_packing(structures: Sequence[Sequence[int]], cap: int) -> List[VertexSet]:
    """Pairwise-disjoint subsequence of ``structures`` of size at most ``cap``.

    Built as an independent set of the conflict graph. If fewer than ``cap``
    structures are returned, every other structure meets one of them.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    conflicts = conflict_graph(structures)
    return [tuple(sorted(structures[i])) for i in greedy_independent_set(conflicts, cap)]


@dataclass
class BipartiteMatching:
    """Maximum matching of a bipartite graph and the König cover derived from it."""

    pairs: List[Tuple[Hashable, Hashable]]
    cover_left: Set[Hashable]
    cover_right: Set[Hashable]

    @property
    def size(self) -> int:
        return len(self.pairs)

    @property
    def cover(self) -> Set[Tuple[str, Hashable]]:
        return {("L", u) for u in self.cover_left} | {("R", v) for v in self.cover_right}


_INF = float("inf")


def maximum_bipartite_matching(
    left: Sequence[Hashable], right: Sequence[Hashable], edges: Iterable[Tuple[Hashable, Hashable]]
) -> BipartiteMatching:
    """Hopcroft-Karp with a König vertex cover.

    Vertices are visited in the order given and neighbor lists keep edge
    order, so the result is deterministic for fixed input.
    """
    right_set = set(right)
    graph: Dict[Hashable, List[Hashable]] = {u: [] for u in left}
    for u, v in edges:
        if u not in graph or v not in right_set:
            raise ValueError(f"edge ({u!r}, {v!r}) is not in left x right")
        graph[u].append(v)

    pair_left: Dict[Hashable, Hashable] = {}
    pair_right: Dict[Hashable, Hashable] = {}
    dist: Dict[Hashable, float] = {}

    def bfs() -> bool:
        queue = deque()
        for u in left:
            if u in pair_left:
                dist[u] = _INF
            else:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for v in graph[u]:
                w = pair_right.get(v)
                if w is None:
                    found = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(root: Hashable) -> bool:
        # iterative augmenting-path search along the BFS layering
        stack = [(root, iter(graph[root]))]
        path = []
        while stack:
            u, it = stack[-1]
            advanced = False
            for v in it:
                w = pair_right.get(v)
                if w is None:
                    path.append((u, v))
                    for a, b in path:
                        pair_left[a] = b
                        pair_right[b] = a
                    return True
                if dist[w] == dist[u] + 1:
                    path.append((u, v))
                    stack.append((w, iter(graph[w])))
                    advanced = True
                    break
            if not advanced:
                dist[u] = _INF
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for u in left:
            if u not in pair_left:
                dfs(u)

    # König: Z = vertices reachable from free left vertices by alternating paths
    z_left: Set[Hashable] = {u for u in left if u not in pair_left}
    z_right: Set[Hashable] = set()
    queue = deque(u for u in left if u not in pair_left)
    while queue:
        u = queue.popleft()
        for v in graph[u]:
            if v in z_right:
                continue
            z_right.add(v)
            w = pair_right.get(v)
            if w is not None and w not in z_left:
                z_left.add(w)
                queue.append(w)

    pairs = [(u, pair_left[u]) for u in left if u in pair_left]
    return BipartiteMatching(
        pairs=pairs,
        cover_left={u for u in left if u not in z_left},
        cover_right=z_right,
    )
