"""Brute-force vertex cover, the ground truth for small instances."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, VertexSet

MAX_ORACLE_N = 24


@dataclass(frozen=True)
class OracleResult:
    optimum: int
    member: bool
    witness: VertexSet


def brute_force_vc(g: Graph, k: int) -> OracleResult:
    """Minimum vertex cover by trying all vertex subsets in order of size."""
    if g.n > MAX_ORACLE_N:
        raise ValueError(f"oracle limited to n <= {MAX_ORACLE_N}, got {g.n}")
    edge_masks = [(1 << u) | (1 << v) for u, v in g.edges()]
    for size in range(g.n + 1):
        for combo in combinations(range(g.n), size):
            mask = sum(1 << v for v in combo)
            if all(e & mask for e in edge_masks):
                return OracleResult(size, size <= k, combo)
    raise AssertionError("the full vertex set is always a cover")


def is_cover(g: Graph, cover) -> bool:
    c = set(cover)
    return all(u in c or v in c for u, v in g.edges())
