"""Seeded random instances."""

from __future__ import annotations

import random

from .graph import Graph, Instance


def gnp(n: int, p: float, seed: int) -> Graph:
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability {p} outside [0, 1]")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def planted_vc(n: int, k: int, seed: int, density: float = 0.5) -> Instance:
    """Graph whose edges all touch a planted set of ``k`` vertices.

    Layout before shuffling ids: one hub (when there is room for padding),
    the rest of the planted cover, a core of ``k // 2`` non-cover vertices
    wired randomly to the cover, and padding vertices that are leaves of
    the hub. The cover is dense inside too, which keeps the LP relaxation
    half-integral on most of the core. The core depends only on
    ``(k, seed)``, so for large enough ``n`` the graph left after removing
    high-degree vertices does not change with ``n``.
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    if k > n:
        raise ValueError(f"planted cover size {k} exceeds n={n}")
    core_rng = random.Random(seed)
    r = min(n - k, k // 2)
    padding = n - k - r
    hubs = 1 if padding > 0 and k > 0 else 0

    cover = list(range(k))
    core_cover = cover[hubs:]
    core = list(range(k, k + r))
    edges = set()
    for v in core:
        for u in core_cover:
            if core_rng.random() < density:
                edges.add((u, v))
    for i, u in enumerate(core_cover):
        for w in core_cover[i + 1:]:
            if core_rng.random() < density:
                edges.add((u, w))
    for v in range(k + r, n):
        edges.add((0, v))

    perm = list(range(n))
    random.Random(f"ids:{seed}:{n}").shuffle(perm)
    g = Graph.from_edges(n, [(perm[u], perm[v]) for u, v in sorted(edges)])
    return Instance(g, k, planted=tuple(sorted(perm[u] for u in cover)))


def generate_instance(kind: str, n: int, param, seed: int) -> Instance:
    """``gnp`` (param = edge probability, budget n) or ``planted_vc`` (param = cover size)."""
    if kind == "gnp":
        return Instance(gnp(n, float(param), seed), n)
    if kind in ("planted_vc", "planted"):
        if int(param) != param:
            raise ValueError("planted cover size must be an integer")
        return planted_vc(n, int(param), seed)
    raise ValueError(f"unknown instance kind {kind!r}")
