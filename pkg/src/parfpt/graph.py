"""Immutable simple graphs, instances and DIMACS / edge-list input."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, TextIO, Tuple, Union

VertexSet = Tuple[int, ...]
Edge = Tuple[int, int]


class GraphError(ValueError):
    """Raised when a graph would violate simplicity or id ranges."""


class ParseError(ValueError):
    """Malformed graph input. ``kind`` distinguishes the failure class."""

    def __init__(self, kind: str, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.kind = kind
        self.line = line


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``labels[v]`` is the id of local vertex ``v`` in the root graph this one
    was derived from, so kernels and search trees can report vertices in
    the ids the user supplied.
    """

    __slots__ = ("adj", "labels", "m")

    def __init__(self, adj: Sequence[Iterable[int]], labels: Optional[Sequence[int]] = None):
        self.adj: Tuple[frozenset, ...] = tuple(frozenset(nb) for nb in adj)
        n = len(self.adj)
        if labels is None:
            labels = range(n)
        self.labels: Tuple[int, ...] = tuple(labels)
        if len(self.labels) != n:
            raise GraphError("label map length differs from vertex count")
        total = 0
        for v, nb in enumerate(self.adj):
            if v in nb:
                raise GraphError(f"self-loop at vertex {v}")
            for u in nb:
                if not 0 <= u < n:
                    raise GraphError(f"neighbor {u} of {v} out of range")
                if v not in self.adj[u]:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
            total += len(nb)
        self.m = total // 2

    @classmethod
    def _trusted(cls, adj: Tuple[frozenset, ...], labels: Tuple[int, ...], m: int) -> "Graph":
        g = object.__new__(cls)
        g.adj, g.labels, g.m = adj, labels, m
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        if n < 0:
            raise GraphError("negative vertex count")
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if v in adj[u]:
                raise GraphError(f"duplicate edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj)

    @classmethod
    def empty(cls, n: int = 0) -> "Graph":
        return cls([()] * n)

    @property
    def n(self) -> int:
        return len(self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(nb) for nb in self.adj), default=0)

    def edges(self) -> Iterator[Edge]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        for u, nb in enumerate(self.adj):
            for v in sorted(nb):
                if u < v:
                    yield (u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adj[u]

    def original(self, vertices: Iterable[int]) -> VertexSet:
        """Translate local ids to root ids, sorted."""
        return tuple(sorted(self.labels[v] for v in vertices))

    def delete_vertices(self, s: Iterable[int]) -> "Graph":
        """Induced subgraph on ``V \\ s`` with compacted ids."""
        drop = set(s)
        for v in drop:
            if not 0 <= v < self.n:
                raise GraphError(f"vertex {v} out of range")
        if not drop:
            return self
        return self.induced(v for v in range(self.n) if v not in drop)

    def induced(self, keep: Iterable[int]) -> "Graph":
        kept = sorted(set(keep))
        index = {v: i for i, v in enumerate(kept)}
        adj = tuple(frozenset(index[u] for u in self.adj[v] if u in index) for v in kept)
        m = sum(len(nb) for nb in adj) // 2
        return Graph._trusted(adj, tuple(self.labels[v] for v in kept), m)

    def without_isolated(self) -> "Graph":
        return self.induced(v for v in range(self.n) if self.adj[v])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adj == other.adj and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.adj, self.labels))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Instance:
    """A graph together with the remaining solution budget."""

    graph: Graph
    k: int
    planted: Optional[VertexSet] = None

    def __post_init__(self):
        if self.k < 0:
            raise GraphError("budget k must be non-negative")


def delete_vertices(g: Graph, s: Iterable[int]) -> Graph:
    return g.delete_vertices(s)


def parse_dimacs(text: Union[str, TextIO, Iterable[str]]) -> Graph:
    """Parse DIMACS ``p edge`` input, or a bare 0-based edge list.

    DIMACS ids are 1-based and converted to 0-based. A file without a
    ``p`` line is read as ``u v`` pairs with ``n`` inferred from the largest id.
    """
    if isinstance(text, str):
        lines = text.splitlines()
    else:
        lines = list(text)

    n: Optional[int] = None
    declared_m = 0
    edges = []
    seen = set()
    bare = False

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if n is not None or bare or edges:
                raise ParseError("header", lineno, "unexpected or repeated 'p' line")
            if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                raise ParseError("header", lineno, f"malformed header {line!r}")
            try:
                n, declared_m = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise ParseError("header", lineno, f"malformed header {line!r}") from None
            if n < 0 or declared_m < 0:
                raise ParseError("header", lineno, "negative counts in header")
            continue

        if tokens[0] == "e":
            if n is None:
                raise ParseError("header", lineno, "edge line before 'p edge' header")
            if len(tokens) != 3:
                raise ParseError("syntax", lineno, f"malformed edge line {line!r}")
            offset = 1
            fields = tokens[1:]
        else:
            if n is not None:
                raise ParseError("syntax", lineno, f"unrecognized line {line!r}")
            if len(tokens) != 2:
                raise ParseError("syntax", lineno, f"malformed edge-list line {line!r}")
            bare = True
            offset = 0
            fields = tokens

        try:
            u, v = (int(t) - offset for t in fields)
        except ValueError:
            raise ParseError("syntax", lineno, f"non-integer vertex id in {line!r}") from None
        if u < 0 or v < 0 or (n is not None and (u >= n or v >= n)):
            raise ParseError("range", lineno, f"vertex id out of range in {line!r}")
        if u == v:
            raise ParseError("self-loop", lineno, f"self-loop on vertex {u + offset}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError("duplicate", lineno, f"duplicate edge {fields[0]} {fields[1]}")
        seen.add(key)
        edges.append(key)

    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    elif len(edges) != declared_m:
        raise ParseError("header", len(lines), f"header declares {declared_m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def read_graph(path: str) -> Graph:
    with open(path) as fh:
        return parse_dimacs(fh)


def to_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"
