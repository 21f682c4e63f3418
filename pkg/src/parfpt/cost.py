"""Work/span cost model.

One unit is one vertex or edge touch. Every primitive declares its work as
its touch count and its span as ``ceil(log2(touches + 2)) ** c`` (capped at
the touch count) where the exponent reflects the parallel bound it stands
in for:

========== === =====================================================
kind        c   stands for
========== === =====================================================
overhead    -   one unit of work and span per search-tree node
scan        1   parallel scans, reductions, filtering, induced subgraphs
matching    3   maximal matching in O(log^3 n)
packing     4   maximal set packing via conflict-graph MIS in O(log^4 n)
sequential  -   span equals work (no parallel implementation assumed)
========== === =====================================================
"""

from __future__ import annotations

from dataclasses import dataclass

SPAN_EXPONENT = {"scan": 1, "matching": 3, "packing": 4}


def clog2(x: int) -> int:
    return (x - 1).bit_length() if x > 1 else 0


def span_of(kind: str, touches: int) -> int:
    if kind == "overhead":
        return touches
    if kind == "sequential":
        return touches
    try:
        c = SPAN_EXPONENT[kind]
    except KeyError:
        raise ValueError(f"unknown cost kind {kind!r}") from None
    # never more dependent steps than touches
    return min(touches, clog2(touches + 2) ** c)


@dataclass
class NodeCost:
    """Charges accumulated while processing one search-tree node (or one kernel run).

    Charges inside a node are sequential, so both work and span add up.
    """

    work: int = 0
    span: int = 0

    def charge(self, kind: str, touches: int) -> "NodeCost":
        touches = max(int(touches), 0)
        self.work += touches
        self.span += span_of(kind, touches)
        return self

    def absorb(self, other: "NodeCost") -> None:
        self.work += other.work
        self.span += other.span


def charge_cost(cost, kind: str, touches: int) -> None:
    """Charge ``cost`` if instrumentation is on; ``cost`` may be ``None``."""
    if cost is not None:
        cost.charge(kind, touches)


def estimate_wall_time(work: int, span: int, p: int) -> float:
    """Brent upper bound ``W/p + T`` in cost units."""
    if p < 1:
        raise ValueError("processor count must be positive")
    return work / p + span
