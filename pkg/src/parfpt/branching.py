"""Branching vectors, branching numbers and families of vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Tuple

BranchingVector = Tuple[int, ...]

ROOT_TOL = 1e-9
_LOW = 1e-12


def _check_vector(d: Sequence[int]) -> BranchingVector:
    d = tuple(int(x) for x in d)
    if not d:
        raise ValueError("branching vector must be nonempty")
    if any(x < 1 for x in d):
        raise ValueError(f"branching vector entries must be positive: {d}")
    return d


def characteristic(d: Sequence[int], x: float) -> float:
    """``1 - sum x**d_i``; strictly decreasing on (0, 1]."""
    return 1.0 - sum(x**di for di in d)


def branching_number(d: Sequence[int]) -> float:
    """Reciprocal of the root of ``1 - sum x**d_i`` in (0, 1], found by bisection."""
    d = _check_vector(d)
    lo, hi = _LOW, 1.0
    if characteristic(d, hi) >= 0:
        # only the length-1 vectors have their root at x = 1
        return 1.0
    while hi - lo > ROOT_TOL * 1e-3:
        mid = 0.5 * (lo + hi)
        if characteristic(d, mid) > 0:
            lo = mid
        else:
            hi = mid
    return 1.0 / (0.5 * (lo + hi))


@dataclass(frozen=True)
class BranchingFamily:
    """A set D of branching vectors.

    ``members`` lists vectors explicitly. An infinite family additionally
    gives ``tail(i)`` for its members beyond the explicit ones; such a family
    is only usable when ``monotone`` is set, meaning the branching number
    never increases along ``members`` followed by ``tail(0), tail(1), ...``.
    """

    members: Tuple[BranchingVector, ...]
    tail: Optional[Callable[[int], BranchingVector]] = None
    monotone: bool = False
    label: str = ""

    def __post_init__(self):
        if not self.members:
            raise ValueError("branching family must be nonempty")
        object.__setattr__(self, "members", tuple(_check_vector(d) for d in self.members))

    @property
    def infinite(self) -> bool:
        return self.tail is not None

    def sample(self, extra: int = 32) -> Tuple[BranchingVector, ...]:
        """Explicit members plus the first ``extra`` generated ones."""
        if self.tail is None:
            return self.members
        return self.members + tuple(_check_vector(self.tail(i)) for i in range(extra))


def family(*vectors: Iterable[int], label: str = "") -> BranchingFamily:
    return BranchingFamily(tuple(tuple(d) for d in vectors), label=label)


def _degree_tail(i: int) -> BranchingVector:
    return (1, 4 + i)


# branch on a vertex of degree >= 3: take it, or take its >= 3 neighbors
DEGREE_FAMILY = BranchingFamily(((1, 3),), tail=_degree_tail, monotone=True, label="(1,j), j>=3")
EDGE_FAMILY = family((1, 1), label="(1,1)")


def family_branching_number(D: BranchingFamily) -> float:
    """``sup`` of the branching numbers over the family."""
    if D.infinite:
        if not D.monotone:
            raise ValueError("infinite branching family needs a monotonicity declaration")
        return branching_number(D.members[0])
    return max(branching_number(d) for d in D.members)


def predicted_depth_bound(D: BranchingFamily, k: int) -> int:
    """``ceil(k / max_d min_i d_i)``: every branching step spends at least that much budget."""
    if k < 0:
        raise ValueError("k must be non-negative")
    step = max(min(d) for d in D.sample())
    return math.ceil(k / step)


def shallow_depth_bound(k: int) -> int:
    """Depth bound for B* with the matching rule: the budget halves per level."""
    return (max(k, 1) - 1).bit_length() + 2
