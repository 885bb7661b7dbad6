"""Bookkeeping shared by the reconstruction steps."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Dict, List, Optional, Tuple

from ..deck import InconsistentDeck


class CaseFallthrough(RuntimeError):
    """A step's size hypothesis fails (small n) or its evidence runs out."""

    def __init__(self, n: int, state=None, reason: str = ""):
        super().__init__("n=%d: %s" % (n, reason or "no applicable case"))
        self.n = n
        self.state = state
        self.reason = reason


class NonIntegralRoot(InconsistentDeck):
    pass


def isqrt_exact(x: int) -> Optional[int]:
    if x < 0:
        return None
    t = isqrt(x)
    return t if t * t == x else None


def pair_from_sum_product(s: int, p: int) -> Tuple[int, int]:
    """The nonnegative integers x <= y with x + y = s and xy = p."""
    t = isqrt_exact(s * s - 4 * p)
    if t is None or (s - t) % 2 or s - t < 0:
        raise NonIntegralRoot("no integer pair with sum %d and product %d" % (s, p))
    return (s - t) // 2, (s + t) // 2


# Fractional thresholds such as (r-1)/2 or r/3 - 7/2 are compared after
# clearing the denominator: le_frac(x, num, den) tests x <= num/den.
def le_frac(x: int, num: int, den: int) -> bool:
    return x * den <= num


@dataclass
class ReconState:
    n: int
    degrees: List[int]  # full degree multiset, nonincreasing
    mode: str = "strict"
    case: str = ""
    trail: List[str] = field(default_factory=list)
    levels: Optional[List[Tuple[int, int]]] = None
    middle: Optional[List[int]] = None
    prefix: Optional[List[int]] = None  # d(v_1), d(v_2), ... as far as known
    suffix: Optional[List[int]] = None  # d(v_r), d(v_{r-1}), ...
    b1b2: Optional[Tuple[int, int]] = None
    open_batons: Dict[int, list] = field(default_factory=dict)
    open_tritons: Dict[Tuple[int, int], list] = field(default_factory=dict)
    tritons: Dict[Tuple[int, int], object] = field(default_factory=dict)

    @property
    def spine_degrees(self) -> List[int]:
        return [d for d in self.degrees if d >= 2]

    @property
    def r(self) -> int:
        return len(self.spine_degrees)

    @property
    def max_card(self) -> int:
        return (self.n + 2) // 2

    @property
    def alpha(self) -> int:
        return (self.n - self.r + 1) // 4

    def d(self, i: int) -> int:
        """i-th largest vertex degree (1-based); leaves count as degree 1."""
        return self.degrees[i - 1] if i <= len(self.degrees) else 0

    @property
    def branch_count(self) -> int:
        return sum(1 for x in self.degrees if x >= 3)

    @property
    def max_count(self) -> int:
        return sum(1 for x in self.degrees if x == self.degrees[0])

    def values(self) -> List[int]:
        return sorted(set(self.spine_degrees))

    def note(self, tag: str) -> None:
        self.trail.append(tag)
