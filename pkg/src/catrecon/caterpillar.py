"""Caterpillars stored as spine degree sequences.

A caterpillar with r >= 1 nonleaf vertices is determined (up to reflection)
by the degrees d(v_1), ..., d(v_r) of its spine.  The one- and two-vertex
trees have no nonleaf vertex; they are kept with an empty spine and an
explicit vertex count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple


class InvalidSpine(ValueError):
    """Raised for spine sequences containing an entry below 2."""


@dataclass(frozen=True, order=True)
class Caterpillar:
    spine: Tuple[int, ...]
    n: int

    @property
    def r(self) -> int:
        return len(self.spine)

    def leaf_count(self, i: int) -> int:
        """Number of leaf neighbours of spine vertex i (0-based)."""
        r = len(self.spine)
        if r == 1:
            return self.spine[0]
        if i == 0 or i == r - 1:
            return self.spine[i] - 1
        return self.spine[i] - 2

    def degrees(self) -> List[int]:
        """Full degree multiset, sorted in nonincreasing order."""
        if not self.spine:
            return [1] * self.n if self.n == 2 else [0] * self.n
        return sorted(self.spine, reverse=True) + [1] * (self.n - len(self.spine))

    def edges(self) -> List[Tuple[int, int]]:
        """Edge list with spine vertices 0..r-1 followed by the leaves."""
        if not self.spine:
            return [(0, 1)] if self.n == 2 else []
        r = len(self.spine)
        out = [(i, i + 1) for i in range(r - 1)]
        nxt = r
        for i in range(r):
            for _ in range(self.leaf_count(i)):
                out.append((i, nxt))
                nxt += 1
        return out

    def text(self) -> str:
        if not self.spine:
            return "P%d" % self.n
        return ",".join(str(d) for d in self.spine)

    def __str__(self) -> str:
        return self.text()


def canonical_spine(spine: Sequence[int]) -> Tuple[int, ...]:
    t = tuple(spine)
    rev = t[::-1]
    return t if t <= rev else rev


def from_spine(degrees: Iterable[int]) -> Caterpillar:
    spine = tuple(int(d) for d in degrees)
    if not spine:
        raise InvalidSpine("empty spine (use trivial(n) for n <= 2)")
    bad = [d for d in spine if d < 2]
    if bad:
        raise InvalidSpine("spine entries must be >= 2, got %r" % (bad,))
    r = len(spine)
    n = r + 2 + sum(d - 2 for d in spine)
    return Caterpillar(canonical_spine(spine), n)


def trivial(n: int) -> Caterpillar:
    """The one- or two-vertex tree."""
    if n not in (1, 2):
        raise InvalidSpine("trivial caterpillars have 1 or 2 vertices")
    return Caterpillar((), n)


def path(n: int) -> Caterpillar:
    if n <= 2:
        return trivial(n)
    return from_spine([2] * (n - 2))


def star(k: int) -> Caterpillar:
    """K_{1,k}."""
    if k == 1:
        return trivial(2)
    return from_spine([k])


def t_ab(a: int, b: int) -> Caterpillar:
    """Spider with legs of lengths 1, a and b sharing one endpoint."""
    if a < 0 or b < 1:
        raise InvalidSpine("t_ab needs a >= 0 and b >= 1")
    # centre has degree 3 (or 2 when a == 0); legs contribute interior 2's
    a, b = min(a, b), max(a, b)
    if a == 0:
        return path(b + 2)
    spine = [2] * (a - 1) + [3] + [2] * (b - 1)
    return from_spine(spine)


def weak_compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_caterpillars(n: int) -> Iterator[Caterpillar]:
    """Every n-vertex caterpillar once, in canonical form."""
    if n < 1:
        return
    if n <= 2:
        yield trivial(n)
        return
    for r in range(1, n - 1):
        for comp in weak_compositions(n - r - 2, r):
            spine = tuple(2 + c for c in comp)
            if spine <= spine[::-1]:
                yield Caterpillar(spine, n)


def caterpillar_count(n: int) -> int:
    """Closed form for the number of n-vertex caterpillars (n >= 3)."""
    return 2 ** (n - 4) + 2 ** (n // 2 - 2) if n >= 4 else 1


def degree_bound(n: int, r: int, m: int) -> int:
    """Largest possible maximum degree when m spine vertices attain it."""
    return (n - r - 2) // m + 2


def parse_caterpillars(text: str) -> List[Caterpillar]:
    """Read the one-per-line comma-separated spine format."""
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        out.append(parse_spine(line))
    return out


def parse_spine(line: str) -> Caterpillar:
    line = line.strip()
    if line.upper().startswith("P") and line[1:].isdigit():
        k = int(line[1:])
        return trivial(k) if k <= 2 else path(k)
    try:
        vals = [int(x) for x in line.split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidSpine("cannot parse spine %r" % line) from exc
    return from_spine(vals)


def format_caterpillars(cats: Iterable[Caterpillar]) -> str:
    return "".join(c.text() + "\n" for c in cats)
