"""Decorated-path patterns, induced counting in caterpillars, and the
size-gated query oracle.

A pattern is a path u_0 ... u_L with c_i pendant leaves hung on u_i.  Every
connected induced subgraph of a caterpillar is again a caterpillar, so each
pattern is first reduced to the degree sequence of its own nonleaf path and
then matched against windows of the host spine.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .caterpillar import Caterpillar, canonical_spine, from_spine, trivial
from .deck import DeckFingerprint
from .forest import canonical_code, forest


class NotABaton(ValueError):
    pass


class NotATriton(ValueError):
    pass


class IllegalQuery(RuntimeError):
    def __init__(self, size: int, max_card: int, pattern=None):
        super().__init__("pattern with %d vertices exceeds the card limit %d" % (size, max_card))
        self.size = size
        self.max_card = max_card
        self.pattern = pattern


class AmbiguousDegrees(RuntimeError):
    def __init__(self, candidates):
        super().__init__("%d degree multisets fit the star counts" % len(candidates))
        self.candidates = candidates


@dataclass(frozen=True, order=True)
class PatternGraph:
    pendants: Tuple[int, ...]  # c_0 .. c_L, canonical under reversal

    @property
    def path_len(self) -> int:
        return len(self.pendants) - 1

    @property
    def order(self) -> int:
        return len(self.pendants) + sum(self.pendants)

    def shape(self) -> Tuple[int, ...]:
        """Spine degrees of the pattern viewed as a caterpillar (canonical).

        The one- and two-vertex patterns give (), (0,) is never produced.
        """
        c = self.pendants
        L = len(c) - 1
        if L == 0:
            return () if c[0] <= 1 else (c[0],)
        deg = [c[0] + 1] + [c[i] + 2 for i in range(1, L)] + [c[L] + 1]
        s = 0 if c[0] >= 1 else 1
        t = L if c[L] >= 1 else L - 1
        if s > t:
            return ()
        return canonical_spine(deg[s:t + 1])

    def as_caterpillar(self) -> Caterpillar:
        sp = self.shape()
        if not sp:
            return trivial(self.order)
        return from_spine(sp)

    def text(self) -> str:
        return "decorated:" + ",".join(str(x) for x in self.pendants)

    def __str__(self) -> str:
        return self.text()


def decorated(pendants: Sequence[int]) -> PatternGraph:
    c = tuple(int(x) for x in pendants)
    if not c or min(c) < 0:
        raise ValueError("pendant counts must be a nonempty list of nonnegative integers")
    return PatternGraph(min(c, c[::-1]))


def path_pattern(vertices: int) -> PatternGraph:
    """P_t as a pattern (t vertices)."""
    if vertices < 1:
        raise ValueError("a path needs at least one vertex")
    return decorated([0] * vertices)


def star_pattern(k: int) -> PatternGraph:
    return decorated([k])


def baton(j: int, a: int, b: int) -> PatternGraph:
    """B_{j:a,b}: key vertices of degrees a and b at distance j."""
    if j < 1 or a < 2 or b < 2:
        raise NotABaton("baton needs j >= 1 and a, b >= 2 (got %d,%d,%d)" % (j, a, b))
    c = [0] * (j + 1)
    c[0] = a - 1
    c[j] = b - 1
    return decorated(c)


def triton(j: int, jp: int, a: int, b: int, c: int) -> PatternGraph:
    """B_{j,j':a,b,c}: end keys of degrees a, c and a middle key of degree b."""
    if j < 1 or jp < 1 or a < 2 or b < 2 or c < 2:
        raise NotATriton("triton needs j, j' >= 1 and a, b, c >= 2 (got %d,%d,%d,%d,%d)"
                         % (j, jp, a, b, c))
    p = [0] * (j + jp + 1)
    p[0] = a - 1
    p[j] = b - 2
    p[j + jp] = c - 1
    return decorated(p)


def from_caterpillar(g: Caterpillar) -> PatternGraph:
    if not g.spine:
        return path_pattern(g.n)
    sp = g.spine
    if len(sp) == 1:
        return star_pattern(sp[0])
    c = [sp[0] - 1] + [d - 2 for d in sp[1:-1]] + [sp[-1] - 1]
    return decorated(c)


def parse_pattern(text: str) -> PatternGraph:
    kind, _, body = text.strip().partition(":")
    try:
        args = [int(x) for x in body.split(",") if x.strip()]
    except ValueError as exc:
        raise ValueError("bad pattern literal %r" % text) from exc
    kind = kind.lower()
    if kind == "path" and len(args) == 1:
        return decorated([0] * (args[0] + 1))
    if kind == "star" and len(args) == 1:
        return star_pattern(args[0])
    if kind == "baton" and len(args) == 3:
        return baton(*args)
    if kind == "triton" and len(args) == 5:
        return triton(*args)
    if kind == "decorated" and args:
        return decorated(args)
    raise ValueError("bad pattern literal %r" % text)


def pattern_forest(p: PatternGraph):
    return forest(p.order, p.as_caterpillar().edges())


def count_shape(host: Caterpillar, shape: Tuple[int, ...], order: int) -> int:
    """Induced copies in host of the caterpillar with the given spine."""
    if not shape:
        if order == 1:
            return host.n
        return host.n - 1 if order == 2 else 0
    sp = host.spine
    r = len(sp)
    k = len(shape)
    if k == 1:
        return sum(comb(d, shape[0]) for d in sp)
    orients = [shape] if shape == shape[::-1] else [shape, shape[::-1]]
    total = 0
    for s in range(r - k + 1):
        for D in orients:
            prod = comb(sp[s] - 1, D[0] - 1) * comb(sp[s + k - 1] - 1, D[-1] - 1)
            i = 1
            while prod and i < k - 1:
                prod *= comb(sp[s + i] - 2, D[i] - 2)
                i += 1
            total += prod
    return total


def count_induced(host: Caterpillar, p: Union[PatternGraph, Caterpillar]) -> int:
    """Number of vertex subsets of host inducing a copy of p."""
    g = p.as_caterpillar() if isinstance(p, PatternGraph) else p
    return count_shape(host, g.spine, g.n)


class DeckOracle:
    """Answers induced-count queries for patterns that fit on a card."""

    def __init__(self, n: int, hidden: Optional[Caterpillar] = None,
                 deck: Optional[DeckFingerprint] = None, max_card: Optional[int] = None):
        if (hidden is None) == (deck is None):
            raise ValueError("exactly one of hidden / deck must be given")
        self.n = n
        self.max_card = (n + 2) // 2 if max_card is None else max_card
        self._hidden = hidden
        self._deck = deck.as_dict() if deck is not None else None
        if deck is not None and deck.m < self.max_card:
            raise ValueError("deck has m=%d < max_card=%d" % (deck.m, self.max_card))
        if hidden is not None and hidden.n != n:
            raise ValueError("hidden caterpillar has %d vertices, not %d" % (hidden.n, n))
        self.query_log: List[Tuple[PatternGraph, int]] = []
        self._lock = threading.Lock()
        self._cache: Dict[PatternGraph, int] = {}

    @property
    def backing(self) -> str:
        return "direct" if self._hidden is not None else "exhaustive"

    def query(self, p: PatternGraph) -> int:
        size = p.order
        with self._lock:
            if size > self.max_card:
                raise IllegalQuery(size, self.max_card, p)
            self.query_log.append((p, size))
            hit = self._cache.get(p)
        if hit is not None:
            return hit
        if self._hidden is not None:
            val = count_induced(self._hidden, p)
        else:
            val = self._deck.get(canonical_code(pattern_forest(p)), 0)
        with self._lock:
            self._cache[p] = val
        return val

    def fits(self, p: PatternGraph) -> bool:
        return p.order <= self.max_card

    def largest_query(self) -> int:
        return max((s for _, s in self.query_log), default=0)


def oracle_query(o: DeckOracle, p: PatternGraph) -> int:
    return o.query(p)


def _peel(star_counts: Dict[int, int], top: int, n: int, high: Sequence[int]):
    """Descending star-count peel below `top` after removing the given
    high-degree vertices; returns the degree multiset or None."""
    rest = dict(star_counts)
    degs = list(high)
    for d in high:
        for j in range(2, top + 1):
            rest[j] -= comb(d, j)
    if rest[top] != 0:
        return None
    for j in range(top - 1, 1, -1):
        mult = rest[j]
        if mult < 0:
            return None
        if mult:
            degs.extend([j] * mult)
            for i in range(2, j + 1):
                rest[i] -= mult * comb(j, i)
    if any(rest[j] for j in range(2, top + 1)):
        return None
    leaves = n - len(degs)
    if leaves < 2 or sum(degs) + leaves != 2 * (n - 1):
        return None
    return sorted(degs + [1] * leaves, reverse=True)


def recover_degree_multiset(o: DeckOracle) -> List[int]:
    """Degree multiset of the hidden caterpillar from star counts."""
    n = o.n
    if n <= 2:
        return [1] * n if n == 2 else [0]
    if n == 3:
        return [2, 1, 1]
    top = o.max_card - 1  # largest star that fits
    counts = {j: o.query(star_pattern(j)) for j in range(2, top + 1)}
    if counts[top] == 0:
        res = _peel(counts, top, n, ())
        if res is None:
            raise AmbiguousDegrees([])
        return res
    # some vertex has degree >= top: enumerate the high part
    cands = []
    budget = 2 * (n - 1)
    for k in range(1, n + 1):
        if k * top > budget:
            break
        found_any = False
        for high in _high_parts(k, top, n - 1, budget - (n - k)):
            found_any = True
            res = _peel(counts, top, n, high)
            if res is not None:
                cands.append(res)
        if not found_any:
            break
    uniq = sorted({tuple(c) for c in cands})
    if len(uniq) != 1:
        raise AmbiguousDegrees([list(c) for c in uniq])
    return list(uniq[0])


def _high_parts(k: int, lo: int, hi: int, budget: int):
    """Nonincreasing k-tuples in [lo, hi] with sum at most budget."""
    if k == 0:
        yield ()
        return
    for first in range(min(hi, budget - lo * (k - 1)), lo - 1, -1):
        for rest in _high_parts(k - 1, lo, first, budget - first):
            yield (first,) + rest
