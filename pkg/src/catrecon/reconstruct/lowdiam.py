"""Short spines: every relevant longest-path pattern fits on a card, so the
level pairs come out of sums and products of leaf counts."""

from __future__ import annotations

from collections import Counter
from typing import List, Optional, Tuple

from ..caterpillar import Caterpillar, from_spine, star
from ..deck import InconsistentDeck
from ..patterns import PatternGraph, count_induced, decorated
from .state import NonIntegralRoot, ReconState, pair_from_sum_product


def _long_path(r: int, extra=()) -> PatternGraph:
    """The (r+2)-vertex path u_0..u_{r+1} with one leaf on each u_i, i in extra."""
    c = [0] * (r + 2)
    for i in extra:
        c[i] += 1
    return decorated(c)


def _exact_div(a: int, b: int, what: str) -> int:
    if b == 0 or a % b:
        raise NonIntegralRoot("%s: %d is not a multiple of %d" % (what, a, b))
    return a // b


def low_diameter_levels(state: ReconState, o) -> Tuple[List[Tuple[int, int]], Optional[int]]:
    """Level pairs {d(v_i), d(v_{r+1-i})} for i <= r/2 (as sorted pairs of
    degrees) and the middle degree when r is odd."""
    r = state.r
    M = o.query(_long_path(r))
    y1 = o.query(_long_path(r, [1]))
    # Y_1 = C(a,2) b + C(b,2) a = ab(a+b-2)/2 with a, b the end leaf counts
    s = _exact_div(2 * y1, M, "Y_1") + 2
    a, b = pair_from_sum_product(s, M)
    levels = [(a + 1, b + 1)]
    for i in range(2, r // 2 + 1):
        yi = o.query(_long_path(r, [i]))
        zi = o.query(_long_path(r, [i, r + 1 - i]))
        s = _exact_div(yi, M, "Y_%d" % i)
        p = _exact_div(zi, M, "Z_%d" % i)
        x, y = pair_from_sum_product(s, p)
        levels.append((x + 2, y + 2))
    used = Counter()
    for x, y in levels:
        used[x] += 1
        used[y] += 1
    rest = Counter(state.spine_degrees)
    rest.subtract(used)
    if any(v < 0 for v in rest.values()):
        raise InconsistentDeck("level pairs do not match the degree list")
    mid = list(rest.elements())
    if len(mid) != r % 2:
        raise InconsistentDeck("level pairs leave %d middle degrees" % len(mid))
    return levels, (mid[0] if mid else None)


def _spine(levels, orient, mid) -> List[int]:
    r2 = len(levels)
    lo = [levels[k][orient[k]] for k in range(r2)]
    hi = [levels[k][1 - orient[k]] for k in range(r2)]
    return lo + ([mid] if mid is not None else []) + hi[::-1]


def reconstruct_low_diameter(state: ReconState, o) -> Caterpillar:
    r = state.r
    if r == 1:
        return star(state.n - 1)
    levels, mid = low_diameter_levels(state, o)
    state.levels = levels
    asym = [k for k, (x, y) in enumerate(levels) if x != y]
    if not asym:
        return from_spine(_spine(levels, [0] * len(levels), mid))
    # orient so the first unequal level has its smaller degree on the left
    j = asym[0]
    orient = [0] * len(levels)
    for k in asym[1:]:
        # X_{j,k}: longest path plus leaves at u_j and u_k (positions 1-based)
        patt = _long_path(r, [j + 1, k + 1])
        want = o.query(patt)
        fits = []
        for choice in (0, 1):
            orient[k] = choice
            if count_induced(from_spine(_spine(levels, orient, mid)), patt) == want:
                fits.append(choice)
        if len(fits) != 1:
            raise InconsistentDeck("level %d cannot be oriented (%d fits)" % (k + 1, len(fits)))
        orient[k] = fits[0]
    state.note("low-diameter")
    return from_spine(_spine(levels, orient, mid))
