"""Short baton tables and shorter triton tables from legal counts.

Each family is solved by exclusion.  Members too large for a card enter as
unknowns and are pinned down by the queryable counts (see
`maximal.seed_and_solve`).  A family the counts leave ambiguous is recorded
on the state with its candidate tables, and later steps branch over them.
"""

from __future__ import annotations

from typing import Dict, Iterable, Optional, Tuple

from ..maximal import (
    MaximalFamilyTable,
    IncompleteSearch,
    UnderdeterminedFamily,
    baton_family,
    determine_table,
    triton_family,
)
from .state import CaseFallthrough, ReconState


def short_baton_tag(state: ReconState) -> str:
    """Which seeding situation the degree list puts us in (recorded only)."""
    n, r = state.n, state.r
    d = state.d
    a = state.alpha
    qmax = (r - 1) // 2
    if qmax + d(1) + d(2) - 1 <= state.max_card:
        return "short-batons:all-fit"
    if d(1) == d(2) and d(4) > 2 and d(3) <= a:
        return "short-batons:pair-low-third"
    if d(1) == d(2) and 2 < d(4) <= a <= d(3) - 1:
        return "short-batons:pair-high-third"
    if d(4) >= max(3, a + 1) and 2 * (2 * a + 1) <= n - r + 1:
        return "short-batons:high-fourth"
    if 2 * (2 * a + 1) >= n - r + 2:
        return "short-batons:wide-alpha"
    return "short-batons:unique-top"


def triton_tag(state: ReconState) -> str:
    n, r = state.n, state.r
    d = state.d
    if 6 * d(1) <= n - r + 12:
        return "tritons:all-fit"
    if d(1) == d(5) and d(5) > d(6):
        return "tritons:five-max"
    if d(1) == d(4) and d(4) > d(5):
        if 6 * d(5) <= n - r + 6:
            return "tritons:four-max-small-fifth"
        return "tritons:four-max-large-fifth"
    return "tritons:generic"


def discover_short_batons(state: ReconState, o) -> Dict[int, MaximalFamilyTable]:
    """Maximal j-baton tables for 1 <= j <= (r-1)/2."""
    state.note(short_baton_tag(state))
    r = state.r
    vals = state.values()
    out: Dict[int, MaximalFamilyTable] = {}
    for j in range(1, (r - 1) // 2 + 1):
        try:
            out[j] = determine_table(o, baton_family(j), vals, r)
        except IncompleteSearch as exc:
            # open baton candidates get enumerated later, so they must be complete
            raise CaseFallthrough(state.n, state, str(exc))
        except UnderdeterminedFamily as exc:
            state.open_batons[j] = exc.candidates
    return out


def shorter_pairs(r: int):
    q = (r - 4) // 2
    return [(j, k) for j in range(1, q) for k in range(1, q - j + 1)]


def discover_shorter_tritons(state: ReconState, o, batons: Dict[int, MaximalFamilyTable],
                             pairs: Optional[Iterable[Tuple[int, int]]] = None):
    """Triton tables for the requested (j, j') with j + j' <= (r-4)/2 (all of
    them by default).  Results are cached on the state."""
    r = state.r
    q = (r - 4) // 2
    vals = state.values()
    if pairs is None:
        pairs = shorter_pairs(r)
    if not state.tritons and not state.open_tritons:
        state.note(triton_tag(state))
    for j, k in pairs:
        if j + k > q:
            raise ValueError("(%d,%d)-tritons are longer than (r-4)/2" % (j, k))
        if (j, k) in state.tritons or (j, k) in state.open_tritons:
            continue
        fam = triton_family(j, k)
        try:
            state.tritons[(j, k)] = determine_table(o, fam, vals, r, ends=batons.get(j + k))
        except UnderdeterminedFamily as exc:
            state.open_tritons[(j, k)] = exc.candidates
    return {p: state.tritons[p] for p in pairs if p in state.tritons}
