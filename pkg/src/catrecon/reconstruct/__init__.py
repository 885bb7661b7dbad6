"""Caterpillar reconstruction from a deck oracle.

`reconstruct(n, o)` only ever talks to the oracle.  It recovers the degree
list, picks a case from it, and runs that case.  At the end it re-checks
every logged query against the answer.
"""

from __future__ import annotations

from typing import Callable, Dict

from ..caterpillar import Caterpillar, path, trivial
from ..deck import InconsistentDeck
from ..maximal import InconsistentSeed, InconsistentTables
from ..patterns import AmbiguousDegrees, IllegalQuery, count_induced, recover_degree_multiset
from .cases import (
    case_tag,
    reconstruct_many_max,
    reconstruct_one_max,
    reconstruct_three_max,
    reconstruct_two_max,
)
from .fewbranch import reconstruct_few_branches
from .finalize import finalize_from_tables
from .lowdiam import reconstruct_low_diameter
from .state import CaseFallthrough, NonIntegralRoot, ReconState
from .tables import discover_short_batons, discover_shorter_tritons

STRICT_MIN_N = 48

DISPATCH: Dict[str, Callable] = {
    "low-diameter": reconstruct_low_diameter,
    "few-branches": reconstruct_few_branches,
    "six-max": reconstruct_many_max,
    "four-max": reconstruct_many_max,
    "three-max": reconstruct_three_max,
    "two-max": reconstruct_two_max,
    "one-max": reconstruct_one_max,
}


def audit(o, g: Caterpillar) -> None:
    """Every logged query is legal and agrees with the answer."""
    for p, size in o.query_log:
        if size > o.max_card:
            raise IllegalQuery(size, o.max_card, p)
    for p in {p for p, _ in o.query_log}:
        if count_induced(g, p) != o.query(p):
            raise InconsistentDeck("answer disagrees with the deck on %s" % p)


def _run(n: int, o, degrees, mode: str):
    state = ReconState(n, degrees, mode)
    if n <= 2:
        return trivial(n), state
    if state.r == n - 2:
        state.note("path")
        return path(n), state
    state.case = case_tag(state)
    return DISPATCH[state.case](state, o), state


def reconstruct_with_state(n: int, o, mode: str = "strict"):
    if mode not in ("strict", "permissive"):
        raise ValueError("mode must be strict or permissive")
    if mode == "strict" and n < STRICT_MIN_N:
        raise ValueError("strict mode needs n >= %d (got %d)" % (STRICT_MIN_N, n))
    if o.n != n:
        raise ValueError("oracle is for n=%d, not %d" % (o.n, n))
    try:
        try:
            options = [recover_degree_multiset(o)]
        except AmbiguousDegrees as exc:
            if not exc.candidates:
                raise InconsistentDeck("no degree list fits the star counts")
            options = exc.candidates
        results = {}
        last = None
        for degs in options:
            try:
                g, st = _run(n, o, degs, mode)
                audit(o, g)
                results[g.spine if g.spine else ("P", g.n)] = (g, st)
            except (InconsistentDeck, CaseFallthrough) as exc:
                last = exc
                if len(options) == 1:
                    raise
        if len(results) != 1:
            if last is not None and not results:
                raise last
            raise CaseFallthrough(n, None, "%d answers fit the deck" % len(results))
        return next(iter(results.values()))
    except (InconsistentSeed, InconsistentTables) as exc:
        raise InconsistentDeck(str(exc)) from exc


def reconstruct(n: int, o, mode: str = "strict") -> Caterpillar:
    """The caterpillar (canonical spine) whose deck the oracle answers from."""
    return reconstruct_with_state(n, o, mode)[0]


__all__ = [
    "CaseFallthrough",
    "NonIntegralRoot",
    "ReconState",
    "audit",
    "case_tag",
    "discover_short_batons",
    "discover_shorter_tritons",
    "finalize_from_tables",
    "reconstruct",
    "reconstruct_few_branches",
    "reconstruct_low_diameter",
    "reconstruct_many_max",
    "reconstruct_one_max",
    "reconstruct_three_max",
    "reconstruct_two_max",
    "reconstruct_with_state",
]
