"""Caterpillars with at most three branch vertices (degree >= 3)."""

from __future__ import annotations

from ..caterpillar import Caterpillar, from_spine, path
from ..deck import InconsistentDeck
from ..patterns import decorated, path_pattern
from .finalize import finalize_from_tables, select_by
from .state import CaseFallthrough, ReconState
from .tables import discover_short_batons


def reconstruct_one_branch(state: ReconState, o) -> Caterpillar:
    """Locate the single branch vertex v_i (i <= (r+1)/2) from path counts.

    Off-spine copies of P_j double while j <= i + 2, so the index shows up
    as the first drop; the six-vertex spider decides i = 1 on its own.
    """
    r = state.r
    big = state.spine_degrees[0]
    cands = []
    for i in range(1, (r + 1) // 2 + 1):
        sp = [2] * r
        sp[i - 1] = big
        cands.append(from_spine(sp))
    probes = [decorated([0, 0, 1, 0, 0])]
    probes += [path_pattern(j) for j in range(1, min(state.max_card, (r + 5) // 2) + 1)]
    left = select_by(o, cands, probes)
    if len(left) != 1:
        if not left:
            raise InconsistentDeck("no branch position fits the path counts")
        raise CaseFallthrough(state.n, state, "branch vertex not located by path counts")
    state.note("one-branch")
    return left[0]


def reconstruct_few_branches(state: ReconState, o) -> Caterpillar:
    k = state.branch_count
    if k == 0:
        state.note("path")
        return path(state.n)
    if k == 1:
        return reconstruct_one_branch(state, o)
    state.note("%d-branch" % k)
    batons = discover_short_batons(state, o)
    return finalize_from_tables(state, o, batons)
