"""Case split on how many vertices share the maximum degree.

All branches share the same engine: short batons first, then the shorter
tritons that the orientation step asks for, then the middle.  The branches
differ in which unknown members the counts must pin down, and that is
recorded in the trail.
"""

from __future__ import annotations

from ..caterpillar import Caterpillar
from .finalize import finalize_from_tables
from .state import ReconState
from .tables import discover_short_batons, discover_shorter_tritons


def case_tag(state: ReconState) -> str:
    """Exactly one tag per degree list (the dispatcher is total)."""
    n, r = state.n, state.r
    if 2 * r <= n - 6:
        return "low-diameter"
    if state.branch_count <= 3:
        return "few-branches"
    d = state.d
    if d(1) == d(6):
        return "six-max"
    if d(1) == d(4):
        return "four-max"
    return {3: "three-max", 2: "two-max", 1: "one-max"}[state.max_count]


def _run(state: ReconState, o, tag: str, batons=None) -> Caterpillar:
    state.note(tag)
    if batons is None:
        batons = discover_short_batons(state, o)
    return finalize_from_tables(state, o, batons)


def reconstruct_many_max(state: ReconState, o, batons=None) -> Caterpillar:
    """Four or more vertices of maximum degree."""
    if batons is None:
        batons = discover_short_batons(state, o)
    if state.d(1) == state.d(6):
        # everything short fits on a card: read all shorter tritons up front
        discover_shorter_tritons(state, o, batons)
    return _run(state, o, "many-max", batons)


def reconstruct_three_max(state: ReconState, o, batons=None) -> Caterpillar:
    return _run(state, o, "three-max", batons)


def reconstruct_two_max(state: ReconState, o, batons=None) -> Caterpillar:
    g = _run(state, o, "two-max", batons)
    top = max(g.spine)
    idx = [i + 1 for i, x in enumerate(g.spine) if x == top]
    state.b1b2 = (idx[0], idx[1])
    return g


def reconstruct_one_max(state: ReconState, o, batons=None) -> Caterpillar:
    return _run(state, o, "one-max", batons)
