"""From maximal tables to the caterpillar.

Level pairs come from the short batons.  The asymmetric levels are then
oriented against a reference level using ordered pairs, which need the
shorter tritons.  Whatever stays unoriented (the last few levels and the
middle, or any level whose tables the counts left ambiguous) is enumerated.
The enumerated spines are then filtered in three rounds:

1. Against every maximal table already known.  This is where the two
   possible middle arrangements usually part ways.
2. With the fixed middle probes: a baton of length r/2 when r = 2 mod 6,
   and the triton B_{2,2:2,3,2+t} when r = 8.
3. With a generic search for a legal pattern that splits what is left.
"""

from __future__ import annotations

from itertools import product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..caterpillar import Caterpillar, from_spine
from ..deck import InconsistentDeck
from ..maximal import (
    InconsistentTables,
    MaximalFamilyTable,
    baton_family,
    direct_maximal_table,
    level_pairs,
    ordered_pair_sets,
    triton_family,
)
from ..patterns import PatternGraph, baton, count_induced, decorated, path_pattern, triton
from .state import CaseFallthrough, ReconState
from .tables import discover_shorter_tritons

MAX_CANDIDATES = 4096


def _level_structures(state: ReconState, batons: Dict[int, MaximalFamilyTable]):
    """(pairs, middle, tables) for every choice among ambiguous baton tables."""
    r = state.r
    open_js = sorted(state.open_batons)
    seen = set()
    out = []
    for combo in product(*[state.open_batons[j] for j in open_js]):
        tabs = dict(batons)
        tabs.update(zip(open_js, combo))
        try:
            pairs, middle = level_pairs(tabs, r, state.spine_degrees)
        except InconsistentTables:
            continue
        key = (tuple(pairs), tuple(middle))
        if key in seen:
            continue
        seen.add(key)
        out.append((pairs, middle, tabs))
        if len(out) > 64:
            raise CaseFallthrough(state.n, state, "too many ambiguous baton tables")
    return out


def _ordered_pair(state, o, batons, s: int, ref: int):
    """The two ordered pairs (d(v_ref), d(v_{ref+s})) and their mirror, or
    None when some needed table is ambiguous."""
    r = state.r
    q = (r - 4) // 2
    if s not in batons or ref + s > q:
        return None
    need = [(i, s) for i in range(1, ref + 1)]
    discover_shorter_tritons(state, o, batons, need)
    if any(p in state.open_tritons for p in need):
        return None
    return ordered_pair_sets(batons, state.tritons, r, s, q, upto=ref)[ref]


def orient_levels(state: ReconState, o, batons, pairs) -> Dict[int, int]:
    """Orientation bit per level k (1-based): 0 puts pairs[k-1][0] at v_k.
    The first asymmetric level is fixed with its smaller degree at v_k."""
    r = state.r
    q = (r - 4) // 2
    fixed: Dict[int, int] = {}
    refs: List[int] = []
    for k in range(1, len(pairs) + 1):
        x, y = pairs[k - 1]
        if x == y:
            continue
        if not refs:
            fixed[k] = 0
            refs.append(k)
            continue
        if k > q:
            continue
        for ref in refs:
            got = _ordered_pair(state, o, batons, k - ref, ref)
            if got is None:
                continue
            here = pairs[ref - 1][fixed[ref]]
            match = [t for t in got if t[0] == here]
            if len(match) != 1 or match[0][1] not in (x, y):
                raise InconsistentDeck("ordered pairs at level %d disagree with level pairs" % k)
            fixed[k] = 0 if match[0][1] == x else 1
            refs.append(k)
            break
    return fixed


def _spines(pairs, middle, fixed) -> Iterator[Tuple[int, ...]]:
    lv = len(pairs)
    free = [k for k in range(1, lv + 1) if pairs[k - 1][0] != pairs[k - 1][1] and k not in fixed]
    mids = [tuple(middle)]
    if len(middle) == 2 and middle[0] != middle[1]:
        mids.append(tuple(middle[::-1]))
    if not fixed:
        # nothing oriented yet: reversal lets us pin one choice
        if free:
            fixed = {free[0]: 0}
            free = free[1:]
        else:
            mids = mids[:1]
    if (2 ** len(free)) * len(mids) > MAX_CANDIDATES:
        raise CaseFallthrough(0, None, "%d unoriented levels" % len(free))
    for bits in product((0, 1), repeat=len(free)):
        o = dict(fixed)
        o.update(zip(free, bits))
        lo = [pairs[k - 1][o.get(k, 0)] for k in range(1, lv + 1)]
        hi = [pairs[k - 1][1 - o.get(k, 0)] for k in range(1, lv + 1)]
        for mid in mids:
            yield tuple(lo) + mid + tuple(hi[::-1])


def _matches_tables(g: Caterpillar, batons, tritons) -> bool:
    for j, t in batons.items():
        if direct_maximal_table(g, baton_family(j)) != t:
            return False
    for (j, k), t in tritons.items():
        if direct_maximal_table(g, triton_family(j, k)) != t:
            return False
    return True


def select_by(o, cands: List[Caterpillar], patterns: Iterable[PatternGraph]) -> List[Caterpillar]:
    """Keep the candidates whose counts agree with the oracle on each legal
    pattern; patterns on which all candidates agree are not queried."""
    for p in patterns:
        if len(cands) <= 1:
            break
        if not o.fits(p):
            continue
        pred = [count_induced(c, p) for c in cands]
        if len(set(pred)) == 1:
            continue
        want = o.query(p)
        cands = [c for c, v in zip(cands, pred) if v == want]
    return cands


def middle_probes(state: ReconState, pairs, middle) -> List[PatternGraph]:
    """The fixed probes for the last two levels when their short batons
    cannot tell the two arrangements apart."""
    r, n = state.r, state.n
    out: List[PatternGraph] = []
    if r % 6 == 2 and r >= 8 and len(middle) == 2 and pairs:
        a0 = min(pairs[-1])  # level (r-2)/2
        b0 = min(middle)     # level r/2
        out.append(baton(r // 2, a0 + 1, b0 + 1))
    if r == 8 and n >= 14 and n % 2 == 0:
        out.append(triton(2, 2, 2, 3, 2 + (n - 14) // 2))
    return out


def window_pattern(g: Caterpillar, s: int, e: int, cap: int) -> Optional[PatternGraph]:
    """Induced subgraph on spine vertices s..e and their leaves, with leaves
    trimmed from the fullest vertices until it has at most cap vertices."""
    pend = [g.leaf_count(i) for i in range(s, e + 1)]
    over = (e - s + 1) + sum(pend) - cap
    while over > 0:
        i = max(range(len(pend)), key=lambda t: (pend[t], -t))
        if pend[i] == 0:
            return None
        pend[i] -= 1
        over -= 1
    return decorated(pend)


def candidate_patterns(state: ReconState, cands: Sequence[Caterpillar]) -> Iterator[PatternGraph]:
    m = state.max_card
    r = max(c.r for c in cands)
    vals = sorted({d for c in cands for d in c.spine} | {2})
    for j in range(1, r):
        for a in vals:
            for b in vals:
                if a <= b and j + a + b - 1 <= m:
                    yield baton(j, a, b)
    for t in range(1, m + 1):
        yield path_pattern(t)
    for c in cands:
        for length in range(c.r - 1, -1, -1):
            for s in range(0, c.r - length):
                p = window_pattern(c, s, s + length, m)
                if p is not None:
                    yield p


def discriminate(state: ReconState, o, cands: List[Caterpillar]) -> List[Caterpillar]:
    cands = select_by(o, cands, middle_probes(state, state.levels or [], state.middle or []))
    if len(cands) > 1:
        cands = select_by(o, cands, candidate_patterns(state, cands))
    return cands


def finalize_from_tables(state: ReconState, o, batons: Dict[int, MaximalFamilyTable],
                         tritons=None) -> Caterpillar:
    r = state.r
    if tritons:
        state.tritons.update(tritons)
    found: Dict[Tuple[int, ...], Caterpillar] = {}
    for pairs, middle, tabs in _level_structures(state, batons):
        try:
            fixed = orient_levels(state, o, batons, pairs)
        except (InconsistentDeck, InconsistentTables):
            if state.open_batons:
                continue
            raise
        state.levels, state.middle = pairs, middle
        known = {j: t for j, t in tabs.items()}
        try:
            spines = list(_spines(pairs, middle, fixed))
        except CaseFallthrough as exc:
            raise CaseFallthrough(state.n, state, exc.reason)
        for sp in spines:
            g = from_spine(sp)
            if g.spine not in found and _matches_tables(g, known, state.tritons):
                found[g.spine] = g
    cands = [found[k] for k in sorted(found)]
    if not cands:
        raise InconsistentDeck("no spine fits the recovered tables")
    if len(cands) > 1:
        state.note("middle:%d-candidates" % len(cands))
        cands = discriminate(state, o, cands)
    if len(cands) != 1:
        if not cands:
            raise InconsistentDeck("every candidate contradicts a count")
        raise CaseFallthrough(state.n, state, "%d candidates share every count tried" % len(cands))
    g = cands[0]
    state.prefix = list(g.spine[: (r + 1) // 2])
    state.suffix = list(g.spine[::-1][: (r + 1) // 2])
    return g
