"""Ground truth: brute-force reconstruction, the sharpness pair, seeded
round trips, and collision search over small decks."""

from __future__ import annotations

import random
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .caterpillar import Caterpillar, enumerate_caterpillars, from_spine, path, t_ab
from .deck import (
    DeckFingerprint,
    TooLargeForExhaustive,
    as_forest,
    decks_equal,
    full_deck,
    slice_deck,
)
from .forest import canonical_code
from .patterns import DeckOracle, count_induced

BRUTE_MAX_N = 18


def sample_caterpillar(n: int, rng: random.Random) -> Caterpillar:
    """Seeded draw: r uniform in [1, n-2], then a uniform weak composition of
    the n-r-2 spare degree over the r spine vertices (stars and bars)."""
    if n <= 2:
        raise ValueError("need n >= 3")
    r = rng.randint(1, n - 2)
    extra = n - r - 2
    if r == 1:
        return from_spine([extra + 2])
    bars = sorted(rng.sample(range(extra + r - 1), r - 1))
    parts = []
    prev = -1
    for b in bars + [extra + r - 1]:
        parts.append(b - prev - 1)
        prev = b
    return from_spine([2 + p for p in parts])


def connected_fingerprint(g: Caterpillar, m: int) -> Tuple[int, ...]:
    """Counts of every caterpillar with at most m vertices, in a fixed order.

    These are the connected cards; two caterpillars with different
    fingerprints certainly have different m-decks.
    """
    return tuple(count_induced(g, c) for c in _small_caterpillars(m))


_SMALL: Dict[int, List[Caterpillar]] = {}


def _small_caterpillars(m: int) -> List[Caterpillar]:
    if m not in _SMALL:
        _SMALL[m] = [c for k in range(1, m + 1) for c in enumerate_caterpillars(k)]
    return _SMALL[m]


def bruteforce_reconstruct(d: DeckFingerprint) -> List[Caterpillar]:
    """Every n-vertex caterpillar whose m-deck equals d.

    Connected cards are read off d first; a candidate whose predicted count
    of some small caterpillar differs is dropped before its deck is built.
    """
    if d.n > BRUTE_MAX_N:
        raise TooLargeForExhaustive("brute force is capped at n=%d" % BRUTE_MAX_N)
    have = d.as_dict()
    want = [(c, have.get(canonical_code(as_forest(c)), 0)) for c in _small_caterpillars(d.m)]
    # large patterns first: they split candidates fastest
    want.sort(key=lambda cv: -cv[0].n)
    out = []
    for g in enumerate_caterpillars(d.n):
        if all(count_induced(g, c) == v for c, v in want) and decks_equal(full_deck(g, d.m), d):
            out.append(g)
    return out


@dataclass
class SharpnessResult:
    pair: Tuple[Caterpillar, Caterpillar]
    k: int
    equal: bool
    distinguished_at: Optional[int]


def sharpness_pair(n: int) -> Tuple[Caterpillar, Caterpillar]:
    k = n // 2
    return t_ab(k - 1, n - k - 1), t_ab(k - 2, n - k)


def certify_sharpness(n: int) -> SharpnessResult:
    if not 6 <= n <= 20:
        raise ValueError("sharpness certificates run for 6 <= n <= 20")
    g, h = sharpness_pair(n)
    k = n // 2
    equal = decks_equal(full_deck(g, k), full_deck(h, k))
    dist = k + 1 if not decks_equal(full_deck(g, k + 1), full_deck(h, k + 1)) else None
    return SharpnessResult((g, h), k, equal, dist)


def spider_sweep(max_n: int = 14) -> List[Tuple[int, int, int, bool]]:
    """(a, b, k, equal) for every b > a >= k-2, k >= 1, a+b+2 <= max_n, where
    equal says T_{a,b} and T_{a+1,b-1} have the same k-deck."""
    out = []
    for n in range(3, max_n + 1):
        for a in range(0, n):
            b = n - 2 - a
            if b <= a:
                break
            kmax = min(a + 2, n)
            g, h = full_deck(t_ab(a, b), kmax), full_deck(t_ab(b - 1, a + 1), kmax)
            for k in range(1, kmax + 1):
                out.append((a, b, k, decks_equal(slice_deck(g, k), slice_deck(h, k))))
    return out


@dataclass
class RoundTrip:
    n: int
    spine: str
    ok: bool
    queries: int
    millis: int
    error: str = ""
    log: List[str] = field(default_factory=list)

    def tsv(self) -> str:
        return "%d\t%s\t%s\t%d\t%d" % (self.n, self.spine, "1" if self.ok else "0",
                                        self.queries, self.millis)


def roundtrip_one(g: Caterpillar, mode: str = "strict", fallback: bool = False) -> RoundTrip:
    """Reconstruct g through a direct-count oracle.  With fallback, a case
    fallthrough at n <= BRUTE_MAX_N counts as success when brute force on
    the full deck returns g alone."""
    from .reconstruct import CaseFallthrough, reconstruct

    o = DeckOracle(g.n, hidden=g)
    t0 = time.perf_counter()
    err = ""
    try:
        try:
            got = reconstruct(g.n, o, mode)
        except CaseFallthrough:
            if not (fallback and g.n <= BRUTE_MAX_N):
                raise
            found = bruteforce_reconstruct(full_deck(g, o.max_card))
            got = found[0] if len(found) == 1 else None
            err = "fallthrough"
        ok = got == g and o.largest_query() <= o.max_card
    except Exception as exc:  # failures are report rows, not crashes
        ok = False
        err = "%s: %s" % (type(exc).__name__, exc)
    ms = int((time.perf_counter() - t0) * 1000)
    log = [] if ok else ["%s %d" % (p, s) for p, s in o.query_log]
    return RoundTrip(g.n, g.text(), ok, len(o.query_log), ms, err, log)


def _rt_job(args):
    spine, n, mode, fallback = args
    g = from_spine(spine) if spine else path(n)
    return roundtrip_one(g, mode, fallback)


def sweep_instances(ns: Sequence[int], samples: int, seed: int) -> List[Caterpillar]:
    out = []
    for n in ns:
        rng = random.Random("%d:%d" % (seed, n))
        out.extend(sample_caterpillar(n, rng) for _ in range(samples))
    return out


def roundtrip_sweep(ns: Sequence[int], samples: int, seed: int, mode: str = "strict",
                    workers: int = 1, exhaustive: bool = False,
                    fallback: bool = False) -> List[RoundTrip]:
    """Seeded sampled round trips, or every caterpillar of each n when
    exhaustive is set.  Rows come back sorted, whatever the worker count."""
    if exhaustive:
        hosts = [g for n in ns for g in enumerate_caterpillars(n)]
    else:
        hosts = sweep_instances(ns, samples, seed)
    jobs = [(g.spine, g.n, mode, fallback) for g in hosts]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            rows = list(ex.map(_rt_job, jobs, chunksize=4))
    else:
        rows = [_rt_job(j) for j in jobs]
    return sorted(rows, key=lambda t: (t.n, t.spine, t.ok))


def report_tsv(rows: Iterable[RoundTrip]) -> str:
    return "\n".join(r.tsv() for r in rows) + "\n"


@dataclass
class CollisionReport:
    n: int
    m: int
    groups: List[List[Caterpillar]]

    @property
    def collisions(self) -> int:
        return len(self.groups)

    def text(self) -> str:
        out = []
        for grp in self.groups:
            out.append("# n=%d m=%d group of %d" % (self.n, self.m, len(grp)))
            out.extend(g.text() for g in grp)
        return "\n".join(out) + ("\n" if out else "")


def collision_search(n: int, m: int) -> CollisionReport:
    """Groups of non-isomorphic n-vertex caterpillars with equal m-decks.

    Connected counts split most caterpillars apart cheaply.  Full decks are
    computed only inside groups that agree on every connected card.
    """
    buckets: Dict[tuple, List[Caterpillar]] = defaultdict(list)
    for g in enumerate_caterpillars(n):
        buckets[connected_fingerprint(g, m)].append(g)
    groups = []
    for grp in buckets.values():
        if len(grp) < 2:
            continue
        by_deck: Dict[str, List[Tuple[Caterpillar, DeckFingerprint]]] = defaultdict(list)
        for g in grp:
            d = full_deck(g, m)
            by_deck[d.digest()].append((g, d))
        for items in by_deck.values():
            # digest agreement is re-checked entry by entry
            sub: List[List[Tuple[Caterpillar, DeckFingerprint]]] = []
            for g, d in items:
                for s in sub:
                    if decks_equal(s[0][1], d):
                        s.append((g, d))
                        break
                else:
                    sub.append([(g, d)])
            groups.extend([g for g, _ in s] for s in sub if len(s) > 1)
    groups.sort(key=lambda grp: [g.spine for g in grp])
    return CollisionReport(n, m, groups)
