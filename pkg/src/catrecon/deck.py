"""Exact cumulative m-decks of small forests, and deck algebra.

A deck here holds every induced subgraph with between 1 and m vertices,
counted with multiplicity and keyed by canonical forest code.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, Iterable, List, Mapping, Tuple, Union

from .caterpillar import Caterpillar
from .forest import (
    ForestGraph,
    _code_unchecked,
    canonical_code,
    code_order,
    code_to_hex,
    decode,
    forest,
    hex_to_code,
    tree_code,
)

MAX_EXHAUSTIVE_N = 24


class TooLargeForExhaustive(ValueError):
    pass


class InconsistentDeck(ValueError):
    pass


class CardTooSmallToDecide(ValueError):
    pass


class SizeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class DeckFingerprint:
    n: int
    m: int
    entries: Tuple[Tuple[str, int], ...]  # sorted by code

    def as_dict(self) -> Dict[str, int]:
        return dict(self.entries)

    def get(self, code: str) -> int:
        return self.as_dict().get(code, 0)

    def layer(self, k: int) -> Dict[str, int]:
        return {c: v for c, v in self.entries if code_order(c) == k}

    def digest(self) -> str:
        h = hashlib.sha256(dump_deck(self).encode("ascii"))
        return h.hexdigest()


def make_deck(n: int, m: int, counts: Mapping[str, int]) -> DeckFingerprint:
    items = tuple(sorted((c, int(v)) for c, v in counts.items() if v))
    return DeckFingerprint(n, m, items)


def as_forest(host: Union[Caterpillar, ForestGraph]) -> ForestGraph:
    if isinstance(host, Caterpillar):
        return forest(host.n, host.edges())
    return host


def _subset_codes(adj_masks: List[int], adj: List[List[int]], sizes: Iterable[int],
                  first: Union[int, None] = None) -> Counter:
    n = len(adj_masks)
    cache: Dict[int, str] = {}
    out: Counter = Counter()
    for k in sizes:
        if first is None:
            combos = combinations(range(n), k)
        else:
            combos = ((first,) + rest for rest in combinations(range(first + 1, n), k - 1))
        for sub in combos:
            mask = 0
            for v in sub:
                mask |= 1 << v
            codes = []
            rest = mask
            while rest:
                low = rest & -rest
                comp = low
                frontier = low
                while frontier:
                    grow = 0
                    f = frontier
                    while f:
                        b = f & -f
                        grow |= adj_masks[b.bit_length() - 1]
                        f ^= b
                    grow &= mask & ~comp
                    comp |= grow
                    frontier = grow
                rest &= ~comp
                c = cache.get(comp)
                if c is None:
                    verts = [i for i in range(n) if comp >> i & 1]
                    c = tree_code(adj, verts)
                    cache[comp] = c
                codes.append(c)
            codes.sort()
            out["".join(codes)] += 1
    return out


def _deck_job(args):
    adj_masks, adj, m, first = args
    return _subset_codes(adj_masks, adj, range(1, m + 1), first)


def full_deck(host: Union[Caterpillar, ForestGraph], m: int, workers: int = 1) -> DeckFingerprint:
    g = as_forest(host)
    n = g.order
    if n > MAX_EXHAUSTIVE_N:
        raise TooLargeForExhaustive("exhaustive decks limited to n <= %d (got %d)"
                                    % (MAX_EXHAUSTIVE_N, n))
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    adj = g.adjacency()
    masks = [sum(1 << w for w in nb) for nb in adj]
    if workers <= 1:
        counts = _subset_codes(masks, adj, range(1, m + 1))
    else:
        # split by the smallest chosen vertex
        counts = Counter()
        jobs = [(masks, adj, m, v) for v in range(n)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for part in ex.map(_deck_job, jobs):
                counts.update(part)
    return make_deck(n, m, counts)


def slice_deck(d: DeckFingerprint, m: int) -> DeckFingerprint:
    """The cumulative deck for a smaller card bound."""
    if m > d.m:
        raise SizeMismatch("cannot slice a %d-deck up to %d" % (d.m, m))
    return make_deck(d.n, m, {c: v for c, v in d.entries if code_order(c) <= m})


def check_layer_sizes(d: DeckFingerprint) -> None:
    totals: Counter = Counter()
    for c, v in d.entries:
        totals[code_order(c)] += v
    for k in range(1, d.m + 1):
        if totals[k] != comb(d.n, k):
            raise InconsistentDeck("layer %d has %d cards, expected %d"
                                   % (k, totals[k], comb(d.n, k)))


def _delete_each(code: str) -> Counter:
    g = decode(code)
    adj = g.adjacency()
    out: Counter = Counter()
    for v in range(g.order):
        keep = [u for u in range(g.order) if u != v]
        out[_code_unchecked(adj, keep)] += 1
    return out


def kelly_project(d: DeckFingerprint) -> DeckFingerprint:
    """Derive the (m-1)-deck from the m-cards alone."""
    if d.m < 2:
        raise ValueError("projection needs m >= 2")
    check_layer_sizes(d)
    m = d.m
    raw: Counter = Counter()
    for c, v in d.entries:
        if code_order(c) == m:
            for sub, k in _delete_each(c).items():
                raw[sub] += k * v
    factor = d.n - m + 1
    top = {}
    for c, v in raw.items():
        if v % factor:
            raise InconsistentDeck("multiplicity %d of a %d-card is not divisible by %d"
                                   % (v, m - 1, factor))
        top[c] = v // factor
    if top != d.layer(m - 1):
        raise InconsistentDeck("projected %d-cards disagree with the stored ones" % (m - 1))
    lower = {c: v for c, v in d.entries if code_order(c) < m - 1}
    lower.update(top)
    return make_deck(d.n, m - 1, lower)


SPIDER_222 = canonical_code(forest(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]))


def is_caterpillar_deck(d: DeckFingerprint) -> bool:
    """For a deck of a tree: is the tree a caterpillar?"""
    if d.m < 7:
        raise CardTooSmallToDecide("need cards with 7 vertices, deck has m=%d" % d.m)
    return d.get(SPIDER_222) == 0


def decks_equal(a: DeckFingerprint, b: DeckFingerprint) -> bool:
    if a.m != b.m:
        raise SizeMismatch("m=%d vs m=%d" % (a.m, b.m))
    return a.n == b.n and a.entries == b.entries


def dump_deck(d: DeckFingerprint) -> str:
    lines = ["n=%d m=%d" % (d.n, d.m)]
    for c, v in d.entries:
        lines.append("%d %s" % (v, code_to_hex(c)))
    return "\n".join(lines) + "\n"


def load_deck(text: str) -> DeckFingerprint:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty deck file")
    head = dict(part.split("=", 1) for part in lines[0].split())
    n, m = int(head["n"]), int(head["m"])
    counts = {}
    for ln in lines[1:]:
        mult, hx = ln.split()
        counts[hex_to_code(hx)] = int(mult)
    return make_deck(n, m, counts)
