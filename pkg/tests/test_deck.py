from __future__ import annotations

import random
from collections import Counter
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from catrecon.caterpillar import enumerate_caterpillars, from_spine, path, star, t_ab
from catrecon.deck import (
    CardTooSmallToDecide,
    InconsistentDeck,
    SizeMismatch,
    decks_equal,
    dump_deck,
    full_deck,
    is_caterpillar_deck,
    kelly_project,
    load_deck,
    make_deck,
    slice_deck,
    TooLargeForExhaustive,
)
from catrecon.forest import canonical_code, forest, code_order

P1 = canonical_code(forest(1, []))
P2 = canonical_code(forest(2, [(0, 1)]))
TWO_P1 = canonical_code(forest(2, []))
P2_BY_CODE = P2


def test_small_decks_by_hand():
    assert full_deck(path(3), 2).as_dict() == {P1: 3, P2: 2, TWO_P1: 1}
    assert full_deck(star(3), 2).as_dict() == {P1: 4, P2: 3, TWO_P1: 3}


def test_sharpness_pair_six_vertices():
    assert decks_equal(full_deck(t_ab(2, 2), 3), full_deck(t_ab(1, 3), 3))
    assert not decks_equal(full_deck(t_ab(2, 2), 4), full_deck(t_ab(1, 3), 4))
    d = full_deck(t_ab(2, 2), 4)
    assert decks_equal(d, d)


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        decks_equal(full_deck(path(5), 2), full_deck(path(5), 3))


def test_budget_guard():
    with pytest.raises(TooLargeForExhaustive):
        full_deck(path(25), 3)


def random_forest_edges(rng, n):
    return [(v, rng.randrange(v)) for v in range(1, n) if rng.random() < 0.85]


@given(st.integers(2, 11), st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_layer_sizes_are_binomials(n, rng):
    f = forest(n, random_forest_edges(rng, n))
    m = rng.randint(1, n)
    d = full_deck(f, m)
    per = Counter()
    for c, v in d.entries:
        per[code_order(c)] += v
    assert all(per[k] == comb(n, k) for k in range(1, m + 1))


def test_kelly_examples():
    d3 = full_deck(path(5), 3)
    d2 = kelly_project(d3)
    assert d2.as_dict()[P2] == 4
    assert d2 == full_deck(path(5), 2)


def test_tampered_deck_rejected():
    d = full_deck(from_spine([3, 2, 3]), 4)
    top = [c for c, _ in d.entries if code_order(c) == 4]
    bumped = d.as_dict()
    bumped[top[0]] += 1
    with pytest.raises(InconsistentDeck):
        kelly_project(make_deck(d.n, d.m, bumped))


@given(st.integers(3, 12), st.randoms(use_true_random=False))
@settings(max_examples=25, deadline=None)
def test_kelly_random_forests(n, rng):
    f = forest(n, random_forest_edges(rng, n))
    m = rng.randint(2, n)
    assert kelly_project(full_deck(f, m)) == full_deck(f, m - 1)


def test_kelly_sampled_larger_hosts():
    rng = random.Random(20)
    for _ in range(3):
        n = rng.randint(13, 16)
        f = forest(n, [(v, rng.randrange(v)) for v in range(1, n)])
        m = rng.randint(3, 6)
        assert kelly_project(full_deck(f, m)) == full_deck(f, m - 1)


def test_caterpillar_recognition():
    assert is_caterpillar_deck(full_deck(from_spine([3, 2, 2, 3]), 7))
    spider = forest(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    assert not is_caterpillar_deck(full_deck(spider, 7))
    # 13 vertices: an 11-vertex path with a two-edge leg at its middle vertex
    edges = [(i, i + 1) for i in range(10)] + [(5, 11), (11, 12)]
    assert not is_caterpillar_deck(full_deck(forest(13, edges), 7))
    with pytest.raises(CardTooSmallToDecide):
        is_caterpillar_deck(full_deck(path(8), 6))


def test_caterpillars_pass_recognition():
    for c in enumerate_caterpillars(9):
        assert is_caterpillar_deck(full_deck(c, 7))


def test_deck_file_round_trip():
    d = full_deck(from_spine([3, 2, 3]), 4)
    text = dump_deck(d)
    assert text.splitlines()[0] == "n=7 m=4"
    body = text.splitlines()[1:]
    assert body == sorted(body, key=lambda ln: ln.split()[1])
    assert load_deck(text) == d


def test_slices():
    d = full_deck(t_ab(2, 3), 5)
    assert slice_deck(d, 3) == full_deck(t_ab(2, 3), 3)


def test_parallel_matches_serial():
    g = from_spine([3, 2, 4, 2])
    assert full_deck(g, 5, workers=2) == full_deck(g, 5)
