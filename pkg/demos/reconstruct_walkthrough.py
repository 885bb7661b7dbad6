"""Rebuild a hidden 50-vertex caterpillar from induced counts alone.

The reconstructor only sees a DeckOracle: it may ask how many induced
copies of a small caterpillar the hidden graph has, as long as the pattern
has at most (n + 2) // 2 vertices.  The trail shows which route it took.
"""

from __future__ import annotations

import random
from collections import Counter

from catrecon.patterns import DeckOracle
from catrecon.reconstruct import reconstruct_with_state
from catrecon.verify import sample_caterpillar

rng = random.Random("demo:50")
hidden = sample_caterpillar(50, rng)
while 2 * hidden.r <= 50 - 6 or sum(d > 2 for d in hidden.spine) < 4:
    # short spines and few branch vertices take separate routes
    hidden = sample_caterpillar(50, rng)
print("hidden spine :", hidden.text())

oracle = DeckOracle(50, hidden=hidden)
got, state = reconstruct_with_state(50, oracle)
print("recovered    :", got.text())
print("isomorphic   :", got == hidden)
print("case         :", state.case)
print("trail        :", ", ".join(state.trail))
print("level pairs  :", state.levels)

sizes = Counter(s for _, s in oracle.query_log)
print("queries      : %d (largest %d, allowed %d)" % (len(oracle.query_log), oracle.largest_query(),
                                                      oracle.max_card))
print("by size      :", dict(sorted(sizes.items())))
