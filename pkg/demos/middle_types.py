"""The two ways to fill the middle of an r = 8 spine.

With level pairs known, [2,3,2+t,2,3,3+t,2,3] and [2,3,3+t,2,3,2+t,2,3]
agree on every short baton.  The triton B_{2,2:2,3,2+t} splits them; the
reconstructor finds that probe and picks the right arrangement.
"""

from __future__ import annotations

from catrecon.caterpillar import from_spine
from catrecon.patterns import DeckOracle, count_induced, triton
from catrecon.reconstruct import reconstruct_with_state

for t in range(3):
    one = from_spine([2, 3, 2 + t, 2, 3, 3 + t, 2, 3])
    two = from_spine([2, 3, 3 + t, 2, 3, 2 + t, 2, 3])
    p = triton(2, 2, 2, 3, 2 + t)
    print("t=%d n=%d  copies of %s: %d vs %d" % (t, one.n, p, count_induced(one, p), count_induced(two, p)))
    for g in (one, two):
        o = DeckOracle(g.n, hidden=g)
        got, state = reconstruct_with_state(g.n, o, "permissive")
        print("    %-22s -> %-22s %s" % (g.text(), got.text(), ",".join(state.trail)))
