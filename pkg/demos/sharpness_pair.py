"""Two spiders that look alike on every card of size k = n // 2.

T_{a,b} joins paths of lengths 1, a and b at one vertex.  For n = 12 the
pair T_{5,5} and T_{4,6} shares its 6-deck; one more vertex per card is
enough to tell them apart.  This script finds a 7-card they disagree on.
"""

from __future__ import annotations

from catrecon.deck import full_deck
from catrecon.forest import decode
from catrecon.verify import sharpness_pair

n = 12
k = n // 2
g, h = sharpness_pair(n)
print("pair:", g.text(), "and", h.text())

dg, dh = full_deck(g, k), full_deck(h, k)
print("%d-decks identical: %s (%d distinct cards)" % (k, dg.digest() == dh.digest(), len(dg.entries)))

bg, bh = full_deck(g, k + 1).as_dict(), full_deck(h, k + 1).as_dict()
diff = sorted(c for c in set(bg) | set(bh) if bg.get(c, 0) != bh.get(c, 0))
print("%d-cards that differ: %d" % (k + 1, len(diff)))
card = decode(diff[0])
print("  e.g. a card with %d vertices and edges %s" % (card.order, card.edges))
print("  appears %d times in one deck and %d in the other" % (bg.get(diff[0], 0), bh.get(diff[0], 0)))
