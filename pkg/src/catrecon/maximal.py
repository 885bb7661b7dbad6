"""Maximal batons and tritons: direct tables, the exclusion solver, and the
level-pair / ordered-pair bookkeeping built on top of them.

Family members are keyed by their key-vertex degrees.  A j-baton key is an
unordered pair (a <= b).  A (j, j')-triton key is an ordered triple (a, b, c)
with a at distance j from the middle key b and c at distance j' from it;
when j == j' a triple and its reversal are one entry.

Counting convention.  A copy of a triton inside a larger triton is counted
together with its key structure, so that every structured copy lies in exactly
one maximal member.  The only graphs carrying two structures of the same
member are B_{j,j':a,2,a} with j != j' (the middle can sit at either end's
distance j), whose structured count is twice the plain induced count.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, gcd
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .caterpillar import Caterpillar
from .patterns import PatternGraph, baton, triton


class InconsistentSeed(ValueError):
    pass


class InconsistentTables(ValueError):
    pass


class UnderdeterminedFamily(RuntimeError):
    """Legal counts leave more than one maximal table possible."""

    def __init__(self, family, candidates):
        super().__init__("%d candidate tables for %s" % (len(candidates), family))
        self.family = family
        self.candidates = candidates


class IncompleteSearch(UnderdeterminedFamily):
    """The candidate search hit its node or answer limit; `candidates` is
    only a partial list."""


Key = Tuple[int, ...]


@dataclass(frozen=True)
class Family:
    kind: str  # "baton" or "triton"
    j: int
    jp: int = 0

    def __str__(self) -> str:
        if self.kind == "baton":
            return "%d-batons" % self.j
        return "(%d,%d)-tritons" % (self.j, self.jp)

    @property
    def length(self) -> int:
        return self.j + self.jp

    def norm(self, key: Sequence[int]) -> Key:
        k = tuple(key)
        if self.kind == "baton":
            return (min(k), max(k))
        if self.j == self.jp:
            return min(k, k[::-1])
        return k

    def total(self, r: int) -> int:
        """Number of maximal members in a caterpillar with r spine vertices."""
        if self.kind == "baton":
            return max(0, r - self.j)
        t = max(0, r - self.j - self.jp)
        return t if self.j == self.jp else 2 * t

    def order(self, key: Key) -> int:
        if self.kind == "baton":
            return self.j + key[0] + key[1] - 1
        return self.j + self.jp + key[0] + key[1] + key[2] - 3

    def pattern(self, key: Key) -> PatternGraph:
        if self.kind == "baton":
            return baton(self.j, key[0], key[1])
        return triton(self.j, self.jp, *key)

    def structures(self, key: Key) -> int:
        if self.kind == "triton" and self.j != self.jp and key[1] == 2 and key[0] == key[2]:
            return 2
        return 1

    def inside(self, small: Key, big: Key) -> int:
        """Structured copies of member `small` in maximal member `big` that
        use the key vertices of `big`."""
        if self.kind == "baton":
            a, b = small
            x, y = big
            v = comb(x - 1, a - 1) * comb(y - 1, b - 1)
            if a != b:
                v += comb(x - 1, b - 1) * comb(y - 1, a - 1)
            return v
        a, b, c = small
        x, y, z = big
        mid = comb(y - 2, b - 2)
        if not mid:
            return 0
        v = comb(x - 1, a - 1) * comb(z - 1, c - 1)
        if self.j == self.jp and a != c:
            v += comb(x - 1, c - 1) * comb(z - 1, a - 1)
        return v * mid

    def keys(self, values: Iterable[int], mids: Optional[Iterable[int]] = None) -> List[Key]:
        vals = sorted(set(values))
        if self.kind == "baton":
            return [(a, b) for a in vals for b in vals if a <= b]
        mvals = vals if mids is None else sorted(set(mids))
        out = set()
        for a, b, c in product(vals, mvals, vals):
            out.add(self.norm((a, b, c)))
        return sorted(out)


@dataclass
class MaximalFamilyTable:
    family: Family
    entries: Dict[Key, int] = field(default_factory=dict)

    def clean(self) -> "MaximalFamilyTable":
        return MaximalFamilyTable(self.family, {k: v for k, v in self.entries.items() if v})

    def total(self) -> int:
        return sum(self.entries.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, MaximalFamilyTable):
            return NotImplemented
        return self.family == other.family and self.clean().entries == other.clean().entries

    def tsv(self) -> str:
        lines = []
        for k, v in sorted(self.clean().entries.items()):
            if self.family.kind == "baton":
                lines.append("%d\t%d\t%d\t%d" % (self.family.j, k[0], k[1], v))
            else:
                lines.append("%d,%d\t%s\t%d" % (self.family.j, self.family.jp,
                                                  "\t".join(map(str, k)), v))
        return "\n".join(lines)


def baton_family(j: int) -> Family:
    return Family("baton", j)


def triton_family(j: int, jp: int) -> Family:
    return Family("triton", j, jp)


def direct_maximal_table(g: Caterpillar, family: Family) -> MaximalFamilyTable:
    """Read the maximal members straight off a known spine."""
    sp = g.spine
    r = len(sp)
    out: Counter = Counter()
    if family.kind == "baton":
        for i in range(r - family.j):
            out[family.norm((sp[i], sp[i + family.j]))] += 1
    else:
        j, jp = family.j, family.jp
        for i in range(r - j - jp):
            fwd = (sp[i], sp[i + j], sp[i + j + jp])
            out[family.norm(fwd)] += 1
            if j != jp:
                # the mirrored occurrence: j-end on the right
                i2 = i + jp  # middle index when the j side points right
                out[family.norm((sp[i2 + j], sp[i2], sp[i]))] += 1
    return MaximalFamilyTable(family, dict(out))


def structured_count(o, family: Family, key: Key) -> int:
    return o.query(family.pattern(key)) * family.structures(key)


def solve_exclusion(o, family: Family, seeded: MaximalFamilyTable,
                    values: Optional[Iterable[int]] = None,
                    mids: Optional[Iterable[int]] = None) -> MaximalFamilyTable:
    """Triangular exclusion: largest members first, each remainder read off
    after removing copies inside strictly larger maximal members.

    `values` limits the key degrees considered (default: every value from 2
    up to the largest seeded or queryable degree); members whose key degrees
    are not vertex degrees of the host have no maximal copies, so skipping
    them does not change the others.
    """
    seeds = {family.norm(k): v for k, v in seeded.entries.items()}
    if values is None:
        top = max([max(k) for k in seeds] + [o.max_card])
        values = range(2, top + 1)
    keys = family.keys(values, mids)
    keys.sort(key=lambda k: (-family.order(k), k))
    found: Dict[Key, int] = {}
    for key in keys:
        if key in seeds:
            val = seeds[key]
            if val < 0:
                raise InconsistentSeed("negative seed for %s %s" % (family, key))
            found[key] = val
            continue
        if family.order(key) > o.n:
            found[key] = 0  # larger than the host itself
            continue
        if family.order(key) > o.max_card:
            raise InconsistentSeed("no seed for unqueryable member %s %s" % (family, key))
        rem = structured_count(o, family, key)
        for big, mult in found.items():
            if mult and big != key:
                rem -= family.inside(key, big) * mult
        if rem < 0:
            raise InconsistentSeed("negative remainder %d at %s %s" % (rem, family, key))
        found[key] = rem
    return MaximalFamilyTable(family, found).clean()


# ---------------------------------------------------------------------------
# symbolic exclusion: unknown seeds solved from the legal counts


def _solve_linear(rows: Iterable[Sequence[int]], nvars: int):
    """Row-reduce integer rows [coeffs..., rhs].

    Rows are folded into an integer echelon basis one at a time (fraction
    free, each row divided by its content).  Once the basis has full rank
    the remaining rows are not examined: they cannot change the solution,
    and consistency is checked afterwards on the realised table anyway.

    Returns (pivot_rows, pivot_cols, consistent) with pivot rows in reduced
    form over the rationals.
    """
    basis: Dict[int, List[int]] = {}
    order: List[int] = []
    for row in rows:
        v = list(row)
        for col in order:
            g = v[col]
            if g:
                b = basis[col]
                f = b[col]
                v = [x * f - y * g for x, y in zip(v, b)]
                c = 0
                for x in v:
                    if x:
                        c = gcd(c, x)
                if c > 1:
                    v = [x // c for x in v]
        piv = next((c for c in range(nvars) if v[c]), None)
        if piv is None:
            if v[nvars] != 0:
                return [], [], False
            continue
        basis[piv] = v
        order.append(piv)
        if len(order) == nvars:
            break
    # back substitution into reduced rows
    piv_cols = sorted(order)
    red: Dict[int, List[Fraction]] = {}
    for col in reversed(order):
        b = basis[col]
        row = [Fraction(x, b[col]) for x in b]
        for c2, r2 in red.items():
            if row[c2]:
                f = row[c2]
                row = [x - f * y for x, y in zip(row, r2)]
        red[col] = row
    return [red[c] for c in piv_cols], piv_cols, True


def seed_and_solve(o, family: Family, values: Iterable[int], r: int,
                   mids: Optional[Iterable[int]] = None,
                   extra_rows: Optional[Callable] = None,
                   limit: int = 64, node_budget: int = 20_000) -> List[MaximalFamilyTable]:
    """All maximal tables for `family` consistent with every legal count.

    Members too large to query get symbolic multiplicities; every queryable
    member then has an affine multiplicity from the exclusion recursion.
    Members whose keys are not host degrees must come out as zero, and the
    total must equal the number of maximal members.  The resulting linear
    system is solved exactly; any leftover freedom is enumerated over
    nonnegative integers.
    """
    values = sorted(set(values))
    mids = values if mids is None else sorted(set(mids))
    keys = [k for k in family.keys(values, mids) if family.order(k) <= o.n]
    top = max(values)
    # every key with entries in 2..top whose pattern fits gives an equation
    probe_vals = range(2, top + 1)
    probes = [k for k in family.keys(probe_vals) if family.order(k) <= o.max_card]
    keyset = set(keys)
    allkeys = sorted(keyset | set(probes), key=lambda k: (-family.order(k), k))
    sym = [k for k in keys if family.order(k) > o.max_card]
    sidx = {k: i for i, k in enumerate(sym)}
    nv = len(sym)
    forms: Dict[Key, List[int]] = {}  # coefficients over symbols, then constant
    rows: List[List[int]] = []
    for key in allkeys:
        if key in sidx:
            f = [0] * (nv + 1)
            f[sidx[key]] = 1
            forms[key] = f
            continue
        f = [0] * nv + [structured_count(o, family, key)]
        for big, bf in forms.items():
            c = family.inside(key, big)
            if c and big != key:
                for i in range(nv + 1):
                    if bf[i]:
                        f[i] -= c * bf[i]
        if key in keyset:
            forms[key] = f
        else:
            # not a host degree pattern: its maximal count is zero
            rows.append(f[:nv] + [-f[nv]])
    tot = [0] * (nv + 1)
    for f in forms.values():
        for i in range(nv + 1):
            tot[i] += f[i]
    rows.append(tot[:nv] + [family.total(r) - tot[nv]])
    if extra_rows is not None:
        rows.extend(extra_rows(sym, forms))

    def realise(assign: Optional[Sequence[int]]) -> Optional[MaximalFamilyTable]:
        if assign is None:
            return None
        ent = {}
        for key, f in forms.items():
            v = f[nv] + sum(f[i] * assign[i] for i in range(nv))
            if v < 0:
                return None
            ent[key] = v
        if sum(ent.values()) != family.total(r):
            return None
        return MaximalFamilyTable(family, ent).clean()

    if nv == 0:
        for row in rows:
            if row[0] != 0:
                raise InconsistentSeed("count identity fails for %s" % family)
        t = realise([])
        if t is None:
            raise InconsistentSeed("negative multiplicity in %s" % family)
        return [t]
    red, piv, ok = _solve_linear(rows, nv)
    if not ok:
        raise InconsistentSeed("no table for %s fits the counts" % family)
    free = [i for i in range(nv) if i not in piv]
    # every symbol and every member multiplicity as an affine function of
    # the free symbols: (coefficients over `free`, constant)
    affine: Dict[int, Tuple[List[Fraction], Fraction]] = {}
    for i in free:
        affine[i] = ([Fraction(int(i == f)) for f in free], Fraction(0))
    for row, pc in zip(red, piv):
        affine[pc] = ([-row[f] for f in free], row[nv])
    cons = [affine[i] for i in range(nv)]
    for f in forms.values():
        co = [Fraction(0)] * len(free)
        c0 = Fraction(f[nv])
        for i in range(nv):
            if f[i]:
                a, b = affine[i]
                co = [x + f[i] * y for x, y in zip(co, a)]
                c0 += f[i] * b
        cons.append((co, c0))
    bound = family.total(r)
    out: List[MaximalFamilyTable] = []
    nodes = [node_budget]
    _search_free(len(free), cons, bound, [], out, limit,
                 lambda choice: realise(_assign(nv, free, red, piv, choice)), nodes)
    if len(out) > limit or nodes[0] < 0:
        raise IncompleteSearch(family, out)
    if not out:
        raise InconsistentSeed("no nonnegative integral table for %s" % family)
    return out


def _assign(nv, free, red, piv, choice):
    assign: List[Optional[Fraction]] = [None] * nv
    for i, v in zip(free, choice):
        assign[i] = Fraction(v)
    for row, pc in zip(red, piv):
        v = row[nv] - sum(row[i] * assign[i] for i in free)
        if v.denominator != 1 or v < 0:
            return None
        assign[pc] = v
    return [int(x) for x in assign]


def _search_free(k, cons, bound, prefix, out, limit, accept, nodes):
    """Depth-first search over integer values of the free symbols, each in
    0..bound, narrowing each range so that no constraint (affine >= 0) can
    become unsatisfiable.  nodes[0] counts down the visits allowed."""
    rows = []
    for co, c0 in cons:
        den = 1
        for x in list(co) + [c0]:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        ico = [int(x * den) for x in co]
        # best case for the symbols after position d
        tail = [0] * (k + 1)
        for d in range(k - 1, -1, -1):
            tail[d] = tail[d + 1] + max(ico[d], 0) * bound
        rows.append((ico, tail, int(c0 * den)))
    _dfs(k, rows, bound, prefix, [c for _, _, c in rows], out, limit, accept, nodes)


def _dfs(k, rows, bound, prefix, base, out, limit, accept, nodes):
    nodes[0] -= 1
    if len(out) > limit or nodes[0] < 0:
        return
    d = len(prefix)
    if d == k:
        assign = accept(prefix)
        if assign is not None:
            out.append(assign)
        return
    lo, hi = 0, bound
    for (co, tail, _), b in zip(rows, base):
        a = co[d]
        slack = b + tail[d + 1]
        # need a*x + slack >= 0
        if a == 0:
            if slack < 0:
                return
        elif a > 0:
            lo = max(lo, -(slack // a))
        else:
            hi = min(hi, slack // -a)
        if lo > hi:
            return
    for x in range(lo, hi + 1):
        nb = [b + co[d] * x for (co, _, _), b in zip(rows, base)]
        _dfs(k, rows, bound, prefix + [x], nb, out, limit, accept, nodes)
        if len(out) > limit or nodes[0] < 0:
            return


def end_rows(family: Family, ends: MaximalFamilyTable) -> Callable:
    """Rows tying a triton family to the baton table of its total length:
    the end degrees of the maximal tritons are exactly the end pairs of the
    maximal (j+j')-batons, each seen twice when j != j'."""
    mult = 1 if family.j == family.jp else 2

    def rows(sym, forms):
        nv = len(sym)
        groups: Dict[Key, List[int]] = {}
        for key, f in forms.items():
            g = groups.setdefault((min(key[0], key[2]), max(key[0], key[2])), [0] * (nv + 1))
            for i in range(nv + 1):
                g[i] += f[i]
        want = {k: v for k, v in ends.entries.items()}
        out = []
        for pair in set(groups) | set(want):
            g = groups.get(pair, [0] * (nv + 1))
            out.append(g[:nv] + [mult * want.get(pair, 0) - g[nv]])
        return out
    return rows


def determine_table(o, family: Family, values: Iterable[int], r: int,
                    mids: Optional[Iterable[int]] = None,
                    ends: Optional[MaximalFamilyTable] = None) -> MaximalFamilyTable:
    """Unique table or UnderdeterminedFamily.  When every member fits, this
    is plain exclusion.  For tritons, `ends` is the known baton table of
    length j + j'; it adds end-pair constraints to the solve."""
    values = sorted(set(values))
    if all(family.order(k) <= o.max_card for k in family.keys(values, mids)):
        t = solve_exclusion(o, family, MaximalFamilyTable(family), values, mids)
        if t.total() != family.total(r):
            raise InconsistentTables("%s: %d members, expected %d"
                                     % (family, t.total(), family.total(r)))
        return t
    extra = end_rows(family, ends) if ends is not None and family.kind == "triton" else None
    cands = seed_and_solve(o, family, values, r, mids, extra_rows=extra)
    if len(cands) != 1:
        raise UnderdeterminedFamily(family, cands)
    seed = MaximalFamilyTable(family, {k: cands[0].entries.get(k, 0)
                                       for k in family.keys(values, mids)
                                       if family.order(k) > o.max_card})
    t = solve_exclusion(o, family, seed, values, mids)
    if t != cands[0]:
        raise InconsistentTables("exclusion disagrees with the seeded solve for %s" % family)
    return t


# ---------------------------------------------------------------------------
# level pairs and ordered pairs


def level_pairs(batons: Dict[int, MaximalFamilyTable], r: int,
                spine_degrees: Sequence[int], q: Optional[int] = None):
    """Level pairs {d(v_k), d(v_{r+1-k})} for k = 1..q, plus the residual
    middle degrees when q = floor((r-1)/2)."""
    qmax = (r - 1) // 2
    q = qmax if q is None else q
    pairs: List[Tuple[int, int]] = []
    for k in range(1, q + 1):
        pool: Counter = Counter()
        for d in spine_degrees:
            pool[d] += 2
        for key, mult in batons[k].entries.items():
            for d in key:
                pool[d] -= mult
        for a, b in pairs:
            pool[a] -= 1
            pool[b] -= 1
        if any(v < 0 for v in pool.values()):
            raise InconsistentTables("degree multiset underflow at level %d" % k)
        left = sorted(pool.elements())
        if len(left) != 2:
            raise InconsistentTables("level %d leaves %d degrees" % (k, len(left)))
        pairs.append((left[0], left[1]))
    middle: List[int] = []
    if q == qmax:
        pool = Counter(spine_degrees)
        for a, b in pairs:
            pool[a] -= 1
            pool[b] -= 1
        if any(v < 0 for v in pool.values()):
            raise InconsistentTables("degree multiset underflow in the middle")
        middle = sorted(pool.elements())
        if len(middle) != r - 2 * q:
            raise InconsistentTables("middle has %d degrees" % len(middle))
    return pairs, middle


def ordered_pair_sets(batons: Dict[int, MaximalFamilyTable],
                      tritons: Dict[Tuple[int, int], MaximalFamilyTable],
                      r: int, s: int, q: int, upto: Optional[int] = None):
    """For each k with k + s <= q, the unordered set of the two ordered pairs
    (d(v_k), d(v_{k+s})) and (d(v_{ov k}), d(v_{ov(k+s)})); returned as a
    dict k -> sorted 2-tuple of ordered pairs.  `upto` stops after that k
    (only the tritons (i, s) with i <= upto are then needed)."""
    out: Dict[int, Tuple[Tuple[int, int], Tuple[int, int]]] = {}
    last = q - s if upto is None else min(q - s, upto)
    for k in range(1, last + 1):
        pool: Counter = Counter()
        for (x, y), mult in batons[s].entries.items():
            pool[(x, y)] += mult
            pool[(y, x)] += mult
        tab = tritons[(k, s)]
        for (a, b, c), mult in tab.entries.items():
            pool[(b, c)] -= mult
            if k == s:
                pool[(b, a)] -= mult
        for i in range(1, k):
            for pr in out[i]:
                pool[pr] -= 1
        if any(v < 0 for v in pool.values()):
            raise InconsistentTables("ordered pair underflow at k=%d s=%d" % (k, s))
        left = sorted(pool.elements())
        if len(left) != 2:
            raise InconsistentTables("k=%d s=%d leaves %d ordered pairs" % (k, s, len(left)))
        out[k] = (left[0], left[1])
    return out
