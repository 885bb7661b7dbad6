"""Independent brute-force helpers for the test suite.

Nothing here calls the counting or exclusion code under test; isomorphism
questions go through networkx or explicit permutations.
"""

from __future__ import annotations

import itertools
from collections import Counter
from typing import Dict, Iterator, List, Sequence, Tuple

import networkx as nx

from catrecon.caterpillar import Caterpillar


def nx_tree(edges: Sequence[Tuple[int, int]], order: int) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(order))
    g.add_edges_from(edges)
    return g


def cat_graph(c: Caterpillar) -> nx.Graph:
    return nx_tree(c.edges(), c.n)


def is_caterpillar_graph(g: nx.Graph) -> bool:
    inner = [v for v in g if g.degree(v) > 1]
    h = g.subgraph(inner)
    return all(h.degree(v) <= 2 for v in h) and (len(inner) == 0 or nx.is_connected(h))


def spine_of(g: nx.Graph) -> List[int]:
    """Spine degree list of a caterpillar given as a graph (some orientation)."""
    inner = [v for v in g if g.degree(v) > 1]
    if not inner:
        return []
    h = g.subgraph(inner)
    ends = [v for v in h if h.degree(v) <= 1]
    start = ends[0]
    order = [start]
    prev = None
    cur = start
    while True:
        nxt = [w for w in h.neighbors(cur) if w != prev]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    return [g.degree(v) for v in order]


def connected_subsets(adj: List[List[int]], limit: int) -> Iterator[Tuple[int, ...]]:
    """Every connected vertex set with at most `limit` vertices, once each."""
    n = len(adj)
    for v in range(n):
        # sets whose smallest vertex is v
        def grow(current: Tuple[int, ...], frontier: Tuple[int, ...], banned: frozenset):
            yield current
            if len(current) == limit:
                return
            fr = list(frontier)
            for idx, w in enumerate(fr):
                new_banned = banned | set(fr[:idx + 1])
                ext = [x for x in adj[w] if x > v and x not in banned and x not in current
                       and x not in fr]
                yield from grow(current + (w,), tuple(fr[idx + 1:]) + tuple(ext),
                                new_banned | set(ext))
        start_front = tuple(x for x in adj[v] if x > v)
        yield from grow((v,), start_front, frozenset(start_front) | {v})


def subset_count_by_iso(host_edges, order: int, pattern: nx.Graph) -> int:
    """Count induced copies of a (connected) pattern by trying every subset."""
    g = nx_tree(host_edges, order)
    k = pattern.number_of_nodes()
    cnt = 0
    for sub in itertools.combinations(range(order), k):
        h = g.subgraph(sub)
        if h.number_of_edges() == pattern.number_of_edges() and nx.is_isomorphic(h, pattern):
            cnt += 1
    return cnt


def perm_isomorphic(order: int, e1, e2) -> bool:
    s2 = {frozenset(e) for e in e2}
    if len(e1) != len(e2):
        return False
    for p in itertools.permutations(range(order)):
        if all(frozenset((p[u], p[v])) in s2 for u, v in e1):
            return True
    return False


def all_trees(n: int) -> List[nx.Graph]:
    if n == 1:
        g = nx.Graph()
        g.add_node(0)
        return [g]
    return [nx.convert_node_labels_to_integers(t) for t in nx.nonisomorphic_trees(n)]


def decorated_graph(pendants: Sequence[int]) -> nx.Graph:
    """Path u_0..u_L with pendants[i] leaves at u_i, built from scratch."""
    g = nx.Graph()
    L = len(pendants) - 1
    g.add_nodes_from(range(L + 1))
    for i in range(L):
        g.add_edge(i, i + 1)
    nxt = L + 1
    for i, c in enumerate(pendants):
        for _ in range(c):
            g.add_edge(i, nxt)
            nxt += 1
    return g


def all_decorated(max_order: int) -> List[Tuple[int, ...]]:
    """Every pendant vector (up to reversal) with at most max_order vertices."""
    out = set()
    for length in range(1, max_order + 1):
        spare = max_order - length
        for total in range(spare + 1):
            for comp in _weak(total, length):
                out.add(min(comp, comp[::-1]))
    return sorted(out)


def _weak(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak(total - first, parts - 1):
            yield (first,) + rest


def wl_key(g: nx.Graph) -> str:
    return nx.weisfeiler_lehman_graph_hash(g)


def induced_census(host: Caterpillar, limit: int) -> Dict[str, List[nx.Graph]]:
    """Connected induced subgraphs (as graphs), grouped by a hash."""
    g = cat_graph(host)
    adj = [sorted(g.neighbors(v)) for v in range(host.n)]
    out: Dict[str, List[nx.Graph]] = {}
    for sub in connected_subsets(adj, limit):
        h = g.subgraph(sub).copy()
        out.setdefault(wl_key(h), []).append(h)
    return out


def census_count(census: Dict[str, List[nx.Graph]], pattern: nx.Graph) -> int:
    return sum(1 for h in census.get(wl_key(pattern), []) if nx.is_isomorphic(h, pattern))


def spine_counter(spines) -> Counter:
    return Counter(tuple(s) for s in spines)


def _adjacency(edges, order: int) -> List[List[int]]:
    adj: List[List[int]] = [[] for _ in range(order)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def caterpillar_key(adj: List[List[int]], verts: Sequence[int]):
    """Spine degree sequence (min over both directions) of the caterpillar
    induced on verts; ('P', k) when it has no spine."""
    vs = set(verts)
    deg = {v: sum(1 for w in adj[v] if w in vs) for v in vs}
    inner = [v for v in vs if deg[v] >= 2]
    if not inner:
        return ("P", len(vs))
    ins = set(inner)
    nb = {v: [w for w in adj[v] if w in ins] for v in inner}
    start = next(v for v in inner if len(nb[v]) <= 1)
    seq, prev, cur = [], None, start
    while cur is not None:
        seq.append(deg[cur])
        nxt = [w for w in nb[cur] if w != prev]
        prev, cur = cur, (nxt[0] if nxt else None)
    return min(tuple(seq), tuple(seq[::-1]))


def subtree_census(edges, order: int, limit: int) -> Counter:
    """Induced connected subgraphs with at most `limit` vertices, by key."""
    adj = _adjacency(edges, order)
    return Counter(caterpillar_key(adj, s) for s in connected_subsets(adj, limit))


def decorated_key(pendants: Sequence[int]):
    g = decorated_graph(pendants)
    return caterpillar_key(_adjacency(g.edges(), g.number_of_nodes()), list(g.nodes))
