"""Canonical codes and isomorphism tests for forests.

Each tree component is rooted at its centre (both centres for a bicentral
tree, keeping the smaller encoding) and encoded with the classical sorted
parenthesis scheme.  A forest code is the sorted concatenation of its
component codes.  Codes are balanced bracket strings, so they are
self-delimiting and compare as plain byte strings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

OPEN = "("
CLOSE = ")"


class NotAForest(ValueError):
    pass


@dataclass(frozen=True)
class ForestGraph:
    order: int
    edges: Tuple[Tuple[int, int], ...] = field(default=())

    def adjacency(self) -> List[List[int]]:
        adj: List[List[int]] = [[] for _ in range(self.order)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


def forest(order: int, edges: Iterable[Sequence[int]]) -> ForestGraph:
    es = tuple((int(u), int(v)) for u, v in edges)
    g = ForestGraph(order, es)
    _check_forest(g)
    return g


def _check_forest(g: ForestGraph) -> None:
    parent = list(range(g.order))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        if not (0 <= u < g.order and 0 <= v < g.order):
            raise NotAForest("edge (%d,%d) out of range" % (u, v))
        if u == v:
            raise NotAForest("self-loop at %d" % u)
        a, b = find(u), find(v)
        if a == b:
            raise NotAForest("cycle or repeated edge through (%d,%d)" % (u, v))
        parent[a] = b


def components(adj: List[List[int]], verts: Iterable[int] | None = None) -> List[List[int]]:
    todo = list(range(len(adj))) if verts is None else list(verts)
    allowed = set(todo)
    seen = set()
    out = []
    for s in todo:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in allowed and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        out.append(comp)
    return out


def _centers(adj: List[List[int]], comp: List[int]) -> List[int]:
    if len(comp) <= 2:
        return list(comp)
    inside = set(comp)
    deg = {v: sum(1 for w in adj[v] if w in inside) for v in comp}
    layer = [v for v in comp if deg[v] <= 1]
    left = len(comp)
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                if w in inside and deg[w] > 1:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
            deg[v] = 0
        layer = nxt
    return layer


def _rooted(adj: List[List[int]], root: int, inside: set) -> str:
    # iterative post-order to survive long paths
    order = []
    parent = {root: -1}
    stack = [root]
    while stack:
        x = stack.pop()
        order.append(x)
        for y in adj[x]:
            if y in inside and y != parent[x]:
                parent[y] = x
                stack.append(y)
    code: Dict[int, str] = {}
    for x in reversed(order):
        kids = sorted(code[y] for y in adj[x] if y in inside and parent.get(y) == x)
        code[x] = OPEN + "".join(kids) + CLOSE
    return code[root]


def tree_code(adj: List[List[int]], comp: List[int]) -> str:
    inside = set(comp)
    return min(_rooted(adj, c, inside) for c in _centers(adj, comp))


def canonical_code(g: ForestGraph) -> str:
    _check_forest(g)
    return _code_unchecked(g.adjacency())


def _code_unchecked(adj: List[List[int]], verts: Iterable[int] | None = None) -> str:
    codes = [tree_code(adj, c) for c in components(adj, verts)]
    codes.sort()
    return "".join(codes)


def is_isomorphic(f: ForestGraph, g: ForestGraph) -> bool:
    if f.order != g.order or len(f.edges) != len(g.edges):
        _check_forest(f)
        _check_forest(g)
        return False
    return canonical_code(f) == canonical_code(g)


def code_to_hex(code: str) -> str:
    return code.encode("ascii").hex()


def hex_to_code(text: str) -> str:
    code = bytes.fromhex(text).decode("ascii")
    if set(code) - {OPEN, CLOSE}:
        raise ValueError("not a forest code: %r" % text)
    return code


def split_code(code: str) -> List[str]:
    """Split a forest code into its component (rooted tree) codes."""
    out = []
    depth = 0
    start = 0
    for i, ch in enumerate(code):
        depth += 1 if ch == OPEN else -1
        if depth < 0:
            raise ValueError("unbalanced code")
        if depth == 0:
            out.append(code[start:i + 1])
            start = i + 1
    if depth != 0:
        raise ValueError("unbalanced code")
    return out


def decode(code: str) -> ForestGraph:
    """Rebuild a forest (with arbitrary labels) from its code."""
    edges = []
    stack: List[int] = []
    nxt = 0
    for ch in code:
        if ch == OPEN:
            if stack:
                edges.append((stack[-1], nxt))
            stack.append(nxt)
            nxt += 1
        else:
            stack.pop()
    return ForestGraph(nxt, tuple(edges))


def code_order(code: str) -> int:
    return code.count(OPEN)


def component_count(code: str) -> int:
    return len(split_code(code))
