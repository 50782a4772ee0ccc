"""Simple undirected graphs on a dense 0-based vertex set.

Vertices are the integers ``0..n-1``.  Graphs are immutable once built; every
operation here is read-only.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Iterator, Optional, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs or out-of-range vertex queries."""


class VertexSet(frozenset):
    """A frozenset of vertices that remembers the size of its universe."""

    universe_size: int

    def __new__(cls, members: Iterable[int] = (), universe_size: int = 0):
        self = super().__new__(cls, members)
        for v in self:
            if not 0 <= v < universe_size:
                raise GraphError(f"vertex {v} outside universe of size {universe_size}")
        self.universe_size = universe_size
        return self

    def __reduce__(self):
        return (VertexSet, (tuple(self), self.universe_size))

    def __repr__(self) -> str:
        return f"VertexSet({sorted(self)}, universe_size={self.universe_size})"


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph.

    ``edges`` is a frozenset of ``(u, v)`` tuples with ``u < v``; ``adj[i]`` is
    the frozenset of neighbours of ``i``.
    """

    __slots__ = ("n", "edges", "adj", "max_degree", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 1:
            raise GraphError(f"vertex count must be positive, got {n}")
        norm = set()
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) outside 0..{n - 1}")
            norm.add(_pair(u, v))
            nbrs[u].add(v)
            nbrs[v].add(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in nbrs))
        object.__setattr__(self, "max_degree", max((len(s) for s in nbrs), default=0))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, i: int) -> int:
        self._check(i)
        return len(self.adj[i])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def relabel(self, mapping: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed to ``mapping[v]``."""
        if sorted(mapping) != list(range(self.n)):
            raise GraphError("relabelling must be a permutation of the vertex set")
        return Graph(self.n, ((mapping[u], mapping[v]) for u, v in self.edges))

    def complement(self) -> Graph:
        return Graph(
            self.n,
            ((u, v) for u in range(self.n) for v in range(u + 1, self.n) if v not in self.adj[u]),
        )

    def _check(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise GraphError(f"vertex {i} out of range 0..{self.n - 1}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.n, self.edges))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, max_degree={self.max_degree})"


def neighborhood(g: Graph, i: int) -> VertexSet:
    g._check(i)
    return VertexSet(g.adj[i], g.n)


def composed_neighborhood(g_outer: Graph, g_inner: Graph, i: int) -> VertexSet:
    """Endpoints of an inner edge followed by an outer edge starting at ``i``.

    With ``g_outer`` blue and ``g_inner`` red this is the red-blue
    neighbourhood.  The result may contain ``i`` itself.
    """
    if g_outer.n != g_inner.n:
        raise GraphError(f"vertex counts differ: {g_outer.n} vs {g_inner.n}")
    g_inner._check(i)
    out: set[int] = set()
    for j in g_inner.adj[i]:
        out |= g_outer.adj[j]
    return VertexSet(out, g_outer.n)


def has_link(g_first: Graph, g_second: Graph, i: int, j: int) -> bool:
    """True iff some ``i'`` has ``ii'`` in ``g_first`` and ``i'j`` in ``g_second``."""
    if g_first.n != g_second.n:
        raise GraphError(f"vertex counts differ: {g_first.n} vs {g_second.n}")
    g_first._check(i)
    g_first._check(j)
    if i == j:
        raise GraphError("links are only defined between distinct vertices")
    return any(j in g_second.adj[x] for x in g_first.adj[i])


def _paths_from(adj: Sequence[frozenset[int]], s: int, depth: int) -> Iterator[list[int]]:
    # Simple paths of length 1..depth from s that only visit vertices above s.
    path = [s]
    stack = [iter(sorted(adj[s]))]
    while stack:
        x = next(stack[-1], None)
        if x is None:
            stack.pop()
            path.pop()
            continue
        if x <= s or x in path:
            continue
        path.append(x)
        yield path
        if len(path) <= depth:
            stack.append(iter(sorted(adj[x])))
        else:
            path.pop()


def find_even_short_cycle(g: Graph, lengths: Iterable[int] = (4, 6, 8)) -> Optional[list[int]]:
    """Return the vertices of a shortest cycle whose length is in ``lengths``.

    Only even lengths up to 8 are supported.  A cycle of length ``2h`` whose
    smallest vertex is ``s`` splits into two internally disjoint ``s``-``x``
    paths of length ``h`` through vertices above ``s``, so paths of length at
    most 4 are enough.  Returns ``None`` when no such cycle exists.
    """
    wanted = sorted(set(lengths))
    for L in wanted:
        if L not in (4, 6, 8):
            raise GraphError(f"unsupported cycle length {L}")
    halves = {L // 2 for L in wanted}
    best: Optional[list[int]] = None
    depth = max(halves, default=0)
    for s in range(g.n):
        if len(g.adj[s]) < 2:
            continue
        seen: dict[tuple[int, int], list[tuple[int, ...]]] = defaultdict(list)
        for path in _paths_from(g.adj, s, depth):
            h = len(path) - 1
            if h not in halves or (best is not None and 2 * h >= len(best)):
                continue
            x = path[-1]
            inner = tuple(path[1:-1])
            inner_set = set(inner)
            for other in seen[(h, x)]:
                if inner_set.isdisjoint(other):
                    best = [s, *inner, x, *reversed(other)]
                    break
            else:
                seen[(h, x)].append(inner)
        if best is not None and len(best) == 2 * min(halves):
            return best
    return best


def has_odd_path(adj: Sequence[Iterable[int]], u: int, v: int, lengths: Iterable[int]) -> bool:
    """True iff a simple ``u``-``v`` path exists whose length lies in ``lengths``.

    Used to decide whether adding the edge ``uv`` would close a cycle of
    length ``L + 1`` for some ``L`` in ``lengths``.  Lengths must be at most 7.
    """
    wanted = set(lengths)
    longest = max(wanted)
    if u == v:
        return False
    # distances to v, exact up to radius 3
    dist = {v: 0}
    frontier = [v]
    for d in range(1, 4):
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y not in dist:
                    dist[y] = d
                    nxt.append(y)
        frontier = nxt
    on_path = {u}
    stack = [(u, 0, iter(adj[u]))]
    while stack:
        x, d, it = stack[-1]
        y = next(it, None)
        if y is None:
            stack.pop()
            on_path.discard(x)
            continue
        if y in on_path:
            continue
        if y == v:
            if d + 1 in wanted:
                return True
            continue
        remaining = longest - (d + 1)
        if dist.get(y, 4) > remaining:
            continue
        on_path.add(y)
        stack.append((y, d + 1, iter(adj[y])))
    return False
