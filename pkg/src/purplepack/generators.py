"""Seeded construction of test graphs and packing instance pairs.

Random graphs are built by greedy edge insertion in a random candidate order.
An edge is accepted when both endpoints are below the degree cap and, if
requested, the edge closes no 4-, 6- or 8-cycle.  Every call is a pure
function of its arguments, so equal seeds give identical graphs.

Girth-constrained graphs of the size needed for the large-degree regime are
far out of reach (a graph with no cycle shorter than 10 and maximum degree
``d`` needs roughly ``d**4`` vertices); the generators here target maximum
degree up to about 16 and a few thousand vertices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit

from .graph import Graph, GraphError

FAMILIES = ("matching", "cycle", "path", "star", "complete", "edgeless")

# Above this many vertex pairs, candidates are drawn at random instead of
# shuffling the full pair list.
FULL_PASS_PAIRS = 200_000


@dataclass(frozen=True)
class GenSpec:
    n: int
    delta_cap: int
    forbid_even_short_cycles: bool = False
    seed: int = 0
    edge_budget: Optional[int] = None

    def __post_init__(self):
        if self.n < 1:
            raise GraphError(f"n must be at least 1, got {self.n}")
        if self.delta_cap < 0:
            raise GraphError(f"delta_cap must be non-negative, got {self.delta_cap}")
        if self.edge_budget is not None and self.edge_budget < 0:
            raise GraphError("edge_budget must be non-negative")


@dataclass(frozen=True)
class GenResult:
    graph: Graph
    shortfall: bool
    """True when an edge budget was given and could not be met."""


_UNSEEN = 127


@njit(cache=True)
def _odd_path_kernel(nbr, deg, u, v, dist, on_path, touched):  # pragma: no cover - compiled
    # Is there a simple u-v path of length 3, 5 or 7?  Same search as
    # graph.has_odd_path, on fixed-width adjacency arrays.  ``dist`` must be
    # all _UNSEEN and ``on_path`` all False on entry; both are restored.
    nt = 1
    dist[v] = 0
    touched[0] = v
    head = 0
    while head < nt:
        x = touched[head]
        head += 1
        dx = dist[x]
        if dx == 3:
            continue
        for k in range(deg[x]):
            y = nbr[x, k]
            if dist[y] == _UNSEEN:
                dist[y] = dx + 1
                touched[nt] = y
                nt += 1
    found = False
    stack_v = np.empty(8, np.int64)
    stack_i = np.empty(8, np.int64)
    top = 0
    stack_v[0] = u
    stack_i[0] = 0
    on_path[u] = True
    while top >= 0:
        x = stack_v[top]
        i = stack_i[top]
        if i >= deg[x]:
            on_path[x] = False
            top -= 1
            continue
        stack_i[top] = i + 1
        y = nbr[x, i]
        if on_path[y]:
            continue
        d = top + 1
        if y == v:
            if d == 3 or d == 5 or d == 7:
                found = True
                break
            continue
        dy = dist[y]
        if dy > 3:
            dy = 4
        if dy > 7 - d:
            continue
        top += 1
        stack_v[top] = y
        stack_i[top] = 0
        on_path[y] = True
    for k in range(top + 1):
        on_path[stack_v[k]] = False
    for k in range(nt):
        dist[touched[k]] = _UNSEEN
    return found


class _ArrayAdjacency:
    """Fixed-width adjacency arrays mirroring the growing graph."""

    def __init__(self, n: int, cap: int):
        self.nbr = np.zeros((n, max(cap, 1)), dtype=np.int64)
        self.deg = np.zeros(n, dtype=np.int64)
        self.dist = np.full(n, _UNSEEN, dtype=np.int64)
        self.on_path = np.zeros(n, dtype=np.bool_)
        self.touched = np.zeros(n, dtype=np.int64)

    def closes_short_even_cycle(self, u: int, v: int) -> bool:
        return bool(_odd_path_kernel(self.nbr, self.deg, u, v, self.dist, self.on_path, self.touched))

    def add(self, u: int, v: int) -> None:
        self.nbr[u, self.deg[u]] = v
        self.deg[u] += 1
        self.nbr[v, self.deg[v]] = u
        self.deg[v] += 1


def _candidate_pairs(n: int, rng: random.Random, adj: list[set[int]], cap: int):
    total = n * (n - 1) // 2
    if total <= FULL_PASS_PAIRS:
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        rng.shuffle(pairs)
        yield from pairs
        return
    # Sampled pass: draw pairs among vertices that still have spare degree
    # until a run of consecutive draws produces nothing usable.
    open_vertices = [v for v in range(n) if len(adj[v]) < cap]
    patience = 50 * n
    misses = 0
    while misses < patience and len(open_vertices) >= 2:
        u, v = rng.sample(open_vertices, 2)
        before = len(adj[u]) + len(adj[v])
        yield (u, v) if u < v else (v, u)
        if len(adj[u]) + len(adj[v]) == before:
            misses += 1
        else:
            misses = 0
            if len(adj[u]) >= cap or len(adj[v]) >= cap:
                open_vertices = [w for w in open_vertices if len(adj[w]) < cap]


def generate_with_status(spec: GenSpec) -> GenResult:
    rng = random.Random(spec.seed)
    n, cap = spec.n, spec.delta_cap
    adj: list[set[int]] = [set() for _ in range(n)]
    edges: list[tuple[int, int]] = []
    budget = spec.edge_budget
    arrays = _ArrayAdjacency(n, cap) if spec.forbid_even_short_cycles else None
    if cap > 0 and n > 1 and budget != 0:
        for u, v in _candidate_pairs(n, rng, adj, cap):
            if len(adj[u]) >= cap or len(adj[v]) >= cap or v in adj[u]:
                continue
            if arrays is not None:
                if arrays.closes_short_even_cycle(u, v):
                    continue
                arrays.add(u, v)
            adj[u].add(v)
            adj[v].add(u)
            edges.append((u, v))
            if budget is not None and len(edges) >= budget:
                break
    shortfall = budget is not None and len(edges) < budget
    return GenResult(Graph(n, edges), shortfall)


def generate(spec: GenSpec) -> Graph:
    return generate_with_status(spec).graph


def standard_family(name: str, n: int) -> Graph:
    if n < 1:
        raise GraphError(f"n must be positive, got {n}")
    if name == "matching":
        if n % 2:
            raise GraphError("a perfect matching needs an even number of vertices")
        return Graph(n, ((i, i + 1) for i in range(0, n, 2)))
    if name == "cycle":
        if n < 3:
            raise GraphError("a cycle needs at least 3 vertices")
        return Graph(n, ((i, (i + 1) % n) for i in range(n)))
    if name == "path":
        return Graph(n, ((i, i + 1) for i in range(n - 1)))
    if name == "star":
        return Graph(n, ((0, i) for i in range(1, n)))
    if name == "complete":
        return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))
    if name == "edgeless":
        return Graph(n)
    raise GraphError(f"unknown family {name!r}; expected one of {FAMILIES}")


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


# --- instance pairs ---------------------------------------------------------


def _pick_degrees(rng: random.Random, n: int, delta_max: int, ok) -> Optional[tuple[int, int]]:
    choices = [
        (d1, d2)
        for d1 in range(1, delta_max + 1)
        for d2 in range(1, d1 + 1)
        if ok(d1, d2, n)
    ]
    return rng.choice(choices) if choices else None


def _pair_from_caps(rng: random.Random, n: int, d1: int, d2: int, forbid: bool) -> tuple[Graph, Graph]:
    blue = generate(GenSpec(n, d1, forbid, rng.getrandbits(63)))
    red = generate(GenSpec(n, d2, forbid, rng.getrandbits(63)))
    return blue, red


def sauer_spencer_pair(seed: int, n_min: int = 4, n_max: int = 60, delta_max: int = 4) -> tuple[Graph, Graph]:
    """A random pair whose degree caps satisfy ``2 * d1 * d2 < n``."""
    rng = random.Random(seed)
    while True:
        n = rng.randint(n_min, n_max)
        caps = _pick_degrees(rng, n, delta_max, lambda a, b, n: 2 * a * b < n)
        if caps:
            return _pair_from_caps(rng, n, *caps, forbid=False)


def bec_pair(seed: int, n_min: int = 3, n_max: int = 40, delta_max: int = 6) -> tuple[Graph, Graph]:
    """A random pair whose degree caps satisfy ``(d1 + 1)(d2 + 1) <= n + 1``."""
    rng = random.Random(seed)
    while True:
        n = rng.randint(n_min, n_max)
        caps = _pick_degrees(rng, n, delta_max, lambda a, b, n: (a + 1) * (b + 1) <= n + 1)
        if caps:
            return _pair_from_caps(rng, n, *caps, forbid=False)


def girth_pair(seed: int, n_min: int = 100, n_max: int = 600, delta_max: int = 8) -> tuple[Graph, Graph]:
    """A random pair of graphs with no 4-, 6- or 8-cycle."""
    rng = random.Random(seed)
    n = rng.randint(n_min, n_max)
    d1 = rng.randint(2, delta_max)
    d2 = rng.randint(2, d1)
    return _pair_from_caps(rng, n, d1, d2, forbid=True)


def small_pair(seed: int, n_min: int = 2, n_max: int = 7) -> tuple[Graph, Graph]:
    """An unconstrained pair of small random graphs, for exhaustive checks."""
    rng = random.Random(seed)
    n = rng.randint(n_min, n_max)

    def one() -> Graph:
        p = rng.random()
        return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p))

    return one(), one()
