"""Labelled pairs of graphs and their purple (conflict) edges.

The blue graph keeps the identity labelling; the red graph is moved around by
a permutation ``perm`` where red vertex ``v`` carries label ``perm[v]``.  A
label pair ``ij`` is purple when it is an edge of both the blue graph and the
relabelled red graph.  The two graphs pack exactly when some labelling has no
purple edge.
"""

from __future__ import annotations

from random import Random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .graph import Graph, GraphError, find_even_short_cycle

# Degree thresholds of the large-degree packing theorem for even girth >= 10.
THM12_DELTA1 = 940060
THM12_DELTA2 = 27620
# Ratio in the C4-free packing theorem used to dispose of unbalanced degrees.
THM13_RATIO = 34


class PackingInstance:
    """An ordered pair (blue, red) on a shared vertex set with ``delta1 >= delta2``.

    If the red graph has the larger maximum degree the two are exchanged and
    ``swapped`` is set.  Ties keep the input order.
    """

    __slots__ = ("blue", "red", "n", "delta1", "delta2", "swapped")

    def __init__(self, blue: Graph, red: Graph, normalize: bool = True):
        if blue.n != red.n:
            raise GraphError(f"graphs have different vertex counts: {blue.n} vs {red.n}")
        swapped = normalize and blue.max_degree < red.max_degree
        if swapped:
            blue, red = red, blue
        self.blue = blue
        self.red = red
        self.n = blue.n
        self.delta1 = blue.max_degree
        self.delta2 = red.max_degree
        self.swapped = swapped

    def __repr__(self) -> str:
        return f"PackingInstance(n={self.n}, delta1={self.delta1}, delta2={self.delta2})"


@dataclass(frozen=True)
class Labelling:
    perm: tuple[int, ...]
    inv: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        n = len(perm)
        inv = [-1] * n
        for v, p in enumerate(perm):
            if not 0 <= p < n or inv[p] != -1:
                raise GraphError("labelling is not a permutation of 0..n-1")
            inv[p] = v
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "inv", tuple(inv))

    @classmethod
    def identity(cls, n: int) -> Labelling:
        return cls(tuple(range(n)))

    @classmethod
    def random(cls, n: int, rng: Random) -> Labelling:
        perm = list(range(n))
        rng.shuffle(perm)
        return cls(tuple(perm))

    @property
    def n(self) -> int:
        return len(self.perm)


def red_neighbors(inst: PackingInstance, lab: Labelling, i: int) -> frozenset[int]:
    """Labels of the red neighbours of the red vertex currently labelled ``i``."""
    perm = lab.perm
    return frozenset(perm[w] for w in inst.red.adj[lab.inv[i]])


def relabelled_red(inst: PackingInstance, lab: Labelling) -> Graph:
    return inst.red.relabel(lab.perm)


def _check(inst: PackingInstance, lab: Labelling) -> None:
    if lab.n != inst.n:
        raise GraphError(f"labelling has size {lab.n}, instance has n={inst.n}")


@dataclass(frozen=True)
class PurpleReport:
    purple_edges: frozenset[tuple[int, int]]
    max_purple_degree: int

    @property
    def count(self) -> int:
        return len(self.purple_edges)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]]) -> PurpleReport:
        edges = frozenset(edges)
        deg: dict[int, int] = {}
        for u, v in edges:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        return cls(edges, max(deg.values(), default=0))

    def lowest_edge(self) -> Optional[tuple[int, int]]:
        return min(self.purple_edges, default=None)


def purple_edges(inst: PackingInstance, lab: Labelling) -> set[tuple[int, int]]:
    _check(inst, lab)
    perm, blue_adj = lab.perm, inst.blue.adj
    out = set()
    for x, y in inst.red.edges:
        i, j = perm[x], perm[y]
        if j in blue_adj[i]:
            out.add((i, j) if i < j else (j, i))
    return out


def purple_report(inst: PackingInstance, lab: Labelling) -> PurpleReport:
    return PurpleReport.from_edges(purple_edges(inst, lab))


def is_packing(inst: PackingInstance, lab: Labelling) -> bool:
    return not purple_edges(inst, lab)


def condition_profile(inst: PackingInstance) -> dict[str, bool]:
    d1, d2, n = inst.delta1, inst.delta2, inst.n
    return {
        "bec": (d1 + 1) * (d2 + 1) <= n + 1,
        "sauer_spencer": 2 * d1 * d2 < n,
        "girth_ok_blue": find_even_short_cycle(inst.blue) is None,
        "girth_ok_red": find_even_short_cycle(inst.red) is None,
        "thm12_degree_ok": d1 >= THM12_DELTA1 or d1 >= d2 >= THM12_DELTA2,
        "thm13_applicable": d1 > THM13_RATIO * d2 and find_even_short_cycle(inst.blue, (4,)) is None,
    }


class PurpleTracker:
    """Mutable labelling with an incrementally maintained purple edge set.

    A swap only changes red adjacencies at the swapped labels, so only purple
    edges incident to those labels are recomputed.  With ``check=True`` every
    update is compared against a full recount.
    """

    def __init__(self, inst: PackingInstance, lab: Labelling, check: bool = False):
        _check(inst, lab)
        self.inst = inst
        self.perm = list(lab.perm)
        self.inv = list(lab.inv)
        self.check = check
        self.purple = purple_edges(inst, lab)

    @property
    def count(self) -> int:
        return len(self.purple)

    def labelling(self) -> Labelling:
        return Labelling(tuple(self.perm))

    def report(self) -> PurpleReport:
        return PurpleReport.from_edges(self.purple)

    def red_nbrs(self, i: int) -> set[int]:
        perm = self.perm
        return {perm[w] for w in self.inst.red.adj[self.inv[i]]}

    def purple_degree(self, i: int) -> int:
        return len(self.inst.blue.adj[i] & self.red_nbrs(i))

    def _red_nbrs_after(self, i: int, fwd: Mapping[int, int], back: Mapping[int, int]) -> set[int]:
        src = back.get(i, i)
        perm = self.perm
        return {fwd.get(p, p) for p in (perm[w] for w in self.inst.red.adj[self.inv[src]])}

    def _local(self, labels: Sequence[int], nbrs) -> set[tuple[int, int]]:
        blue_adj = self.inst.blue.adj
        out = set()
        for i in labels:
            for j in blue_adj[i] & nbrs(i):
                out.add((i, j) if i < j else (j, i))
        return out

    def delta(self, cycle: Sequence[int]) -> int:
        """Change in purple count if the cyclic swap on ``cycle`` were applied."""
        fwd = {c: cycle[(k + 1) % len(cycle)] for k, c in enumerate(cycle)}
        back = {v: k for k, v in fwd.items()}
        before = self._local(cycle, self.red_nbrs)
        after = self._local(cycle, lambda i: self._red_nbrs_after(i, fwd, back))
        return len(after) - len(before)

    def apply(self, cycle: Sequence[int]) -> None:
        fwd = {c: cycle[(k + 1) % len(cycle)] for k, c in enumerate(cycle)}
        touched = set(cycle)
        self.purple = {e for e in self.purple if e[0] not in touched and e[1] not in touched}
        verts = [self.inv[c] for c in cycle]
        for v in verts:
            new = fwd[self.perm[v]]
            self.perm[v] = new
            self.inv[new] = v
        self.purple |= self._local(cycle, self.red_nbrs)
        if self.check:
            full = purple_edges(self.inst, self.labelling())
            if full != self.purple:
                raise AssertionError("incremental purple update disagrees with full recount")
