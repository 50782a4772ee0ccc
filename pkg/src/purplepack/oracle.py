"""Exact packing decisions and purple minima for small instances.

The search assigns labels to red vertices one at a time, highest red degree
first, keeping a running count of purple edges among assigned vertices.  A
branch is cut once that count reaches the best complete labelling found so
far.  No symmetry reduction is done.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional

from .analyzer import PreconditionError
from .model import Labelling, PackingInstance, purple_edges, purple_report

DEFAULT_LIMIT = 12
ENUMERATE_LIMIT = 8


class OracleSizeError(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    packable: Optional[bool]
    """``None`` only when an incomplete search found no packing."""
    min_purple: int
    """Exact when ``complete``; otherwise the best value found (an upper bound)."""
    lower_bound: int
    witness: Optional[Labelling]
    nodes_explored: int
    complete: bool


class _Search:
    def __init__(self, inst: PackingInstance, keep_ties: bool, max_nodes: Optional[int]):
        self.inst = inst
        n = inst.n
        red = inst.red
        self.order = sorted(range(n), key=lambda v: (-len(red.adj[v]), v))
        pos = {v: k for k, v in enumerate(self.order)}
        # red neighbours that are placed before each vertex
        self.earlier = [[w for w in red.adj[v] if pos[w] < pos[v]] for v in self.order]
        self.blue = inst.blue.adj
        self.keep_ties = keep_ties
        self.max_nodes = max_nodes
        self.best = red.m + 1
        self.best_perms: list[tuple[int, ...]] = []
        self.nodes = 0
        self.aborted = False

    def run(self, stop_at_zero: bool) -> None:
        n = self.inst.n
        perm = [-1] * n
        used = [False] * n
        self._descend(0, 0, perm, used, stop_at_zero)

    def _cut(self, count: int) -> bool:
        return count > self.best if self.keep_ties else count >= self.best

    def _descend(self, depth, count, perm, used, stop_at_zero) -> bool:
        if self.max_nodes is not None and self.nodes >= self.max_nodes:
            self.aborted = True
            return True
        self.nodes += 1
        if depth == len(self.order):
            if count < self.best:
                self.best = count
                self.best_perms = [tuple(perm)]
            elif self.keep_ties and count == self.best:
                self.best_perms.append(tuple(perm))
            return stop_at_zero and count == 0
        v = self.order[depth]
        prior = self.earlier[depth]
        for label in range(len(perm)):
            if used[label]:
                continue
            row = self.blue[label]
            added = sum(1 for w in prior if perm[w] in row)
            if self._cut(count + added):
                continue
            perm[v] = label
            used[label] = True
            done = self._descend(depth + 1, count + added, perm, used, stop_at_zero)
            used[label] = False
            perm[v] = -1
            if done:
                return True
        return False


def _guard(inst: PackingInstance, limit: int) -> None:
    if inst.n > limit:
        raise OracleSizeError(f"n={inst.n} exceeds the oracle limit of {limit}")


def exact_pack(
    inst: PackingInstance, limit: int = DEFAULT_LIMIT, max_nodes: Optional[int] = None
) -> OracleResult:
    """Branch-and-bound minimum purple count; stops early once a packing is found."""
    _guard(inst, limit)
    s = _Search(inst, keep_ties=False, max_nodes=max_nodes)
    s.run(stop_at_zero=True)
    witness = Labelling(s.best_perms[0]) if s.best_perms else None
    best = s.best if witness is not None else inst.red.m
    if s.aborted and best > 0:
        return OracleResult(None, best, 0, witness, s.nodes, False)
    return OracleResult(best == 0, best, best, witness, s.nodes, True)


def min_purple_labellings(inst: PackingInstance, limit: int = ENUMERATE_LIMIT) -> tuple[int, list[Labelling]]:
    """Minimum purple count and every labelling attaining it."""
    _guard(inst, limit)
    s = _Search(inst, keep_ties=True, max_nodes=None)
    s.run(stop_at_zero=False)
    return s.best, [Labelling(p) for p in sorted(s.best_perms)]


def brute_force_min_purple(inst: PackingInstance, limit: int = ENUMERATE_LIMIT) -> int:
    """Minimum purple count by trying all ``n!`` labellings."""
    _guard(inst, limit)
    return min(len(purple_edges(inst, Labelling(p))) for p in permutations(range(inst.n)))


def verify_eaton_smallscale(inst: PackingInstance, limit: int = ENUMERATE_LIMIT) -> bool:
    """Every purple-minimal labelling has purple maximum degree at most 1."""
    if (inst.delta1 + 1) * (inst.delta2 + 1) > inst.n + 1:
        raise PreconditionError("instance does not satisfy (d1+1)(d2+1) <= n+1")
    _, optima = min_purple_labellings(inst, limit)
    return all(purple_report(inst, lab).max_purple_degree <= 1 for lab in optima)
