"""Cyclic label swaps on the red graph and searches for purple-reducing swaps.

A swap on labels ``(u0, ..., u_{l-1})`` gives the red vertex labelled ``u_k``
the new label ``u_{k+1 mod l}``.  Only cycles of length 2 and 3 are used.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .analyzer import profile_sets
from .graph import GraphError
from .model import Labelling, PackingInstance, PurpleTracker, purple_edges, red_neighbors


@dataclass(frozen=True)
class SwapCycle:
    labels: tuple[int, ...]

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) not in (2, 3):
            raise GraphError(f"swap cycles must have length 2 or 3, got {len(labels)}")
        if len(set(labels)) != len(labels):
            raise GraphError(f"swap cycle repeats a label: {labels}")

    def __len__(self) -> int:
        return len(self.labels)

    def successor(self, k: int) -> int:
        return self.labels[(k + 1) % len(self.labels)]


def _range_check(c: SwapCycle, n: int) -> None:
    for x in c.labels:
        if not 0 <= x < n:
            raise GraphError(f"label {x} out of range 0..{n - 1}")


def apply_swap(lab: Labelling, c: SwapCycle) -> Labelling:
    _range_check(c, lab.n)
    step = {c.labels[k]: c.successor(k) for k in range(len(c))}
    return Labelling(tuple(step.get(p, p) for p in lab.perm))


def _red_blue_link(inst: PackingInstance, lab: Labelling, i: int, j: int) -> bool:
    blue_j = inst.blue.adj[j]
    return any(x in blue_j for x in red_neighbors(inst, lab, i))


def is_safe_swap(inst: PackingInstance, lab: Labelling, c: SwapCycle) -> bool:
    """Sufficient condition for the swap to leave no purple edge at its labels.

    Both must hold, indices taken mod the cycle length:
    no red-blue link from ``u_k`` to ``u_{k+1}``, and whenever ``u_k u_k'`` is
    red, ``u_{k+1} u_{k'+1}`` is not blue.
    """
    _range_check(c, inst.n)
    u = c.labels
    ell = len(u)
    for k in range(ell):
        if _red_blue_link(inst, lab, u[k], u[(k + 1) % ell]):
            return False
    blue = inst.blue
    for k in range(ell):
        reds = red_neighbors(inst, lab, u[k])
        for kk in range(ell):
            if u[kk] in reds and blue.has_edge(u[(k + 1) % ell], u[(kk + 1) % ell]):
                return False
    return True


def _link_either_way(tracker: PurpleTracker, u: int, w: int) -> bool:
    # red-blue link u -> w, or blue-red link u -> w (= red-blue link w -> u)
    blue = tracker.inst.blue.adj
    return bool(tracker.red_nbrs(u) & blue[w]) or bool(tracker.red_nbrs(w) & blue[u])


def _ordered_partners(tracker: PurpleTracker, u: int, exclude: Iterable[int] = ()) -> list[int]:
    skip = set(exclude) | {u}
    others = [w for w in range(tracker.inst.n) if w not in skip]
    return sorted(others, key=lambda w: (_link_either_way(tracker, u, w), w))


def reducing_2swap_at(tracker: PurpleTracker, u: int, exclude: Iterable[int] = ()) -> Optional[SwapCycle]:
    """First ``(u, w)`` swap that lowers the purple count, unlinked partners first."""
    for w in _ordered_partners(tracker, u, exclude):
        if tracker.delta((u, w)) < 0:
            return SwapCycle((u, w))
    return None


def find_reducing_2swap_tracked(tracker: PurpleTracker) -> Optional[SwapCycle]:
    # A swap between two labels with no incident purple edge can only add
    # purple edges, so pairs touching a purple endpoint are exhaustive.
    ends = sorted({x for e in tracker.purple for x in e})
    for u in ends:
        found = reducing_2swap_at(tracker, u)
        if found is not None:
            return found
    return None


def find_reducing_2swap(inst: PackingInstance, lab: Labelling) -> Optional[SwapCycle]:
    return find_reducing_2swap_tracked(PurpleTracker(inst, lab))


def claim32_candidates(tracker: PurpleTracker, u: int) -> list[tuple[int, int]]:
    """Pairs ``(a, b)`` with ``a`` in A*(u), ``b`` in B(u) and no red-blue link a -> b."""
    sets = profile_sets(tracker.inst.blue.adj, tracker.red_nbrs, u)
    blue = tracker.inst.blue.adj
    out = []
    for a in sorted(sets["a_star"]):
        reds_a = tracker.red_nbrs(a)
        for b in sorted(sets["b_set"]):
            if not reds_a & blue[b]:
                out.append((a, b))
    return out


def claim32_3swap_tracked(tracker: PurpleTracker, u: int) -> Optional[SwapCycle]:
    blue_u = tracker.inst.blue.adj[u]
    if not blue_u & tracker.red_nbrs(u):
        raise GraphError(f"label {u} is not incident to a purple edge")
    for a, b in claim32_candidates(tracker, u):
        if tracker.delta((u, a, b)) < 0:
            return SwapCycle((u, a, b))
    return None


def find_claim32_3swap(inst: PackingInstance, lab: Labelling, u: int) -> Optional[SwapCycle]:
    return claim32_3swap_tracked(PurpleTracker(inst, lab), u)


def purple_count_after(inst: PackingInstance, lab: Labelling, c: SwapCycle) -> int:
    return len(purple_edges(inst, apply_swap(lab, c)))
