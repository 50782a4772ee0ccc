"""Purple-edge descent over red labellings.

Each step applies a swap that strictly lowers the number of purple edges, so a
run applies at most as many swaps as the starting purple count.  Moves are
tried in a fixed escalation order:

1. any reducing 2-swap, while some label has purple degree at least 2;
2. ``(u, w)`` 2-swaps at the lowest purple edge ``uv`` (then ``(v, w)``);
3. ``(u, a, b)`` 3-swaps with ``a`` in A*(u) and ``b`` in B(u) (then from v).

When nothing applies the run ends.  A non-packed result carries a certificate
describing the link structure at the lowest purple edge; it records a local
minimum of the descent and says nothing about whether a packing exists.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .analyzer import profile_sets
from .model import Labelling, PackingInstance, PurpleReport, PurpleTracker, is_packing, purple_report
from .swaps import (
    SwapCycle,
    apply_swap,
    claim32_3swap_tracked,
    find_reducing_2swap_tracked,
    reducing_2swap_at,
)

POLICIES = ("full", "eaton")
_STATUS_RANK = {"packed": 0, "near_packed": 1, "stuck": 2}
STUCK_NOTE = "local minimum of the swap descent; not a proof that the graphs do not pack"


@dataclass(frozen=True)
class StuckCertificate:
    purple_edge: tuple[int, int]
    claim31_ok: bool
    """Every w != v has a red-blue or blue-red link from u."""
    claim32_ok: bool
    """Every a in A*(u), b in B(u) has a red-blue link from a to b."""
    a_star_size: int
    b_star_size: int
    a_size: int
    b_size: int
    note: str = STUCK_NOTE


@dataclass
class SolveOutcome:
    status: str
    initial_labelling: Labelling
    final_labelling: Labelling
    purple_final: PurpleReport
    swap_trace: list[SwapCycle] = field(default_factory=list)
    purple_trace: list[int] = field(default_factory=list)
    """Purple count before the first swap and after each applied swap."""
    stuck_certificate: Optional[StuckCertificate] = None
    capped: bool = False
    """True when ``max_swaps`` ended the run before the descent finished."""

    @property
    def rank(self) -> tuple[int, int]:
        return (_STATUS_RANK[self.status], self.purple_final.count)


def stuck_certificate(tracker: PurpleTracker, u: int, v: int) -> StuckCertificate:
    blue = tracker.inst.blue.adj
    sets = profile_sets(blue, tracker.red_nbrs, u)
    linked = sets["n1n2"] | sets["n2n1"]
    claim31 = all(w in linked for w in range(tracker.inst.n) if w != v)
    claim32 = all(
        tracker.red_nbrs(a) & blue[b] for a in sets["a_star"] for b in sets["b_set"]
    )
    return StuckCertificate(
        (u, v),
        claim31,
        bool(claim32),
        len(sets["a_star"]),
        len(sets["b_star"]),
        len(sets["a_set"]),
        len(sets["b_set"]),
    )


def _next_move(tracker: PurpleTracker, policy: str) -> Optional[SwapCycle]:
    if policy == "eaton":
        return find_reducing_2swap_tracked(tracker)
    report = tracker.report()
    if report.max_purple_degree >= 2:
        move = find_reducing_2swap_tracked(tracker)
        if move is not None:
            return move
    u, v = report.lowest_edge()
    for x, y in ((u, v), (v, u)):
        move = reducing_2swap_at(tracker, x, exclude=(y,))
        if move is not None:
            return move
    for x in (u, v):
        move = claim32_3swap_tracked(tracker, x)
        if move is not None:
            return move
    return None


def solve(
    inst: PackingInstance,
    init: Optional[Labelling] = None,
    policy: str = "full",
    max_swaps: Optional[int] = None,
    check: bool = False,
    on_swap: Optional[Callable[[SwapCycle, int], None]] = None,
) -> SolveOutcome:
    """Greedy purple descent from ``init`` (identity by default).

    ``policy="eaton"`` restricts moves to reducing 2-swaps.  ``max_swaps`` caps
    the number of applied swaps.  ``on_swap(cycle, count)`` is called after
    each swap with the new purple count.
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}; expected one of {POLICIES}")
    init = init or Labelling.identity(inst.n)
    tracker = PurpleTracker(inst, init, check=check)
    trace: list[SwapCycle] = []
    counts = [tracker.count]
    capped = False
    while tracker.count:
        if max_swaps is not None and len(trace) >= max_swaps:
            capped = True
            break
        move = _next_move(tracker, policy)
        if move is None:
            break
        before = tracker.count
        tracker.apply(move.labels)
        if tracker.count >= before:
            raise AssertionError(f"swap {move.labels} did not reduce purple count")
        trace.append(move)
        counts.append(tracker.count)
        if on_swap is not None:
            on_swap(move, tracker.count)

    final = tracker.labelling()
    report = tracker.report()
    cert = None
    if report.count == 0:
        if not is_packing(inst, final):
            raise AssertionError("tracker reports a packing that fails re-verification")
        status = "packed"
    else:
        status = "near_packed" if report.max_purple_degree <= 1 else "stuck"
        cert = stuck_certificate(tracker, *report.lowest_edge())
    return SolveOutcome(status, init, final, report, trace, counts, cert, capped)


def replay(outcome: SolveOutcome, inst: PackingInstance) -> list[int]:
    """Purple counts obtained by replaying the trace from the initial labelling."""
    lab = outcome.initial_labelling
    counts = [purple_report(inst, lab).count]
    for c in outcome.swap_trace:
        lab = apply_swap(lab, c)
        counts.append(purple_report(inst, lab).count)
    if lab != outcome.final_labelling:
        raise AssertionError("trace does not reproduce the final labelling")
    return counts


def restart_labellings(n: int, restarts: int, seed: int) -> list[Labelling]:
    rng = random.Random(seed)
    return [Labelling.random(n, rng) for _ in range(restarts)]


def solve_multistart(
    inst: PackingInstance, restarts: int = 10, seed: int = 0, policy: str = "full", **kwargs
) -> SolveOutcome:
    """Best of ``restarts`` descents from seeded uniform random labellings.

    Outcomes are ranked by status (packed, near_packed, stuck) and then by
    purple count; the earliest restart wins ties.  Stops at the first packing.
    """
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    best = None
    for lab in restart_labellings(inst.n, restarts, seed):
        out = solve(inst, lab, policy=policy, **kwargs)
        if best is None or out.rank < best.rank:
            best = out
        if best.status == "packed":
            break
    return best
