"""Exact neighbourhood bookkeeping and audits of the structural bounds.

Notation used throughout: ``N1`` is the blue neighbourhood, ``N2`` the red
neighbourhood under the current labelling, ``N1N2(i)`` the red-blue
neighbourhood (red edge then blue edge) and ``N2N1(i)`` the blue-red one.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence

import mpmath

from .graph import Graph, GraphError, VertexSet, find_even_short_cycle
from .model import Labelling, PackingInstance, purple_edges, relabelled_red

SLACK = 1.37


class PreconditionError(ValueError):
    pass


# --- neighbourhood profiles -------------------------------------------------


def profile_sets(blue_adj: Sequence[frozenset[int]], red_nbrs: Callable[[int], set[int]], i: int) -> dict:
    n1 = set(blue_adj[i])
    n2 = set(red_nbrs(i))
    n1n2: set[int] = set()
    for x in n2:
        n1n2 |= blue_adj[x]
    n2n1: set[int] = set()
    for x in n1:
        n2n1 |= red_nbrs(x)
    return {
        "n1": n1,
        "n2": n2,
        "n1n2": n1n2,
        "n2n1": n2n1,
        "a_set": n2n1 - (n1 | n2 | n1n2),
        "b_set": n1n2 - (n1 | n2 | n2n1),
        "a_star": n2n1 - (n2 | n1n2),
        "b_star": n1n2 - (n1 | n2n1),
    }


@dataclass(frozen=True)
class NeighborhoodProfile:
    focus: int
    n1: VertexSet
    n2: VertexSet
    n1n2: VertexSet
    n2n1: VertexSet
    a_set: VertexSet
    b_set: VertexSet
    a_star: VertexSet
    b_star: VertexSet

    def sizes(self) -> dict[str, int]:
        return {k: len(v) for k, v in asdict(self).items() if k != "focus"}


@lru_cache(maxsize=16)
def _red_view(inst: PackingInstance, lab: Labelling) -> Graph:
    return relabelled_red(inst, lab)


def profile(inst: PackingInstance, lab: Labelling, i: int) -> NeighborhoodProfile:
    if not 0 <= i < inst.n:
        raise GraphError(f"label {i} out of range")
    red = _red_view(inst, lab)
    sets = profile_sets(inst.blue.adj, lambda x: red.adj[x], i)
    return NeighborhoodProfile(i, **{k: VertexSet(v, inst.n) for k, v in sets.items()})


# --- Corradi ----------------------------------------------------------------


@dataclass(frozen=True)
class SetFamily:
    universe_size: int
    sets: tuple[frozenset[int], ...]
    k: float
    t: int

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))


@dataclass(frozen=True)
class CorradiResult:
    n_sets: int
    hypotheses_ok: bool
    bound: float
    holds: Optional[bool]
    """``None`` when the hypotheses fail and nothing is asserted."""


def corradi_value(universe_size: int, k: float, t: int) -> float:
    denom = k * k - (t - 1) * universe_size
    if denom <= 0:
        raise PreconditionError(f"need k^2 > (t-1)|X|, got k={k}, t={t}, |X|={universe_size}")
    return universe_size * (k - (t - 1)) / denom


def corradi_bound(fam: SetFamily) -> CorradiResult:
    bound = corradi_value(fam.universe_size, fam.k, fam.t)
    ok = all(len(s) >= fam.k and all(0 <= x < fam.universe_size for x in s) for s in fam.sets)
    if ok:
        sets = fam.sets
        ok = all(
            len(sets[i] & sets[j]) <= fam.t - 1 for i in range(len(sets)) for j in range(i + 1, len(sets))
        )
    n = len(fam.sets)
    # an empty family is trivially fine even where the bound is negative
    holds = (n == 0 or n <= bound) if ok else None
    return CorradiResult(n, ok, bound, holds)


# --- Claim 4.1 style audit --------------------------------------------------


def k_value(t: int, delta_inner: int) -> float:
    return math.sqrt(SLACK * (t - 1) * delta_inner)


def claim41_rhs(d_outer: int, d_inner: int, t: int) -> float:
    """Upper bound on |N_o(N_i(a)) & N_o(N_i(b))| with outer/inner max degrees."""
    return (
        d_outer
        + d_inner
        + math.sqrt(SLACK * (t - 1)) * d_inner * math.sqrt(d_inner)
        + math.sqrt(SLACK) / ((SLACK - 1) * math.sqrt(t - 1)) * d_outer * math.sqrt(d_inner)
        + d_outer * d_inner / t
    )


@dataclass
class PartCheck:
    value: float
    bound: float
    ok: bool


@dataclass
class BoundAudit:
    a: int
    b: int
    t: int
    k: float
    lhs: int
    q_t_size: int
    r_t_size: int
    d_t_size: int
    rhs: float
    holds: bool
    supported: bool
    """False when the girth hypotheses behind the bound fail for this instance."""
    parts: dict[str, PartCheck] = field(default_factory=dict)
    mirror: Optional[BoundAudit] = None

    @property
    def all_ok(self) -> bool:
        """True unless a supported bound or one of its parts fails."""
        mine = not self.supported or (self.holds and all(p.ok for p in self.parts.values()))
        return mine and (self.mirror is None or self.mirror.all_ok)

    def to_dict(self) -> dict:
        return asdict(self)


@lru_cache(maxsize=64)
def girth_flags(g: Graph) -> tuple[bool, bool]:
    """(C4-free, free of C4/C6/C8)."""
    return find_even_short_cycle(g, (4,)) is None, find_even_short_cycle(g) is None


def _union(adj: Sequence[frozenset[int]], xs) -> set[int]:
    out: set[int] = set()
    for x in xs:
        out |= adj[x]
    return out


def audit_pair(
    outer: Graph, inner: Graph, d_outer: int, d_inner: int, a: int, b: int, t: int, supported: bool
) -> BoundAudit:
    """Exact audit of the intersection bound for one ordered pair ``(a, b)``.

    ``outer`` plays the blue role and ``inner`` the red role; swapping them
    audits the mirror bound.
    """
    if a == b:
        raise GraphError("audit needs distinct labels")
    if t < 2:
        raise PreconditionError("t must be at least 2")
    o, i = outer.adj, inner.adj
    in_a, in_b = i[a], i[b]
    nn_a, nn_b = _union(o, in_a), _union(o, in_b)
    lhs = len(nn_a & nn_b)

    common = in_a & in_b
    sep1 = len(_union(o, common))
    q = {y for y in nn_a if len(o[y] & in_a) >= t}
    deg_sum = sum(len(o[x]) for x in in_a)
    sep3 = len(nn_a & in_b)
    xs = in_a - in_b
    removed = q | in_b
    d_of = {x: o[x] - removed for x in xs}
    d = _union(d_of, xs) if xs else set()
    k = k_value(t, d_inner)
    r = [x for x in in_b if len(o[x] & d) > k]
    small = len(in_b) - len(r)
    a_t = {x: {xx for xx in xs if o[x] & d_of[xx]} for x in in_b}
    b_list = sorted(in_b)
    overlap = max(
        (len(a_t[x1] & a_t[x2]) for j, x1 in enumerate(b_list) for x2 in b_list[j + 1 :]), default=0
    )
    main = len(nn_b & d)
    rhs = claim41_rhs(d_outer, d_inner, t)

    parts = {
        "common_red": PartCheck(len(common), 1, len(common) <= 1),
        "sep_common": PartCheck(sep1, d_outer, sep1 <= d_outer),
        "q_t_overcount": PartCheck(len(q), deg_sum / t, len(q) <= deg_sum / t),
        "q_t": PartCheck(len(q), d_outer * d_inner / t, len(q) <= d_outer * d_inner / t),
        "sep_inner_b": PartCheck(sep3, d_inner, sep3 <= d_inner),
        "a_size": PartCheck(
            min((len(a_t[x]) - len(o[x] & d) for x in in_b), default=0),
            0,
            all(len(a_t[x]) >= len(o[x] & d) for x in in_b) and all(len(a_t[x]) > k for x in r),
        ),
        "a_overlap": PartCheck(overlap, t - 1, overlap <= t - 1),
        "main_term": PartCheck(main, small * k + len(r) * d_outer, main <= small * k + len(r) * d_outer),
        "partition": PartCheck(
            lhs,
            sep1 + len(q & nn_b) + len(in_b & nn_b) + main,
            lhs <= sep1 + len(q & nn_b) + len(in_b & nn_b) + main,
        ),
    }
    if r:
        # Corradi applied to the family (A_t(x))_{x in R} over X = xs.
        if k * k > (t - 1) * len(xs):
            c = corradi_value(len(xs), k, t)
            parts["r_corradi"] = PartCheck(len(r), c, len(r) <= c)
        coarse = math.sqrt(SLACK) / (SLACK - 1) * math.sqrt(d_inner / (t - 1))
        parts["r_coarse"] = PartCheck(len(r), coarse, len(r) <= coarse)
    return BoundAudit(a, b, t, k, lhs, len(q), len(r), len(d), rhs, lhs <= rhs, supported, parts)


def audit_claim41(inst: PackingInstance, lab: Labelling, a: int, b: int, t: int) -> BoundAudit:
    """Audit both intersection bounds for labels ``a`` and ``b``.

    The returned audit covers ``|N1N2(a) & N1N2(b)|``; its ``mirror`` covers
    ``|N2N1(a) & N2N1(b)|``.  ``supported`` is False when the girth hypotheses
    fail; the numbers are still computed but nothing is asserted.
    """
    red = _red_view(inst, lab)
    blue_c4, blue_even = girth_flags(inst.blue)
    red_c4, red_even = girth_flags(inst.red)
    first = audit_pair(inst.blue, red, inst.delta1, inst.delta2, a, b, t, red_c4 and blue_even)
    first.mirror = audit_pair(red, inst.blue, inst.delta2, inst.delta1, a, b, t, blue_c4 and red_even)
    return first


# --- Claim 4.2 style audit --------------------------------------------------


def c_t(t: int) -> float:
    if t < 2:
        raise PreconditionError("t must be at least 2")
    return math.sqrt(SLACK) / ((SLACK - 1) * math.sqrt(t - 1)) + math.sqrt(SLACK * (t - 1))


def claim42_bound(d1: int, d2: int, t: int) -> float:
    return d1 + d2 + c_t(t) * d1 * math.sqrt(d1) + d1 * d2 / t


@dataclass
class Claim42Audit:
    u: int
    v: int
    t: int
    bound: float
    quantities: dict[str, int]
    purple_context: bool
    """False when ``uv`` is not purple, so the claim's setting is not met."""

    @property
    def holds(self) -> bool:
        return all(q <= self.bound for q in self.quantities.values())


def audit_claim42(inst: PackingInstance, lab: Labelling, u: int, v: int, t: int) -> Claim42Audit:
    pu, pv = profile(inst, lab, u), profile(inst, lab, v)
    pair = (u, v) if u < v else (v, u)
    quantities = {
        "n1n2_u_and_v": len(pu.n1n2 & pv.n1n2),
        "n2n1_u_and_v": len(pu.n2n1 & pv.n2n1),
        "a_v": len(pv.a_set),
        "b_v": len(pv.b_set),
        "a_u": len(pu.a_set),
        "b_u": len(pu.b_set),
    }
    return Claim42Audit(
        u, v, t, claim42_bound(inst.delta1, inst.delta2, t), quantities, pair in purple_edges(inst, lab)
    )


# --- counting bound on n ----------------------------------------------------


def n_upper(d1: int, d2: int, t: int) -> float:
    return 4 * c_t(t) * d1 * math.sqrt(d1) + 4 * d1 * d2 / t + 7 * (d1 + d2)


def bec_margin_target(d1: int, d2: int) -> int:
    """``(d1+1)(d2+1) - (1 + 6(d1-d2))``, the value the counting bound must undercut."""
    return (d1 + 1) * (d2 + 1) - (1 + 6 * (d1 - d2))


def condition_sqrt(d1: int, d2: int, t: int) -> bool:
    """``sqrt(d1) < ((t-4) d2 - 12 t) / (4 t C_t)``."""
    return math.sqrt(d1) < ((t - 4) * d2 - 12 * t) / (4 * t * c_t(t))


def condition_ratio(d1: int, d2: int) -> bool:
    return d1 >= 34 * d2


@dataclass
class NBoundAudit:
    u: int
    v: int
    t: int
    n_actual: int
    n_upper: float
    cover_size: int
    covers: bool
    uncovered: list[int]
    purple_context: bool


def audit_nbound(inst: PackingInstance, lab: Labelling, u: int, v: int, t: int) -> NBoundAudit:
    """Evaluate the counting bound and check ``[n] = N1N2(u) | A*(u) | N2(u)``."""
    p = profile(inst, lab, u)
    cover = p.n1n2 | p.a_star | p.n2
    uncovered = sorted(set(range(inst.n)) - cover)
    pair = (u, v) if u < v else (v, u)
    return NBoundAudit(
        u,
        v,
        t,
        inst.n,
        n_upper(inst.delta1, inst.delta2, t),
        len(p.n1n2) + len(p.a_star) + len(p.n2),
        not uncovered,
        uncovered,
        pair in purple_edges(inst, lab),
    )


# --- threshold constants ----------------------------------------------------


@dataclass(frozen=True)
class ThresholdReport:
    t: int
    c_t: float
    delta2_root: float
    delta1_root: float
    delta2_root_rederived: float
    """Root with the linear coefficient obtained by expanding the square directly."""


def _larger_root(a, b, c, sqrt=math.sqrt):
    disc = b * b - 4 * a * c
    return (-b + sqrt(disc)) / (2 * a)


def _quadratics(t, ct):
    d2 = ((t - 4) ** 2, -(544 * t * t * ct * ct + 24 * t), 144 * t * t)
    d2_re = ((t - 4) ** 2, -(544 * t * t * ct * ct + 24 * t * (t - 4)), 144 * t * t)
    d1 = (t - 4, -136 * t * ct, -408 * t)
    return d2, d2_re, d1


def delta_polynomials(t: int):
    """Coefficient triples ``(a, b, c)`` of the three quadratics for this ``t``.

    Returned as (delta2 quadratic, re-derived delta2 quadratic, sqrt(delta1)
    quadratic).
    """
    return _quadratics(t, c_t(t))


def thresholds(t: int) -> ThresholdReport:
    if t <= 4:
        raise PreconditionError("t must exceed 4 for the quadratics to be meaningful")
    ct = c_t(t)
    d2, d2_re, d1 = _quadratics(t, ct)
    y = _larger_root(*d1)
    return ThresholdReport(t, ct, _larger_root(*d2), y * y, _larger_root(*d2_re))


def thresholds_precise(t: int, dps: int = 50) -> ThresholdReport:
    """Same as :func:`thresholds` evaluated with ``dps`` significant digits."""
    if t <= 4:
        raise PreconditionError("t must exceed 4 for the quadratics to be meaningful")
    with mpmath.workdps(dps):
        s = mpmath.mpf("1.37")
        ct = mpmath.sqrt(s) / ((s - 1) * mpmath.sqrt(t - 1)) + mpmath.sqrt(s * (t - 1))
        d2, d2_re, d1 = _quadratics(mpmath.mpf(t), ct)
        y = _larger_root(*d1, sqrt=mpmath.sqrt)
        return ThresholdReport(
            t, ct, _larger_root(*d2, sqrt=mpmath.sqrt), y * y, _larger_root(*d2_re, sqrt=mpmath.sqrt)
        )
