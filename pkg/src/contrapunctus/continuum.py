"""Continuous counterpoint on the circle R/Z with exact rational arithmetic.

Intervals are fractions of an octave (1/12 is a semitone). The consonances
are ``K = [0, 1/2)``. Symmetries ``e^t.v`` (v = +1 or -1) act on the interval
by ``y -> t + v*y`` and on the cantus firmus by ``x -> v*x``. The cantus map
is a measure-preserving bijection, so every torus quantity reduces to the
interval fiber.

Sets of intervals are ``ArcSet`` objects: disjoint segments of [0, 1) with
open/closed flags, where a segment never contains the point 1 (it is 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import floor

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


class ContinuumError(ValueError):
    pass


def as_point(x) -> Fraction:
    """Exact position on the circle in [0, 1). Floats are rejected."""
    if isinstance(x, float):
        raise ContinuumError(f"use an exact rational, not the float {x!r}")
    return Fraction(x) % 1


def parse_point(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ContinuumError(f"cannot read {text!r} as a fraction") from exc


def semitones_to_point(semitones: str) -> Fraction:
    """``"4.5"`` semitones is 3/8 octave; only multiples of a quarter tone are exact."""
    try:
        value = Fraction(str(semitones).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ContinuumError(f"cannot read {semitones!r} as a semitone count") from exc
    if (value * 2).denominator != 1:
        raise ContinuumError(f"{semitones} semitones is not a whole number of quarter tones")
    return value / 12


@total_ordering
@dataclass(frozen=True)
class Segment:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = False

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: Fraction) -> bool:
        if x == self.lo:
            return self.lo_closed
        if x == self.hi:
            return self.hi_closed
        return self.lo < x < self.hi

    def __lt__(self, other: Segment) -> bool:
        return (self.lo, not self.lo_closed, self.hi, self.hi_closed) < (
            other.lo, not other.lo_closed, other.hi, other.hi_closed
        )


@dataclass(frozen=True)
class Arc:
    """A circle arc from ``start`` to ``end`` counterclockwise.

    ``start == end`` with both ends closed is a single point; with the ends not
    both closed it is the whole circle.
    """

    start: Fraction
    end: Fraction
    start_closed: bool
    end_closed: bool

    @property
    def length(self) -> Fraction:
        if self.start == self.end:
            return Fraction(0) if self.start_closed and self.end_closed else Fraction(1)
        return (self.end - self.start) % 1

    def __str__(self) -> str:
        if self.start == self.end and self.start_closed and self.end_closed:
            return f"{{{self.start}}}"
        end = self.end if self.end > self.start else self.end + 1
        left = "[" if self.start_closed else "("
        right = "]" if self.end_closed else ")"
        return f"{left}{self.start}, {end}{right}"


def _pieces(lo: Fraction, hi: Fraction, lc: bool, hc: bool) -> list[Segment]:
    """Reduce a real interval of length <= 1 to segments inside [0, 1)."""
    if hi < lo or (hi == lo and not (lc and hc)):
        return []
    shift = floor(lo)
    lo, hi = lo - shift, hi - shift
    if hi < 1:
        return [Segment(lo, hi, lc, hc)]
    if hi == 1:
        out = [Segment(lo, hi, lc, False)] if lo < 1 else []
        return out + ([Segment(Fraction(0), Fraction(0), True, True)] if hc else [])
    return [Segment(lo, Fraction(1), lc, False), *_pieces(Fraction(0), hi - 1, True, hc)]


def _canonical(segments) -> tuple[Segment, ...]:
    segs = sorted(s for s in segments if s.lo < s.hi or (s.lo_closed and s.hi_closed))
    out: list[Segment] = []
    for s in segs:
        if out:
            cur = out[-1]
            if s.lo < cur.hi or (s.lo == cur.hi and (cur.hi_closed or s.lo_closed)):
                if s.hi > cur.hi:
                    hi, hc = s.hi, s.hi_closed
                elif s.hi == cur.hi:
                    hi, hc = cur.hi, cur.hi_closed or s.hi_closed
                else:
                    hi, hc = cur.hi, cur.hi_closed
                out[-1] = Segment(cur.lo, hi, cur.lo_closed, hc)
                continue
        out.append(s)
    return tuple(out)


@dataclass(frozen=True)
class ArcSet:
    segments: tuple[Segment, ...] = ()

    @classmethod
    def interval(cls, lo, hi, lo_closed: bool = True, hi_closed: bool = False) -> ArcSet:
        """Image on the circle of the real interval from ``lo`` to ``hi``."""
        lo, hi = Fraction(lo), Fraction(hi)
        if hi - lo > 1:
            raise ContinuumError("an arc is at most one full turn")
        return cls(_canonical(_pieces(lo, hi, lo_closed, hi_closed)))

    @classmethod
    def point(cls, x) -> ArcSet:
        x = as_point(x)
        return cls((Segment(x, x, True, True),))

    @classmethod
    def union(cls, *sets: ArcSet) -> ArcSet:
        return cls(_canonical(s for A in sets for s in A.segments))

    @property
    def empty(self) -> bool:
        return not self.segments

    def contains(self, x) -> bool:
        x = as_point(x)
        return any(s.contains(x) for s in self.segments)

    __contains__ = contains

    def complement(self) -> ArcSet:
        out, pos, closed = [], Fraction(0), True
        for s in self.segments:
            out.extend(_pieces(pos, s.lo, closed, not s.lo_closed))
            pos, closed = s.hi, not s.hi_closed
        out.extend(_pieces(pos, Fraction(1), closed, False))
        return ArcSet(_canonical(out))

    @property
    def arcs(self) -> tuple[Arc, ...]:
        segs = list(self.segments)
        if not segs:
            return ()
        if segs[0] == Segment(Fraction(0), Fraction(1), True, False):
            return (Arc(Fraction(0), Fraction(0), True, False),)
        first, last = segs[0], segs[-1]
        wrap = len(segs) > 1 and first.lo == 0 and first.lo_closed and last.hi == 1
        arcs = []
        if wrap:
            arcs.append(Arc(last.lo, first.hi, last.lo_closed, first.hi_closed))
            segs = segs[1:-1]
        arcs.extend(Arc(s.lo, s.hi % 1, s.lo_closed, s.hi_closed) for s in segs)
        return tuple(sorted(arcs, key=lambda a: (a.start, not a.start_closed)))

    def __str__(self) -> str:
        if self.empty:
            return "{}"
        return " U ".join(
            f"{'[' if s.lo_closed else '('}{s.lo}, {s.hi}{']' if s.hi_closed else ')'}"
            if not s.is_point else f"{{{s.lo}}}"
            for s in self.segments
        )

    def to_json(self) -> list[dict]:
        return [
            {"lo": str(s.lo), "hi": str(s.hi), "lo_closed": s.lo_closed, "hi_closed": s.hi_closed}
            for s in self.segments
        ]


CONSONANCES = ArcSet.interval(0, HALF)
DISSONANCES = CONSONANCES.complement()


@dataclass(frozen=True, order=True)
class CircleSymmetry:
    """``e^t.v``: the interval ``y`` goes to ``t + v*y``."""

    t: Fraction
    v: int = 1

    def __post_init__(self):
        if self.v not in (1, -1):
            raise ContinuumError(f"linear part must be +1 or -1, got {self.v}")
        object.__setattr__(self, "t", as_point(self.t))

    def __call__(self, y) -> Fraction:
        return (self.t + self.v * as_point(y)) % 1

    def inverse(self) -> CircleSymmetry:
        return CircleSymmetry(-self.v * self.t, self.v)

    def on_torus(self, x, y) -> tuple[Fraction, Fraction]:
        return (self.v * as_point(x)) % 1, self(y)

    def __str__(self) -> str:
        linear = "1" if self.v == 1 else "(-1)"
        if self.t == 0:
            return linear
        return f"e^({self.t}).{linear}"


IDENTITY = CircleSymmetry(Fraction(0), 1)
POLARITY = CircleSymmetry(HALF, 1)


def arc_apply(g: CircleSymmetry, A: ArcSet) -> ArcSet:
    out = []
    for s in A.segments:
        if g.v == 1:
            out.extend(_pieces(s.lo + g.t, s.hi + g.t, s.lo_closed, s.hi_closed))
        else:
            out.extend(_pieces(g.t - s.hi, g.t - s.lo, s.hi_closed, s.lo_closed))
    return ArcSet(_canonical(out))


def arc_intersect(A: ArcSet, B: ArcSet) -> ArcSet:
    out = []
    for a in A.segments:
        for b in B.segments:
            if a.lo > b.lo:
                lo, lc = a.lo, a.lo_closed
            elif b.lo > a.lo:
                lo, lc = b.lo, b.lo_closed
            else:
                lo, lc = a.lo, a.lo_closed and b.lo_closed
            if a.hi < b.hi:
                hi, hc = a.hi, a.hi_closed
            elif b.hi < a.hi:
                hi, hc = b.hi, b.hi_closed
            else:
                hi, hc = a.hi, a.hi_closed and b.hi_closed
            if lo < hi or (lo == hi and lc and hc):
                out.append(Segment(lo, hi, lc, hc))
    return ArcSet(_canonical(out))


def arc_measure(A: ArcSet) -> Fraction:
    return sum((s.length for s in A.segments), Fraction(0))


def arc_components(A: ArcSet) -> int:
    segs = A.segments
    count = len(segs)
    if count > 1 and segs[0].lo == 0 and segs[0].lo_closed and segs[-1].hi == 1:
        count -= 1
    return count


def _check_consonant(k, K: ArcSet) -> Fraction:
    k = as_point(k)
    if k not in K:
        raise ContinuumError(f"{k} is not a consonance")
    return k


@dataclass(frozen=True)
class AdmissibleRegion:
    """Translations t for which ``e^t.(+1)`` resp. ``e^t.(-1)`` sends a dissonance to ``k``."""

    k: Fraction
    translation: ArcSet
    reflection: ArcSet

    def for_sign(self, v: int) -> ArcSet:
        return self.translation if v == 1 else self.reflection

    def admits(self, g: CircleSymmetry) -> bool:
        return g.t in self.for_sign(g.v)


def admissible(g: CircleSymmetry, k, K: ArcSet = CONSONANCES) -> bool:
    """Whether ``(0, k)`` lies in ``g(S^1 x D)``, tested on the preimage of k."""
    return g.inverse()(k) in K.complement()


def admissible_region(k, K: ArcSet = CONSONANCES) -> AdmissibleRegion:
    # t + y = k  <=>  t = k - y ;  t - y = k  <=>  t = k + y, for y in D
    k = _check_consonant(k, K)
    D = K.complement()
    return AdmissibleRegion(
        k,
        translation=arc_apply(CircleSymmetry(k, -1), D),
        reflection=arc_apply(CircleSymmetry(k, 1), D),
    )


def fiber_intersection(g: CircleSymmetry, K: ArcSet = CONSONANCES) -> ArcSet:
    return arc_intersect(arc_apply(g, K), K)


def intersection_measure(g: CircleSymmetry, K: ArcSet = CONSONANCES) -> Fraction:
    """Measure of ``g(S^1 x K) & (S^1 x K)`` on the torus, i.e. of the fiber intersection."""
    return arc_measure(fiber_intersection(g, K))


def h1_rank(g: CircleSymmetry, K: ArcSet = CONSONANCES) -> int:
    """Rank of H_1 of the torus intersection: one circle per fiber component."""
    return arc_components(fiber_intersection(g, K))


def _endpoints(A: ArcSet) -> set[Fraction]:
    return {p for s in A.segments for p in (s.lo, s.hi % 1)}


def breakpoints(v: int, region: ArcSet, K: ArcSet = CONSONANCES) -> list[Fraction]:
    """Translations where the measure objective can change slope, plus region ends.

    An endpoint ``e`` of K moves to ``t + v*e``; slopes change when it meets an
    endpoint ``f`` of K, i.e. at ``t = f - v*e``.
    """
    ends = _endpoints(K)
    pts = {(f - v * e) % 1 for f in ends for e in ends}
    pts |= _endpoints(region)
    pts.add(Fraction(0))
    return sorted(pts)


@dataclass(frozen=True)
class MaximizerResult:
    k: Fraction
    measure: Fraction
    symmetries: tuple[CircleSymmetry, ...]
    attained: bool = True

    def __iter__(self):
        return iter(self.symmetries)


def maximizers(k, K: ArcSet = CONSONANCES) -> MaximizerResult:
    """Exact attained maximum of ``intersection_measure`` over admissible symmetries.

    The objective is linear between consecutive breakpoints, so its supremum on
    the admissible set is reached at cell ends. Only ends that are themselves
    admissible count as maximizers; a supremum approached at an open end is not
    attained.
    """
    region = admissible_region(k, K)
    closure: list[Fraction] = []
    attained: dict[CircleSymmetry, Fraction] = {}
    cells = []
    for v in (1, -1):
        R = region.for_sign(v)
        pts = breakpoints(v, R, K)
        value = {t: intersection_measure(CircleSymmetry(t, v), K) for t in pts}
        for t in pts:
            if t in R:
                attained[CircleSymmetry(t, v)] = value[t]
        for lo, hi in zip(pts, pts[1:] + [Fraction(1)]):
            if (lo + hi) / 2 in R:
                ends = (value[lo], value[hi % 1])
                closure.extend(ends)
                cells.append((v, lo, hi, ends))
    sup = max(closure + list(attained.values()))
    for v, lo, hi, ends in cells:
        if ends[0] == ends[1] == sup:
            raise ContinuumError(f"objective is flat at its maximum on ({lo}, {hi}) for v={v}")
    winners = tuple(sorted((g for g, val in attained.items() if val == sup), key=lambda g: (g.t, -g.v)))
    return MaximizerResult(region.k, sup, winners, attained=bool(winners))


def continuous_successors(k, K: ArcSet = CONSONANCES) -> ArcSet:
    result = maximizers(k, K)
    return ArcSet.union(*(fiber_intersection(g, K) for g in result.symmetries))


def expected_maximizers(k) -> tuple[CircleSymmetry, ...]:
    """The closed-form maximizers: reflection below the minor third, translation above."""
    k = as_point(k)
    t = k - HALF
    if k < QUARTER:
        return (CircleSymmetry(t, -1),)
    if k > QUARTER:
        return (CircleSymmetry(t, 1),)
    return (CircleSymmetry(t, 1), CircleSymmetry(t, -1))


def grid(steps: int = 1000) -> list[Fraction]:
    """Consonances ``j/steps`` for j = 0 .. steps/2 - 1."""
    return [Fraction(j, steps) for j in range(steps // 2)]


@dataclass(frozen=True)
class ClaimResult:
    name: str
    passed: bool
    detail: str


def verify_claims(steps: int = 1000, K: ArcSet = CONSONANCES) -> list[ClaimResult]:
    """Check the qualitative features of the measure-maximizing successor rule on a grid.

    The fourth check is a computable proxy: no consonance is its own admitted
    successor, so the discantus interval must move at every step.
    """
    ks = grid(steps)
    succ = {k: continuous_successors(k, K) for k in ks}

    dead = [k for k in ks if succ[k].empty]

    def everything_else(k):
        others = arc_intersect(K, ArcSet.point(k).complement())
        return arc_intersect(succ[k], others) == others

    universal = [k for k in ks if everything_else(k)]

    wrong_direction = []
    for k in ks:
        if k < QUARTER:
            allowed = ArcSet.interval(k, HALF, False, False)
        elif k > QUARTER:
            allowed = ArcSet.interval(0, k, True, False)
        else:
            continue
        if arc_intersect(succ[k], allowed) != succ[k]:
            wrong_direction.append(k)

    self_successor = [k for k in ks if k in succ[k]]

    return [
        ClaimResult("no_culs_de_sac", not dead, f"{len(ks) - len(dead)}/{len(ks)} consonances have successors"),
        ClaimResult(
            "minor_third_unique_universal",
            universal == [QUARTER] if QUARTER in ks else not universal,
            f"consonances admitting every other consonance: {[str(k) for k in universal]}",
        ),
        ClaimResult(
            "direction_reversal",
            not wrong_direction,
            f"{len(wrong_direction)} consonances move in the wrong direction",
        ),
        ClaimResult(
            "no_stationary_discantus",
            not self_successor,
            f"{len(self_successor)} consonances are their own successor",
        ),
    ]


def h1_survey(steps: int = 1000, K: ArcSet = CONSONANCES) -> dict:
    """H_1 ranks of admissible symmetries sampled at ``t = j/steps`` for every grid k.

    Returns the set of ranks seen and the symmetries of rank 0.
    """
    sample = [CircleSymmetry(Fraction(j, steps), v) for v in (1, -1) for j in range(steps)]
    rank = {g: h1_rank(g, K) for g in sample}
    ranks, zeros = set(), set()
    for k in grid(steps):
        region = admissible_region(k, K)
        for g in sample:
            if region.admits(g):
                ranks.add(rank[g])
                if rank[g] == 0:
                    zeros.add(g)
    return {"ranks": ranks, "rank_zero": zeros}
