"""Counterpoint symmetries and admitted successors of a strong dichotomy.

The search runs over the family ``e^(e.t).(u + e.u.v)`` (conjugated by the
cantus translation when the cantus firmus is not 0). Intersection counts come
from per-``u`` correlation tables; ``direct_intersection_cardinality`` and
``oracle_symmetries`` are the slow reference paths used to validate them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd

import numpy as np

from .dichotomy import Dichotomy, DichotomyError, induced_quasipolarity, require_polarity
from .zmod import (
    DualAffineMap,
    DualNumber,
    ModulusError,
    apply_fields,
    compose_fields,
    render_map,
    units,
)

ORACLE_MAX_MODULUS = 16


@dataclass(frozen=True, order=True)
class CounterpointSymmetry:
    """``e^(e.t).(u + e.u.v)``, transported to cantus firmus ``cantus``."""

    t: int
    u: int
    v: int
    n: int
    cantus: int = 0

    def __post_init__(self):
        n = self.n
        for name in ("t", "u", "v", "cantus"):
            object.__setattr__(self, name, getattr(self, name) % n)
        if gcd(self.u, n) != 1:
            raise ValueError(f"u={self.u} is not a unit of Z_{n}")

    @property
    def map(self) -> DualAffineMap:
        n, x = self.n, self.cantus
        uv = self.u * self.v
        return DualAffineMap((1 - self.u) * x, self.t - uv * x, self.u, uv, n)

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.t, self.u, self.v)

    def __str__(self) -> str:
        return render_map(self.map)


class _Kernel:
    """Correlation tables ``C_u(s) = |{d in K : u*d + s in K}|`` for one dichotomy."""

    def __init__(self, K: Dichotomy):
        self.K = K
        self.n = K.n
        self.mask = K.mask
        self.members = np.array(K.members, dtype=np.int64)
        self._corr: dict[int, np.ndarray] = {}
        self._cosets: dict[tuple[int, int], np.ndarray] = {}
        self._divisors = [g for g in range(1, self.n + 1) if self.n % g == 0]

    def corr(self, u: int) -> np.ndarray:
        table = self._corr.get(u)
        if table is None:
            n = self.n
            shifts = np.arange(n, dtype=np.int64)
            hits = self.mask[(u * self.members[None, :] + shifts[:, None]) % n]
            table = hits.sum(axis=1)
            self._corr[u] = table
        return table

    def coset_sums(self, u: int, g: int) -> np.ndarray:
        """``S[i] = sum_j C_u(i + g*j)`` for i in [0, g)."""
        key = (u, g)
        sums = self._cosets.get(key)
        if sums is None:
            sums = self.corr(u).reshape(self.n // g, g).sum(axis=0)
            self._cosets[key] = sums
        return sums

    def count(self, t: int, u: int, v: int) -> int:
        # sum over c of C_u(t + u*v*c) visits the coset t + <uv> exactly g times
        n = self.n
        g = gcd((u * v) % n, n)
        return int(g * self.coset_sums(u, g)[t % g])

    def best_over_v(self, u: int) -> tuple[np.ndarray, np.ndarray]:
        """Per translation t: the best count over all v, and the attaining divisors.

        The count depends on v only through ``gcd(v, n)``.
        """
        n = self.n
        t = np.arange(n)
        values = np.stack([g * self.coset_sums(u, g)[t % g] for g in self._divisors])
        best = values.max(axis=0)
        return best, values == best[None, :]

    def divisors(self) -> list[int]:
        return self._divisors


@lru_cache(maxsize=64)
def _kernel(K: Dichotomy) -> _Kernel:
    return _Kernel(K)


def intersection_cardinality(g: CounterpointSymmetry, K: Dichotomy) -> int:
    """``|g(K[e]) & K[e]|`` via the correlation kernel."""
    if g.n != K.n:
        raise ModulusError(f"modulus mismatch: Z_{g.n} vs Z_{K.n}")
    return _kernel(K).count(g.t, g.u, g.v)


def direct_intersection_cardinality(g: DualAffineMap, K: Dichotomy) -> int:
    """Same count by enumerating every ``c + e.d`` with d in K."""
    if g.n != K.n:
        raise ModulusError(f"modulus mismatch: Z_{g.n} vs Z_{K.n}")
    return int(successor_mask(g, K).sum())


def successor_mask(g: DualAffineMap, K: Dichotomy) -> np.ndarray:
    """Boolean ``n x n`` array indexed ``[cantus, interval]`` of ``g(K[e]) & K[e]``."""
    n = K.n
    c = np.arange(n)[:, None]
    d = np.array(K.members)[None, :]
    ca, cb = np.broadcast_arrays(*apply_fields(g.ta, g.tb, g.va, g.vb, c, d, n))
    keep = K.mask[cb]
    out = np.zeros((n, n), dtype=bool)
    out[ca[keep], cb[keep]] = True
    return out


def mask_to_duals(mask: np.ndarray) -> frozenset[DualNumber]:
    n = mask.shape[0]
    return frozenset(DualNumber(int(a), int(b), n) for a, b in zip(*np.nonzero(mask)))


def satisfies_conditions(g: DualAffineMap, q: DualAffineMap, K: Dichotomy, xi: DualNumber) -> tuple[bool, bool]:
    """Literal checks: (1) ``xi in g(D[e])``; (2) ``g o q == q o g``."""
    n = K.n
    wa = pow(g.va, -1, n)
    # the only cantus firmus g sends to xi.a
    c = (wa * (xi.a - g.ta)) % n
    dis = np.array(K.complement_members)
    ca, cb = apply_fields(g.ta, g.tb, g.va, g.vb, c, dis, n)
    cond1 = bool(np.any((ca == xi.a) & (cb == xi.b)))
    cond2 = compose_fields(g.fields, q.fields, n) == compose_fields(q.fields, g.fields, n)
    return cond1, cond2


@dataclass(frozen=True)
class SuccessorSet:
    """Counterpoint symmetries of the consonant interval ``cantus + e.interval``.

    ``cardinality`` is the shared count of every listed symmetry; ``successors``
    is the union of their successor sets (a single set when the maximizer is
    unique).
    """

    dichotomy: Dichotomy
    interval: int
    symmetries: tuple[CounterpointSymmetry, ...]
    cardinality: int
    cantus: int = 0

    @property
    def n(self) -> int:
        return self.dichotomy.n

    @property
    def xi(self) -> DualNumber:
        return DualNumber(self.cantus, self.interval, self.n)

    @cached_property
    def masks(self) -> dict[CounterpointSymmetry, np.ndarray]:
        return {g: successor_mask(g.map, self.dichotomy) for g in self.symmetries}

    @cached_property
    def mask(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=bool)
        for m in self.masks.values():
            out |= m
        return out

    @property
    def successors(self) -> frozenset[DualNumber]:
        return mask_to_duals(self.mask)

    def successors_of(self, g: CounterpointSymmetry) -> frozenset[DualNumber]:
        return mask_to_duals(self.masks[g])

    def distinct_successor_sets(self) -> set[frozenset[tuple[int, int]]]:
        out = set()
        for m in self.masks.values():
            rows, cols = np.nonzero(m)
            out.add(frozenset(zip(rows.tolist(), cols.tolist())))
        return out


def _check_interval(K: Dichotomy, k: int) -> int:
    k %= K.n
    if k not in K:
        raise DichotomyError(f"interval {k} is not a consonance of {{{K}}}")
    return k


def counterpoint_symmetries(K: Dichotomy, k: int, cantus: int = 0) -> SuccessorSet:
    """All maximizers over the (t, u, v) family for the interval ``cantus + e.k``.

    Conditions (1) and (2) do not involve v, so they are evaluated once per
    (t, u) on the v = 0 member; every reported maximizer is re-checked with its
    own v, and its count re-derived by direct enumeration.
    """
    n = K.n
    k = _check_interval(K, k)
    x = cantus % n
    p = require_polarity(K)
    q = induced_quasipolarity(p, x)
    xi = DualNumber(x, k, n)
    kern = _kernel(K)

    us = np.array(units(n), dtype=np.int64)[None, :]
    ts = np.arange(n, dtype=np.int64)[:, None]
    zero = np.zeros_like(ts * us)
    h = ((1 - us) * x + zero, ts + zero, us + zero, zero)

    # (1): the cantus preimage of xi.a is x itself; test D on that fiber
    dmask = ~K.mask
    _, cb = apply_fields(*h, x, 0, n)
    uinv = np.array([pow(int(u), -1, n) for u in us[0]], dtype=np.int64)[None, :]
    cond1 = dmask[((k - cb) * uinv) % n]
    # (2): literal field-wise commutation with q
    gq = compose_fields(h, q.fields, n)
    qg = compose_fields(q.fields, h, n)
    cond2 = np.logical_and.reduce([np.broadcast_to(a == b, cond1.shape) for a, b in zip(gq, qg)])
    admissible = cond1 & cond2

    best = np.full(cond1.shape, -1, dtype=np.int64)
    attaining = {}
    for j, u in enumerate(us[0]):
        col, att = kern.best_over_v(int(u))
        best[:, j] = np.where(admissible[:, j], col, -1)
        attaining[int(u)] = att
    top = int(best.max())
    if top < 0:
        return SuccessorSet(K, k, (), 0, x)

    divisors = kern.divisors()
    found = []
    for ti, j in zip(*np.nonzero(best == top)):
        u = int(us[0, j])
        gs = {divisors[i] for i in np.flatnonzero(attaining[u][:, ti])}
        for v in range(n):
            if gcd(v, n) in gs:
                found.append(CounterpointSymmetry(int(ti), u, v, n, x))
    found.sort()
    for g in found:
        c1, c2 = satisfies_conditions(g.map, q, K, xi)
        if not (c1 and c2):
            raise AssertionError(f"{g} fails the literal condition re-check ({c1}, {c2})")
        if direct_intersection_cardinality(g.map, K) != top:
            raise AssertionError(f"kernel count disagrees with enumeration for {g}")
    return SuccessorSet(K, k, tuple(found), top, x)


def transpose_successors(x: int, s: SuccessorSet) -> frozenset[DualNumber]:
    """Successors of ``x + e.k`` obtained by shifting the cantus-0 successors by x."""
    return mask_to_duals(np.roll(s.mask, x % s.n, axis=0))


@dataclass(frozen=True)
class OracleResult:
    dichotomy: Dichotomy
    interval: int
    cardinality: int
    maximizers: tuple[DualAffineMap, ...]
    successor_sets: frozenset[frozenset[tuple[int, int]]]

    @property
    def outside_family(self) -> tuple[DualAffineMap, ...]:
        """Maximizers with a cantus translation, i.e. not of the form e^(e.t).(u+e.uv)."""
        return tuple(g for g in self.maximizers if g.ta != 0)


def oracle_symmetries(K: Dichotomy, k: int) -> OracleResult:
    """Brute force over the whole affine group of Z_n[e] for cantus firmus 0.

    Every map is applied to every element of D[e] and K[e]; nothing from the
    restricted search is reused.
    """
    n = K.n
    if n > ORACLE_MAX_MODULUS:
        raise ModulusError(f"oracle is limited to n <= {ORACLE_MAX_MODULUS}, got {n}")
    k = _check_interval(K, k)
    q = induced_quasipolarity(require_polarity(K), 0)
    kmask = K.mask

    grid_c = np.repeat(np.arange(n), n // 2)
    kd = np.tile(np.array(K.members), n)
    dd = np.tile(np.array(K.complement_members), n)
    tt = np.array(list(itertools.product(range(n), repeat=2)))
    ta, tb = tt[:, :1], tt[:, 1:]

    best, maps, sets = -1, [], []
    for va in units(n):
        for vb in range(n):
            # (1) every element of D[e] pushed through every translation
            ca, cb = apply_fields(ta, tb, va, vb, grid_c[None, :], dd[None, :], n)
            cond1 = ((ca == 0) & (cb == k)).any(axis=1)
            # (2) literal commutation
            f = (ta[:, 0], tb[:, 0], va, vb)
            gq = compose_fields(f, q.fields, n)
            qg = compose_fields(q.fields, f, n)
            cond2 = np.logical_and.reduce([np.broadcast_to(a == b, cond1.shape) for a, b in zip(gq, qg)])
            ok = np.flatnonzero(cond1 & cond2)
            if not ok.size:
                continue
            ca, cb = apply_fields(ta[ok], tb[ok], va, vb, grid_c[None, :], kd[None, :], n)
            inside = kmask[cb]
            counts = inside.sum(axis=1)
            for row, idx in enumerate(ok):
                cnt = int(counts[row])
                if cnt < best:
                    continue
                if cnt > best:
                    best, maps, sets = cnt, [], []
                pairs = frozenset(zip(ca[row][inside[row]].tolist(), cb[row][inside[row]].tolist()))
                maps.append(DualAffineMap(int(ta[idx, 0]), int(tb[idx, 0]), va, vb, n))
                sets.append(pairs)
    order = sorted(range(len(maps)), key=lambda i: maps[i])
    return OracleResult(
        K, k, best, tuple(maps[i] for i in order), frozenset(sets)
    )


@dataclass(frozen=True)
class OracleComparison:
    family: SuccessorSet
    oracle: OracleResult

    @property
    def same_cardinality(self) -> bool:
        return self.family.cardinality == self.oracle.cardinality

    @property
    def same_successor_sets(self) -> bool:
        return self.family.distinct_successor_sets() == set(self.oracle.successor_sets)

    @property
    def match(self) -> bool:
        return self.same_cardinality and self.same_successor_sets


def compare_with_oracle(K: Dichotomy, k: int) -> OracleComparison:
    return OracleComparison(counterpoint_symmetries(K, k), oracle_symmetries(K, k))
