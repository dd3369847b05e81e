"""Dichotomies of Z_2k: quasipolarities, strongness, induced quasipolarities
and embeddings of one dichotomy world into a finer one."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .zmod import AffineMap, DualAffineMap, ModulusError, check_modulus, units


class DichotomyError(ValueError):
    pass


@dataclass(frozen=True)
class Dichotomy:
    """A half-cardinality subset ``members`` of Z_n, stored sorted."""

    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        n = check_modulus(self.n)
        if n % 2:
            raise DichotomyError(f"dichotomies need an even modulus, got {n}")
        raw = list(self.members)
        reduced = sorted({x % n for x in raw})
        if len(reduced) != len(raw):
            raise DichotomyError(f"repeated residues in {raw} (mod {n})")
        if len(reduced) != n // 2:
            raise DichotomyError(
                f"a dichotomy of Z_{n} has {n // 2} members, got {len(reduced)}"
            )
        object.__setattr__(self, "members", tuple(reduced))

    @classmethod
    def parse(cls, n: int, text: str) -> Dichotomy:
        """Read the comma-separated form, e.g. ``"0,1,3,4,5,6,7,10"``."""
        try:
            values = [int(tok) for tok in text.split(",") if tok.strip()]
        except ValueError as exc:
            raise DichotomyError(f"cannot parse dichotomy {text!r}") from exc
        return cls(n, tuple(values))

    def __contains__(self, x: int) -> bool:
        return x % self.n in self.memberset

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return ",".join(map(str, self.members))

    @property
    def memberset(self) -> frozenset[int]:
        return frozenset(self.members)

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.n, dtype=bool)
        m[list(self.members)] = True
        return m

    @property
    def complement_members(self) -> tuple[int, ...]:
        s = self.memberset
        return tuple(x for x in range(self.n) if x not in s)


def complement(S: Dichotomy) -> Dichotomy:
    return Dichotomy(S.n, S.complement_members)


@dataclass(frozen=True)
class PolarityReport:
    dichotomy: Dichotomy
    quasipolarities: tuple[AffineMap, ...]
    strong: bool = field(init=False)
    polarity: AffineMap | None = field(init=False)

    def __post_init__(self):
        strong = len(self.quasipolarities) == 1
        object.__setattr__(self, "strong", strong)
        object.__setattr__(self, "polarity", self.quasipolarities[0] if strong else None)

    @property
    def self_complementary(self) -> bool:
        return bool(self.quasipolarities)


@lru_cache(maxsize=256)
def find_quasipolarities(S: Dichotomy) -> PolarityReport:
    """Scan all n*phi(n) affine symmetries for ``p(S) = complement(S)``.

    Cached per dichotomy; the report is immutable.
    """
    n = S.n
    mask = S.mask
    members = np.array(S.members)
    shifts = np.arange(n)
    found = []
    for v in units(n):
        # row u holds v*S + u; a quasipolarity lands entirely outside S
        images = (v * members[None, :] + shifts[:, None]) % n
        hits = ~mask[images].any(axis=1)
        found.extend(AffineMap(int(u), v, n) for u in np.flatnonzero(hits))
    comp = set(S.complement_members)
    for p in found:
        if p.image(S.members) != comp:
            raise RuntimeError(f"scan reported {p}, which does not swap {{{S}}} and its complement")
    return PolarityReport(S, tuple(sorted(found)))


def require_polarity(S: Dichotomy) -> AffineMap:
    report = find_quasipolarities(S)
    if not report.strong:
        raise DichotomyError(
            f"dichotomy {{{S}}} of Z_{S.n} is not strong "
            f"({len(report.quasipolarities)} quasipolarities)"
        )
    return report.polarity


def induced_quasipolarity(p: AffineMap, x: int = 0) -> DualAffineMap:
    """The quasipolarity ``e^((1-w)x + e.r).w`` of Z_n[e] induced by ``p = e^r.w``.

    It fixes the cantus firmus ``x`` and acts by ``p`` on the interval:
    ``q(x + e.b) = x + e.p(b)``.
    """
    n = p.n
    return DualAffineMap((1 - p.v) * x, p.u, p.v, 0, n)


@dataclass(frozen=True)
class EmbeddingReport:
    factor: int
    source: Dichotomy
    target: Dichotomy
    source_polarity: AffineMap
    target_polarity: AffineMap
    contained: bool
    polarities_commute: bool
    translations_scale: bool
    missing: tuple[int, ...] = ()
    bad_points: tuple[int, ...] = ()

    @property
    def valid(self) -> bool:
        return self.contained and self.polarities_commute

    def __bool__(self) -> bool:
        return self.valid


def check_embedding(a: int, source: Dichotomy, target: Dichotomy) -> EmbeddingReport:
    """Check that ``x -> a*x`` embeds ``source`` (in Z_n) into ``target`` (in Z_an).

    Requires ``a*S_n`` inside ``S_an`` and ``p_an(a*x) = a*p_n(x)`` for all x.
    """
    n, m = source.n, target.n
    if a < 1 or a * n != m:
        raise ModulusError(f"factor {a} does not map Z_{n} into Z_{m}")
    p1 = require_polarity(source)
    p2 = require_polarity(target)
    tset = target.memberset
    missing = tuple(x for x in source.members if (a * x) % m not in tset)
    bad = tuple(x for x in range(n) if p2(a * x) != (a * p1(x)) % m)
    return EmbeddingReport(
        factor=a,
        source=source,
        target=target,
        source_polarity=p1,
        target_polarity=p2,
        contained=not missing,
        polarities_commute=not bad,
        translations_scale=(a * p1.u) % m == p2.u,
        missing=missing,
        bad_points=bad,
    )
