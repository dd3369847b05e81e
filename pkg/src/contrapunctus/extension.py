"""Extended counterpoint symmetries along embeddings ``x -> a*x`` of dichotomy
worlds, the doubling tower over Z_16 and chained extension up to Z_512.

Three readings of the linkage ``a o g1 = g2 o a`` between
``g1 = e^(e.t1).(u1 + e.u1.v1)`` over Z_n and ``g2`` over Z_an are offered.
All of them impose ``t2 = a*t1`` and ``u2 = u1 (mod n)``. They differ on the
dual part of the linear factor:

``scaled`` (default)
    ``u2*v2 = a*u1*v1``. The embedding multiplies the interval coordinate, and
    the dual part of the linear factor is scaled along with the translation.
``fiber``
    ``v2`` unrestricted. Only equality on the zero-cantus fiber is required.
``strict``
    ``u2*v2 = u1*v1 (mod n)``. Full map equality under ``c + e.d -> a*c + e.a*d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .counterpoint import (
    CounterpointSymmetry,
    SuccessorSet,
    _check_interval,
    counterpoint_symmetries,
    intersection_cardinality,
    satisfies_conditions,
    successor_mask,
)
from .dichotomy import (
    Dichotomy,
    EmbeddingReport,
    PolarityReport,
    check_embedding,
    find_quasipolarities,
    induced_quasipolarity,
)
from .zmod import AffineMap, DualNumber

LINKAGES = ("scaled", "fiber", "strict")
# how the embedding acts on a counterpoint interval c + e.d when checking preservation
DEFAULT_ACTION = {"scaled": "interval", "fiber": "componentwise", "strict": "componentwise"}

U0 = Dichotomy(16, (0, 1, 3, 4, 5, 6, 7, 10))


class ExtensionError(ValueError):
    pass


@dataclass(frozen=True)
class Embedding:
    factor: int
    source: Dichotomy
    target: Dichotomy
    report: EmbeddingReport = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        report = check_embedding(self.factor, self.source, self.target)
        if not report.valid:
            raise ExtensionError(
                f"x -> {self.factor}x is not an embedding of dichotomies: "
                f"missing images of {list(report.missing)}, "
                f"polarity mismatch at {list(report.bad_points)}"
            )
        object.__setattr__(self, "report", report)


def _check_linkage(linkage: str) -> None:
    if linkage not in LINKAGES:
        raise ValueError(f"unknown linkage {linkage!r}; choose from {LINKAGES}")


def candidate_extensions(
    g1: CounterpointSymmetry, e: Embedding, linkage: str = "scaled"
) -> list[CounterpointSymmetry]:
    _check_linkage(linkage)
    a, n, m = e.factor, e.source.n, e.target.n
    if g1.n != n:
        raise ExtensionError(f"{g1} lives in Z_{g1.n}, embedding starts at Z_{n}")
    t2 = a * g1.t
    dual1 = g1.u * g1.v
    out = []
    for j in range(a):
        u2 = g1.u + j * n
        if gcd(u2, m) != 1:
            continue
        if linkage == "fiber":
            vs = range(m)
        else:
            inv = pow(u2, -1, m)
            if linkage == "scaled":
                duals = {(a * dual1) % m}
            else:
                duals = {(dual1 + i * n) % m for i in range(a)}
            vs = sorted((d * inv) % m for d in duals)
        out.extend(CounterpointSymmetry(t2, u2, v2, m) for v2 in vs)
    return sorted(out)


@dataclass(frozen=True)
class ExtensionStep:
    embedding: Embedding
    interval: int
    parents: tuple[CounterpointSymmetry, ...]
    extended: SuccessorSet
    links: dict = field(compare=False)
    filtered: tuple[tuple[CounterpointSymmetry, bool, bool], ...] = ()
    linkage: str = "scaled"
    candidates: int = 0

    @property
    def factor(self) -> int:
        return self.embedding.factor


def extended_symmetries(
    parents, e: Embedding, y: int, linkage: str = "scaled"
) -> ExtensionStep:
    """Maximizers of the intersection count among linked candidates for ``e.(a*y)``.

    Conditions (1) and (2) are re-applied in the target world; candidates they
    remove are kept in ``filtered`` with the failing flags.
    """
    _check_linkage(linkage)
    parents = tuple(sorted(parents))
    if not parents:
        raise ExtensionError("no parent symmetries to extend")
    y = _check_interval(e.source, y)
    K2 = e.target
    m = K2.n
    y2 = (e.factor * y) % m
    xi = DualNumber(0, y2, m)
    q = induced_quasipolarity(e.report.target_polarity, 0)

    links: dict[CounterpointSymmetry, list[CounterpointSymmetry]] = {}
    for g1 in parents:
        for g2 in candidate_extensions(g1, e, linkage):
            links.setdefault(g2, []).append(g1)
    if not links:
        raise ExtensionError(f"no candidate extensions for factor {e.factor}")

    filtered = []
    scored = []
    for g2 in sorted(links):
        c1, c2 = satisfies_conditions(g2.map, q, K2, xi)
        if c1 and c2:
            scored.append((intersection_cardinality(g2, K2), g2))
        else:
            filtered.append((g2, c1, c2))
    if not scored:
        raise ExtensionError("every candidate extension failed conditions (1)/(2)")
    top = max(c for c, _ in scored)
    winners = tuple(g for c, g in scored if c == top)
    return ExtensionStep(
        embedding=e,
        interval=y,
        parents=parents,
        extended=SuccessorSet(K2, y2, winners, top),
        links={g: tuple(links[g]) for g in winners},
        filtered=tuple(filtered),
        linkage=linkage,
        candidates=len(links),
    )


@dataclass(frozen=True)
class Tower:
    base: Dichotomy
    levels: tuple[Dichotomy, ...]
    reports: tuple[PolarityReport, ...]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(L.n for L in self.levels)

    @property
    def top(self) -> Dichotomy:
        return self.levels[-1]


class TowerError(ExtensionError):
    pass


def double_dichotomy(U: Dichotomy) -> Dichotomy:
    """``2U | (2V + 1)`` with ``V = {0, ..., |U| - 1}``, a dichotomy of Z_2n."""
    evens = {2 * x for x in U.members}
    odds = {2 * x + 1 for x in range(len(U))}
    return Dichotomy(2 * U.n, tuple(sorted(evens | odds)))


def doubling_tower(U0: Dichotomy = U0, depth: int = 5) -> Tower:
    if depth < 0:
        raise TowerError(f"depth must be >= 0, got {depth}")
    levels = [U0]
    for _ in range(depth):
        levels.append(double_dichotomy(levels[-1]))
    reports = []
    for i, L in enumerate(levels):
        rep = find_quasipolarities(L)
        expected = AffineMap(L.n // 2, 1, L.n)
        if not rep.strong or rep.polarity != expected:
            found = ", ".join(map(str, rep.quasipolarities)) or "none"
            raise TowerError(
                f"level {i} (Z_{L.n}) should be strong with polarity {expected}; "
                f"quasipolarities: {found}"
            )
        reports.append(rep)
        if i:
            emb = check_embedding(2, levels[i - 1], L)
            if not emb.valid:
                raise TowerError(f"x -> 2x does not embed level {i - 1} into level {i}")
    return Tower(U0, tuple(levels), tuple(reports))


def depth_for(n0: int, target: int) -> int:
    """Number of doublings taking Z_n0 to Z_target."""
    depth, n = 0, n0
    while n < target:
        n *= 2
        depth += 1
    if n != target:
        raise TowerError(f"Z_{target} is not reached from Z_{n0} by doubling")
    return depth


@dataclass(frozen=True)
class Chain:
    tower: Tower
    interval: int
    base: SuccessorSet
    steps: tuple[ExtensionStep, ...]
    mode: str = "chained"

    @property
    def final(self) -> SuccessorSet:
        return self.steps[-1].extended if self.steps else self.base


def chain_extend(
    tower: Tower, k: int, linkage: str = "scaled", mode: str = "chained"
) -> Chain:
    """Extend the level-0 counterpoint symmetries of ``e.k`` to the top of the tower.

    ``chained`` doubles one level at a time and pools every maximizer as the
    next parents. ``direct`` uses the single embedding by ``2**depth``.
    """
    base = counterpoint_symmetries(tower.base, k)
    if mode == "chained":
        steps = []
        parents, y = base.symmetries, base.interval
        for lo, hi in zip(tower.levels, tower.levels[1:]):
            step = extended_symmetries(parents, Embedding(2, lo, hi), y, linkage)
            steps.append(step)
            parents, y = step.extended.symmetries, step.extended.interval
    elif mode == "direct":
        steps = []
        if tower.depth:
            e = Embedding(2**tower.depth, tower.base, tower.top)
            steps.append(extended_symmetries(base.symmetries, e, base.interval, linkage))
    else:
        raise ValueError(f"unknown extension mode {mode!r}")
    return Chain(tower, base.interval, base, tuple(steps), mode)


@dataclass(frozen=True)
class PreservationReport:
    ok: bool
    action: str
    checked: int
    counterexamples: tuple[tuple[CounterpointSymmetry, CounterpointSymmetry, DualNumber], ...]
    violations: int = 0

    def __bool__(self) -> bool:
        return self.ok


def embed_successors(mask: np.ndarray, a: int, m: int, action: str) -> tuple[np.ndarray, np.ndarray]:
    """Images in Z_m[e] of the successor pairs in ``mask`` under the embedding."""
    c, d = np.nonzero(mask)
    if action == "componentwise":
        return (a * c) % m, (a * d) % m
    if action == "interval":
        return c % m, (a * d) % m
    raise ValueError(f"unknown embedding action {action!r}")


def preservation_check(step: ExtensionStep, action: str | None = None, limit: int = 20) -> PreservationReport:
    """Whether ``a`` maps every parent's successors into its linked extensions' successors.

    ``action`` picks how ``a`` acts on ``c + e.d``: ``componentwise`` gives
    ``a*c + e.a*d``, ``interval`` gives ``c + e.a*d``. The default follows the
    step's linkage.
    """
    action = action or DEFAULT_ACTION[step.linkage]
    e = step.embedding
    a, m = e.factor, e.target.n
    bad = []
    checked = misses = 0
    parent_masks = {}
    for g2, linked in step.links.items():
        child = step.extended.masks[g2]
        for g1 in linked:
            if g1 not in parent_masks:
                parent_masks[g1] = successor_mask(g1.map, e.source)
            c2, d2 = embed_successors(parent_masks[g1], a, m, action)
            hit = child[c2, d2]
            checked += hit.size
            misses += int((~hit).sum())
            room = max(limit - len(bad), 0)
            for cc, dd in zip(c2[~hit][:room], d2[~hit][:room]):
                bad.append((g1, g2, DualNumber(int(cc), int(dd), m)))
    return PreservationReport(misses == 0, action, checked, tuple(bad), misses)
