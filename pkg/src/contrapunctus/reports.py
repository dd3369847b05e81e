"""Reproduction of the U_0 symmetry table and JSON-ready report builders."""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources

from . import continuum as cont
from .counterpoint import SuccessorSet, compare_with_oracle
from .dichotomy import Dichotomy, PolarityReport
from .extension import Chain, Tower, U0, chain_extend, doubling_tower, preservation_check

WORKERS_ENV = "CONTRAPUNCTUS_WORKERS"


def max_workers() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def pmap(fn, items):
    """Ordered map over a thread pool sized by ``CONTRAPUNCTUS_WORKERS``."""
    items = list(items)
    workers = min(max_workers(), len(items)) or 1
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(fn, items))


def load_reference(path=None) -> dict:
    if path is None:
        text = resources.files("contrapunctus.data").joinpath("reference_table.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return json.loads(text)


@dataclass(frozen=True)
class TableRow:
    interval: int
    chain: Chain

    @property
    def level0(self) -> SuccessorSet:
        return self.chain.base

    @property
    def final(self) -> SuccessorSet:
        return self.chain.final

    @property
    def forced_translation(self) -> bool:
        """Every final translation is ``2**depth * t0`` for some level-0 translation t0."""
        scale = 2**self.chain.tower.depth
        N = self.final.n
        allowed = {(scale * g.t) % N for g in self.level0.symmetries}
        return all(g.t in allowed for g in self.final.symmetries)

    @property
    def preservation(self) -> bool:
        return all(preservation_check(step) for step in self.chain.steps)

    @property
    def filtered(self) -> int:
        return sum(len(step.filtered) for step in self.chain.steps)


def table1(
    tower: Tower | None = None,
    linkage: str = "scaled",
    mode: str = "chained",
    intervals=None,
) -> list[TableRow]:
    tower = tower or doubling_tower(U0, 5)
    intervals = list(tower.base.members if intervals is None else intervals)
    chains = pmap(lambda k: chain_extend(tower, k, linkage, mode), intervals)
    return [TableRow(k, ch) for k, ch in zip(intervals, chains)]


@dataclass(frozen=True)
class Discrepancy:
    interval: int
    cell: str
    expected: object
    computed: object
    disputed: bool
    note: str = ""

    def to_json(self) -> dict:
        return {
            "interval": self.interval,
            "cell": self.cell,
            "expected": self.expected,
            "computed": self.computed,
            "disputed": self.disputed,
            "note": self.note,
        }


def _cells(row: TableRow) -> dict[str, object]:
    return {
        "level0.symmetries": [str(g) for g in row.level0.symmetries],
        "level0.cardinality": row.level0.cardinality,
        "final.symmetries": [str(g) for g in row.final.symmetries],
        "final.cardinality": row.final.cardinality,
    }


def compare_rows(rows: list[TableRow], reference: dict) -> list[Discrepancy]:
    by_interval = {r["interval"]: r for r in reference["rows"]}
    out = []
    for row in rows:
        ref = by_interval.get(row.interval)
        if ref is None:
            continue
        disputed = set(ref.get("disputed", ()))
        computed = _cells(row)
        for cell, value in computed.items():
            part, key = cell.split(".")
            expected = ref[part][key]
            if isinstance(expected, list):
                same = sorted(expected) == sorted(value)
            else:
                same = expected == value
            if not same:
                out.append(
                    Discrepancy(row.interval, cell, expected, value, cell in disputed, ref.get("note", ""))
                )
    return out


def compare_modes(chained: list[TableRow], direct: list[TableRow]) -> list[dict]:
    diffs = []
    for a, b in zip(chained, direct):
        ca, cb = _cells(a), _cells(b)
        for cell in ("final.symmetries", "final.cardinality"):
            if ca[cell] != cb[cell]:
                diffs.append({"interval": a.interval, "cell": cell, "chained": ca[cell], "direct": cb[cell]})
    return diffs


# -- JSON builders -------------------------------------------------------------

def polarity_json(report: PolarityReport) -> dict:
    S = report.dichotomy
    return {
        "modulus": S.n,
        "dichotomy": list(S.members),
        "complement": list(S.complement_members),
        "quasipolarities": [str(p) for p in report.quasipolarities],
        "strong": report.strong,
        "polarity": str(report.polarity) if report.strong else None,
    }


def successor_json(s: SuccessorSet, include_successors: bool = False) -> dict:
    out = {
        "modulus": s.n,
        "dichotomy": list(s.dichotomy.members),
        "cantus": s.cantus,
        "interval": s.interval,
        "symmetries": [str(g) for g in s.symmetries],
        "parameters": [list(g.key) for g in s.symmetries],
        "cardinality": s.cardinality,
    }
    if include_successors:
        out["successors"] = [[x.a, x.b] for x in sorted(s.successors)]
    return out


def row_json(row: TableRow) -> dict:
    return {
        "interval": row.interval,
        "level0": {
            "symmetries": [str(g) for g in row.level0.symmetries],
            "cardinality": row.level0.cardinality,
        },
        "final": {
            "modulus": row.final.n,
            "interval": row.final.interval,
            "symmetries": [str(g) for g in row.final.symmetries],
            "cardinality": row.final.cardinality,
        },
        "levels": [
            {
                "modulus": step.extended.n,
                "factor": step.factor,
                "symmetries": [str(g) for g in step.extended.symmetries],
                "cardinality": step.extended.cardinality,
                "candidates": step.candidates,
                "filtered": [str(g) for g, _, _ in step.filtered],
            }
            for step in row.chain.steps
        ],
        "forced_translation": row.forced_translation,
        "preservation": row.preservation,
    }


def table_json(rows, discrepancies, mode: str, linkage: str, mode_diffs=None) -> dict:
    out = {
        "mode": mode,
        "linkage": linkage,
        "moduli": list(rows[0].chain.tower.moduli) if rows else [],
        "rows": [row_json(r) for r in rows],
        "discrepancies": [d.to_json() for d in discrepancies],
    }
    if mode_diffs is not None:
        out["mode_comparison"] = mode_diffs
    return out


def oracle_json(K: Dichotomy, intervals) -> dict:
    results = pmap(lambda k: compare_with_oracle(K, k), intervals)
    rows = []
    for cmp in results:
        rows.append({
            "interval": cmp.family.interval,
            "family_cardinality": cmp.family.cardinality,
            "oracle_cardinality": cmp.oracle.cardinality,
            "family_symmetries": [str(g) for g in cmp.family.symmetries],
            "oracle_maximizers": len(cmp.oracle.maximizers),
            "outside_family": [str(g) for g in cmp.oracle.outside_family],
            "same_successor_sets": cmp.same_successor_sets,
            "match": cmp.match,
        })
    return {
        "modulus": K.n,
        "dichotomy": list(K.members),
        "rows": rows,
        "match": all(r["match"] for r in rows),
    }


def continuum_json(k) -> dict:
    result = cont.maximizers(k)
    succ = cont.continuous_successors(k)
    return {
        "k": str(result.k),
        "maximizers": [str(g) for g in result.symmetries],
        "measure": str(result.measure),
        "attained": result.attained,
        "successors": succ.to_json(),
        "successors_text": str(succ),
        "h1_ranks": {str(g): cont.h1_rank(g) for g in result.symmetries},
        "admissible": {
            "translation": str(cont.admissible_region(k).translation),
            "reflection": str(cont.admissible_region(k).reflection),
        },
    }


def claims_json(steps: int = 1000) -> dict:
    claims = cont.verify_claims(steps)
    survey = cont.h1_survey(steps)
    h1_ok = survey["ranks"] <= {0, 1} and survey["rank_zero"] <= {cont.POLARITY}
    return {
        "grid": steps,
        "claims": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in claims],
        "h1": {
            "passed": h1_ok,
            "ranks": sorted(survey["ranks"]),
            "rank_zero": sorted(str(g) for g in survey["rank_zero"]),
        },
        "passed": all(c.passed for c in claims) and h1_ok,
    }
