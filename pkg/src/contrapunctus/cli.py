"""Command line front end.

Exit codes: 0 success, 1 invalid input, 2 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field, fields

from . import continuum as cont
from . import reports
from .counterpoint import ORACLE_MAX_MODULUS, counterpoint_symmetries
from .dichotomy import Dichotomy, DichotomyError, find_quasipolarities
from .extension import LINKAGES, TowerError, doubling_tower
from .zmod import ModulusError

NAMED = {
    "U0": (16, (0, 1, 3, 4, 5, 6, 7, 10)),
    "X6": (6, (0, 2, 3)),
    "X12": (12, (0, 1, 4, 5, 6, 9)),
}
COMMANDS = ("analyze", "symmetries", "table1", "continuum", "oracle")
FORMATS = ("table", "json", "csv")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    modulus: int | None = None
    dichotomy: str | None = None
    intervals: list[int] = field(default_factory=list)
    all_intervals: bool = False
    cantus: int = 0
    successors: bool = False
    depth: int = 5
    mode: str = "chained"
    linkage: str = "scaled"
    expected: str | None = None
    strict: bool = False
    allow_disputed: bool = False
    k: str | None = None
    semitones: str | None = None
    verify_claims: bool = False
    grid: int = 1000
    output_format: str = "table"

    @classmethod
    def from_mapping(cls, data: dict) -> RunConfig:
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config fields: {', '.join(unknown)}")
        if "command" not in data:
            raise ConfigError("config needs a 'command'")
        return cls(**data)

    def validate(self) -> RunConfig:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.output_format not in FORMATS:
            raise ConfigError(f"unknown format {self.output_format!r}")
        if self.mode not in ("chained", "direct", "compare"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.linkage not in LINKAGES:
            raise ConfigError(f"unknown linkage {self.linkage!r}")
        if self.depth < 0 or self.grid < 2:
            raise ConfigError("depth must be >= 0 and grid >= 2")
        if self.command in ("analyze", "symmetries", "oracle"):
            self.dichotomy_obj()
        if self.command == "symmetries" and len(self.intervals) != 1:
            raise ConfigError("symmetries needs exactly one interval (-k)")
        if self.command == "oracle":
            if self.modulus and self.modulus > ORACLE_MAX_MODULUS:
                raise ConfigError(f"oracle is limited to n <= {ORACLE_MAX_MODULUS}")
            if not self.all_intervals and not self.intervals:
                raise ConfigError("oracle needs -k or --all-k")
        if self.command == "continuum" and not self.verify_claims:
            if (self.k is None) == (self.semitones is None):
                raise ConfigError("continuum needs exactly one of -k or --semitones")
        return self

    def dichotomy_obj(self) -> Dichotomy:
        if not self.dichotomy:
            raise ConfigError("a dichotomy (-S) is required")
        if self.dichotomy in NAMED:
            n, members = NAMED[self.dichotomy]
            if self.modulus not in (None, n):
                raise ConfigError(f"{self.dichotomy} lives in Z_{n}, not Z_{self.modulus}")
            return Dichotomy(n, members)
        if self.modulus is None:
            raise ConfigError("a modulus (-n) is required")
        return Dichotomy.parse(self.modulus, self.dichotomy)

    def k_point(self):
        if self.semitones is not None:
            return cont.semitones_to_point(self.semitones)
        return cont.parse_point(self.k)


# -- rendering -----------------------------------------------------------------

def _emit(cfg: RunConfig, payload: dict, text: str, csv_rows: list[dict] | None = None) -> str:
    if cfg.output_format == "json":
        return json.dumps(payload, indent=2) + "\n"
    if cfg.output_format == "csv":
        rows = csv_rows if csv_rows is not None else [payload]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: (" ".join(map(str, v)) if isinstance(v, list) else v) for k, v in r.items()})
        return buf.getvalue()
    return text


def cmd_analyze(cfg: RunConfig) -> tuple[str, int]:
    report = find_quasipolarities(cfg.dichotomy_obj())
    payload = reports.polarity_json(report)
    lines = [
        f"dichotomy      {{{report.dichotomy}}} in Z_{report.dichotomy.n}",
        f"complement     {{{','.join(map(str, report.dichotomy.complement_members))}}}",
        f"quasipolarities {len(report.quasipolarities)}: " + (", ".join(map(str, report.quasipolarities)) or "none"),
        f"strong         {'yes' if report.strong else 'no'}",
    ]
    if report.strong:
        lines.append(f"polarity       {report.polarity}")
    return _emit(cfg, payload, "\n".join(lines) + "\n"), 0


def cmd_symmetries(cfg: RunConfig) -> tuple[str, int]:
    K = cfg.dichotomy_obj()
    s = counterpoint_symmetries(K, cfg.intervals[0], cfg.cantus)
    payload = reports.successor_json(s, cfg.successors)
    lines = [f"interval {s.cantus}+e.{s.interval} in Z_{s.n}[e]"]
    lines += [f"  {g}" for g in s.symmetries]
    lines.append(f"admitted successors: {s.cardinality}")
    if cfg.successors:
        lines.append(" ".join(f"{x.a}+e.{x.b}" for x in sorted(s.successors)))
    csv_rows = [{"interval": s.interval, "symmetry": str(g), "cardinality": s.cardinality} for g in s.symmetries]
    return _emit(cfg, payload, "\n".join(lines) + "\n", csv_rows), 0


def _table_text(rows, discrepancies, mode_diffs) -> str:
    head = ("interval", f"Z_{rows[0].level0.n}", "count", f"Z_{rows[0].final.n}", "count")
    body = []
    for r in rows:
        left = [str(g) for g in r.level0.symmetries]
        right = [str(g) for g in r.final.symmetries]
        for i in range(max(len(left), len(right))):
            body.append((
                str(r.interval) if i == 0 else "",
                left[i] if i < len(left) else "",
                str(r.level0.cardinality) if i == 0 else "",
                right[i] if i < len(right) else "",
                str(r.final.cardinality) if i == 0 else "",
            ))
    widths = [max(len(x[j]) for x in [head, *body]) for j in range(5)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*head), fmt.format(*("-" * w for w in widths))]
    lines += [fmt.format(*b).rstrip() for b in body]
    checks = [
        ("forced translation t_final = 32*t0" if rows[0].chain.tower.depth == 5 else "forced translation",
         all(r.forced_translation for r in rows)),
        ("successors preserved at every step", all(r.preservation for r in rows)),
    ]
    lines.append("")
    lines += [f"{'ok  ' if ok else 'FAIL'} {name}" for name, ok in checks]
    if discrepancies:
        lines.append("")
        lines.append("discrepancies against the reference table:")
        for d in discrepancies:
            tag = " (disputed)" if d.disputed else ""
            lines.append(f"  interval {d.interval} {d.cell}{tag}: reference {d.expected}, computed {d.computed}")
            if d.note:
                lines.append(f"    {d.note}")
    if mode_diffs is not None:
        lines.append("")
        lines.append("chained vs direct: " + ("identical" if not mode_diffs else f"{len(mode_diffs)} differing cells"))
        for d in mode_diffs:
            lines.append(f"  interval {d['interval']} {d['cell']}: chained {d['chained']}, direct {d['direct']}")
    return "\n".join(lines) + "\n"


def cmd_table1(cfg: RunConfig) -> tuple[str, int]:
    tower = doubling_tower(depth=cfg.depth)
    primary = "direct" if cfg.mode == "direct" else "chained"
    rows = reports.table1(tower, cfg.linkage, primary)
    mode_diffs = None
    if cfg.mode == "compare":
        mode_diffs = reports.compare_modes(rows, reports.table1(tower, cfg.linkage, "direct"))
    reference = reports.load_reference(cfg.expected)
    discrepancies = reports.compare_rows(rows, reference) if tower.top.n == reference["final_modulus"] else []
    payload = reports.table_json(rows, discrepancies, cfg.mode, cfg.linkage, mode_diffs)
    csv_rows = [
        {
            "interval": r.interval,
            "level0_symmetries": [str(g) for g in r.level0.symmetries],
            "level0_cardinality": r.level0.cardinality,
            "final_symmetries": [str(g) for g in r.final.symmetries],
            "final_cardinality": r.final.cardinality,
        }
        for r in rows
    ]
    code = 0
    invariants = all(r.forced_translation and r.preservation for r in rows)
    counted = [d for d in discrepancies if not (cfg.allow_disputed and d.disputed)]
    if cfg.strict and (counted or not invariants or mode_diffs):
        code = 2
    return _emit(cfg, payload, _table_text(rows, discrepancies, mode_diffs), csv_rows), code


def cmd_continuum(cfg: RunConfig) -> tuple[str, int]:
    if cfg.verify_claims:
        payload = reports.claims_json(cfg.grid)
        lines = [f"grid j/{cfg.grid}, j = 0 .. {cfg.grid // 2 - 1}"]
        for c in payload["claims"]:
            lines.append(f"{'ok  ' if c['passed'] else 'FAIL'} {c['name']}: {c['detail']}")
        h1 = payload["h1"]
        lines.append(
            f"{'ok  ' if h1['passed'] else 'FAIL'} h1_rank: ranks {h1['ranks']}, rank 0 only for {h1['rank_zero']}"
        )
        csv_rows = [{"claim": c["name"], "passed": c["passed"], "detail": c["detail"]} for c in payload["claims"]]
        return _emit(cfg, payload, "\n".join(lines) + "\n", csv_rows), 0 if payload["passed"] else 2
    payload = reports.continuum_json(cfg.k_point())
    lines = [
        f"k = {payload['k']}",
        "maximizers: " + ", ".join(payload["maximizers"]),
        f"measure: {payload['measure']}",
        f"successors: {payload['successors_text']}",
        "h1 ranks: " + ", ".join(f"{g}: {r}" for g, r in payload["h1_ranks"].items()),
    ]
    csv_rows = [{"k": payload["k"], "maximizer": g, "measure": payload["measure"]} for g in payload["maximizers"]]
    return _emit(cfg, payload, "\n".join(lines) + "\n", csv_rows), 0


def cmd_oracle(cfg: RunConfig) -> tuple[str, int]:
    K = cfg.dichotomy_obj()
    if K.n > ORACLE_MAX_MODULUS:
        raise ConfigError(f"oracle is limited to n <= {ORACLE_MAX_MODULUS}")
    intervals = list(K.members) if cfg.all_intervals else cfg.intervals
    payload = reports.oracle_json(K, intervals)
    lines = []
    for r in payload["rows"]:
        lines.append(
            f"{'match' if r['match'] else 'MISMATCH'}  k={r['interval']}  family {r['family_cardinality']}"
            f"  oracle {r['oracle_cardinality']}  ({r['oracle_maximizers']} full-group maximizers,"
            f" {len(r['outside_family'])} with cantus translation)"
        )
    csv_rows = [{k: v for k, v in r.items() if k != "outside_family"} for r in payload["rows"]]
    return _emit(cfg, payload, "\n".join(lines) + "\n", csv_rows), 0 if payload["match"] else 2


HANDLERS = {
    "analyze": cmd_analyze,
    "symmetries": cmd_symmetries,
    "table1": cmd_table1,
    "continuum": cmd_continuum,
    "oracle": cmd_oracle,
}


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (1); 2 is reserved for verification mismatches
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=FORMATS, default="table")

    world = argparse.ArgumentParser(add_help=False)
    world.add_argument("-n", "--modulus", type=int)
    world.add_argument("-S", "--dichotomy", help="comma-separated residues or one of " + ", ".join(NAMED))

    parser = _Parser(prog="contrapunctus", description="Counterpoint worlds over Z_2k and the circle.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("analyze", parents=[common, world], help="quasipolarities and strongness")

    p = sub.add_parser("symmetries", parents=[common, world], help="counterpoint symmetries of one interval")
    p.add_argument("-k", "--interval", dest="intervals", type=int, action="append", default=[])
    p.add_argument("--cantus", type=int, default=0)
    p.add_argument("--successors", action="store_true", help="list every admitted successor")

    p = sub.add_parser("table1", parents=[common], help="U_0 symmetries extended to Z_512")
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--mode", choices=("chained", "direct", "compare"), default="chained")
    p.add_argument("--linkage", choices=LINKAGES, default="scaled")
    p.add_argument("--expected", help="reference values file (JSON)")
    p.add_argument("--strict", action="store_true", help="exit 2 on any discrepancy")
    p.add_argument("--allow-disputed", action="store_true", help="with --strict, ignore disputed cells")

    p = sub.add_parser("continuum", parents=[common], help="continuous counterpoint on the circle")
    p.add_argument("-k", help="interval as a fraction of the octave, e.g. 3/8")
    p.add_argument("--semitones", help="interval in semitones, a multiple of 0.5")
    p.add_argument("--verify-claims", action="store_true")
    p.add_argument("--grid", type=int, default=1000)

    p = sub.add_parser("oracle", parents=[common, world], help="full-group brute force vs the family search")
    p.add_argument("-k", "--interval", dest="intervals", type=int, action="append", default=[])
    p.add_argument("--all-k", dest="all_intervals", action="store_true")

    p = sub.add_parser("run", help="execute a JSON RunConfig file")
    p.add_argument("config")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.command == "run":
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        return RunConfig.from_mapping(data)
    known = {f.name for f in fields(RunConfig)}
    return RunConfig(**{k: v for k, v in vars(args).items() if k in known})


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args).validate()
        text, code = HANDLERS[cfg.command](cfg)
    except (ConfigError, DichotomyError, ModulusError, cont.ContinuumError, TowerError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
