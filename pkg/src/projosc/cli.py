"""Command-line front end: `projosc catalog|analyze|monge|from-quadrics|ci`."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .catalog import ENTRIES, get_variety
from .quadsys import system_from_spec, variety_from_quadrics
from .report import analyze, ci_report, monge_report, random_point, render_text
from .variety import ParamVariety, dump_spec, variety_from_spec

ALL_CHECKS = ("osculation", "syzygies", "monge", "ci", "thresholds", "generation")
DEFAULT_CHECKS = ("osculation", "syzygies", "monge", "ci", "thresholds")


@dataclass
class AnalysisConfig:
    variety: str | None = None
    spec: str | None = None
    point: list | None = None          # rationals as text, or ["random"]
    seed: int = 0
    max_degree: int = 3
    max_order: int = 7
    checks: tuple = DEFAULT_CHECKS
    json: bool = False
    sing_dim: int = -1

    def validate(self):
        if (self.variety is None) == (self.spec is None):
            raise ValueError("give exactly one of --variety or --spec")
        if self.max_degree < 1:
            raise ValueError("--max-degree must be at least 1")
        unknown = set(self.checks) - set(ALL_CHECKS)
        if unknown:
            raise ValueError(f"unknown checks {sorted(unknown)}; choose from {', '.join(ALL_CHECKS)}")
        if "monge" in self.checks and self.max_order < 2 * self.max_degree + 1:
            raise ValueError(f"--max-order must be at least 2 * max-degree + 1 = {2 * self.max_degree + 1} "
                             "when the Monge checks run (or drop them with --checks)")
        if self.sing_dim < -1:
            raise ValueError("--sing-dim must be at least -1")


def load_variety(cfg: AnalysisConfig) -> ParamVariety:
    if cfg.variety is not None:
        return get_variety(cfg.variety)
    try:
        text = Path(cfg.spec).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read spec file {cfg.spec}: {exc.strerror}") from None
    try:
        return variety_from_spec(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"spec file {cfg.spec} is not valid JSON: {exc}") from None


def resolve_point(cfg: AnalysisConfig, v: ParamVariety):
    if not cfg.point:
        return None
    if len(cfg.point) == 1 and cfg.point[0] == "random":
        return random_point(v, cfg.seed)
    items = []
    for chunk in cfg.point:
        items.extend(x for x in chunk.replace(",", " ").split() if x)
    try:
        pt = tuple(Fraction(x) for x in items)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse point {' '.join(cfg.point)!r}; use rationals like 1/2 -3 0") from None
    if len(pt) != v.n:
        raise ValueError(f"point needs {v.n} coordinates, got {len(pt)}")
    return pt


def _seed_for(cfg):
    return cfg.seed if cfg.point and cfg.point == ["random"] else None


def cmd_analyze(cfg: AnalysisConfig) -> dict:
    cfg.validate()
    v = load_variety(cfg)
    pt = resolve_point(cfg, v)
    return analyze(v, pt, cfg.max_degree, cfg.max_order, _seed_for(cfg), cfg.checks, cfg.sing_dim)


def cmd_monge(cfg: AnalysisConfig) -> dict:
    if (cfg.variety is None) == (cfg.spec is None):
        raise ValueError("give exactly one of --variety or --spec")
    v = load_variety(cfg)
    return monge_report(v, resolve_point(cfg, v), cfg.max_order, _seed_for(cfg))


def cmd_ci(cfg: AnalysisConfig) -> dict:
    if (cfg.variety is None) == (cfg.spec is None):
        raise ValueError("give exactly one of --variety or --spec")
    v = load_variety(cfg)
    if v.series_order is not None:
        raise ValueError("the CI test needs a polynomial parametrization")
    return ci_report(v, resolve_point(cfg, v), cfg.max_degree, _seed_for(cfg))


def cmd_from_quadrics(cfg: AnalysisConfig) -> dict:
    if cfg.spec is None:
        raise ValueError("from-quadrics needs --spec FILE with fields n and quadrics")
    try:
        text = Path(cfg.spec).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read spec file {cfg.spec}: {exc.strerror}") from None
    A, label = system_from_spec(text)
    v = variety_from_quadrics(A, label)
    checks = tuple(cfg.checks) + (("generation",) if "generation" not in cfg.checks else ())
    cfg.checks = checks
    if "monge" in checks and cfg.max_order < 5:
        raise ValueError("--max-order must be at least 5 when the Monge checks run")
    rep = analyze(v, resolve_point(cfg, v), cfg.max_degree, cfg.max_order, _seed_for(cfg), checks, cfg.sing_dim)
    rep["quadrics"] = A.to_spec(label)["quadrics"]
    return rep


def cmd_catalog(action: str, name: str | None = None) -> str:
    if action == "list":
        lines = []
        for key, e in ENTRIES.items():
            extra = f"  ({e.note})" if e.note else ""
            lines.append(f"{key:<16} n={e.n:<3} a={e.a:<3}{extra}")
        return "\n".join(lines)
    if action == "dump":
        if not name:
            raise ValueError("catalog dump needs a variety name")
        return dump_spec(get_variety(name))
    raise ValueError(f"unknown catalog action {action!r}")


def _add_common(p, spec_help="variety spec file (JSON)"):
    p.add_argument("--variety", help="catalog name (see `catalog list`)")
    p.add_argument("--spec", help=spec_help)
    p.add_argument("--point", nargs="+", help='marked point as rationals, or "random"')
    p.add_argument("--seed", type=int, default=0, help="seed for --point random")
    p.add_argument("--max-degree", type=int, default=3, help="largest hypersurface degree D")
    p.add_argument("--max-order", type=int, default=7, help="largest osculation order K")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("--sing-dim", type=int, default=-1, help="dimension of the singular locus for thresholds")
    p.add_argument("--checks", default=",".join(DEFAULT_CHECKS),
                   help=f"comma-separated subset of {','.join(ALL_CHECKS)}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="projosc", description="Exact osculation and Monge-type analysis of "
                                 "parametrized projective varieties")
    sub = ap.add_subparsers(dest="command", required=True)
    pc = sub.add_parser("catalog", help="list or dump catalog varieties")
    pc.add_argument("action", choices=["list", "dump"])
    pc.add_argument("name", nargs="?")
    for name, helptext in [("analyze", "full analysis report"), ("monge", "Monge system for quadrics only"),
                           ("ci", "complete intersection test")]:
        _add_common(sub.add_parser(name, help=helptext))
    _add_common(sub.add_parser("from-quadrics", help="analyze the variety built from a quadric system"),
                spec_help="quadric system spec file (JSON with n and quadrics)")
    return ap


def _config(ns) -> AnalysisConfig:
    checks = tuple(c.strip() for c in ns.checks.split(",") if c.strip())
    return AnalysisConfig(ns.variety, ns.spec, ns.point, ns.seed, ns.max_degree, ns.max_order, checks,
                          ns.json, ns.sing_dim)


def run(argv=None) -> tuple[int, str]:
    ns = build_parser().parse_args(argv)
    try:
        if ns.command == "catalog":
            return 0, cmd_catalog(ns.action, ns.name)
        cfg = _config(ns)
        fn = {"analyze": cmd_analyze, "monge": cmd_monge, "ci": cmd_ci,
              "from-quadrics": cmd_from_quadrics}[ns.command]
        rep = fn(cfg)
    except (ValueError, KeyError) as exc:
        return 2, f"error: {exc}"
    return 0, json.dumps(rep, indent=2) if cfg.json else render_text(rep)


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stdout if code == 0 else sys.stderr
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
