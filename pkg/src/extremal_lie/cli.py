"""Command-line entry point: ``extremal-lie <command> --type G2 --field 3``.

Exit codes: 0 all checks pass, 1 some check failed (report still written),
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .cache import ENV_VAR, CacheError, default_cache_dir, load_or_build
from .report import Report, RunConfig, check_geometry, render, verify
from .roots import UnsupportedRootSystem, parse_type
from .scalars import parse_field

log = logging.getLogger("extremal_lie")

COMMANDS = ("build", "extremal", "geometry", "verify", "report")


class ConfigError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="extremal-lie", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def algebra_args(p):
        p.add_argument("--type", required=True, help="root system, e.g. A2, G2, D4")
        p.add_argument("--field", default="3", help="Q or a prime (3, F5, GF7); default 3")
        p.add_argument("--cache-dir", default=None, help=f"bracket-table cache (env {ENV_VAR})")
        p.add_argument("--out", default=None, help="write the JSON report here")
        p.add_argument("-v", "--verbose", action="count", default=0)

    def enum_args(p):
        p.add_argument("--method", choices=("brute", "orbit", "both"), default="orbit")
        p.add_argument("--brute-budget", type=int, default=10 ** 7, help="max candidate 1-spaces")
        p.add_argument("--max-points", type=int, default=5000, help="orbit enumeration cap")
        p.add_argument("--rank-budget", type=int, default=10 ** 6, help="rank search extension steps")

    algebra_args(sub.add_parser("build", help="construct and cache a Chevalley algebra"))
    p = sub.add_parser("extremal", help="enumerate extremal points")
    algebra_args(p)
    enum_args(p)
    p = sub.add_parser("geometry", help="build the extremal geometry and check its axioms")
    algebra_args(p)
    enum_args(p)
    p = sub.add_parser("verify", help="run the full verification suite")
    algebra_args(p)
    enum_args(p)
    p.add_argument("--samples", type=int, default=100, help="random samples for the exp check")
    p.add_argument("--seed", type=int, default=0)
    p = sub.add_parser("report", help="render a saved JSON report")
    p.add_argument("path", help="report file written with --out")
    p.add_argument("-v", "--verbose", action="count", default=0)
    return ap


def make_config(ns: argparse.Namespace) -> RunConfig:
    """Validate flags before any computation."""
    kind, n = parse_type(ns.type)
    F = parse_field(ns.field)
    cfg = RunConfig(ns.command, f"{kind}{n}", str(F), verbose=ns.verbose, out=ns.out,
                    cache_dir=ns.cache_dir)
    for name in ("method", "brute_budget", "max_points", "rank_budget", "samples", "seed"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    for name in ("brute_budget", "max_points", "rank_budget", "samples"):
        if getattr(cfg, name) < 1:
            raise ConfigError(f"--{name.replace('_', '-')} must be positive")
    if ns.command in ("extremal", "geometry") and not F.is_finite:
        raise ConfigError(f"{ns.command} enumerates points and needs a finite field")
    if cfg.method in ("brute", "both") and not F.is_finite:
        raise ConfigError("--method brute needs a finite field")
    return cfg


def _points(A, cfg: RunConfig, rep: Report):
    from .geometry import enumerate_points_brute, enumerate_points_orbit

    def run():
        sets = {}
        if cfg.method in ("orbit", "both"):
            sets["orbit"] = enumerate_points_orbit(A, budget=cfg.max_points)
        if cfg.method in ("brute", "both"):
            sets["brute"] = enumerate_points_brute(A, budget=cfg.brute_budget)
        counts = {k: len(v) for k, v in sets.items()}
        agree = len(sets) < 2 or sets["orbit"].same_as(sets["brute"])
        rep.results["points"] = counts
        if "brute" in sets:
            rep.results["sandwich_points"] = len(sets["brute"].sandwiches)
        return ("pass" if agree else "fail"), (None if agree else counts), {"methods_agree": agree}

    rep.run("extremal_points", run)


def execute(cfg: RunConfig) -> Report:
    A, status = load_or_build(cfg.type, cfg.field, cfg.cache_dir or default_cache_dir())
    if status.startswith("rebuilt"):
        print(f"notice: cache {status}", file=sys.stderr)
    log.info("algebra %s (dim %d), cache %s", A.name, A.dim, status)
    if cfg.command == "verify":
        rep = verify(A, cfg)
    else:
        rep = Report(cfg)
        rep.results["algebra"] = {"type": A.rs.label, "field": str(A.field), "dim": A.dim}
        if cfg.command == "extremal":
            _points(A, cfg, rep)
        elif cfg.command == "geometry":
            rep.run("geometry", check_geometry, A, cfg, {}, rep.results)
    rep.results["cache"] = status.split(":")[0]
    return rep


def main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as err:  # argparse exits 2 on usage errors, 0 on --help
        return int(err.code or 0)
    logging.basicConfig(level=logging.WARNING - 10 * min(ns.verbose, 2), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    if ns.command == "report":
        try:
            data = json.loads(Path(ns.path).read_text())
        except (OSError, json.JSONDecodeError) as err:
            print(f"error: cannot read report: {err}", file=sys.stderr)
            return 2
        print(render(data))
        return 0 if data.get("passed") else 1
    try:
        cfg = make_config(ns)
    except (UnsupportedRootSystem, ConfigError, ValueError) as err:
        ap.print_usage(sys.stderr)
        print(f"error: {err}", file=sys.stderr)
        return 2
    try:
        rep = execute(cfg)
    except (CacheError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    text = rep.dumps()
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    if cfg.verbose or cfg.out:
        print(render(rep.as_dict()), file=sys.stderr)
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
