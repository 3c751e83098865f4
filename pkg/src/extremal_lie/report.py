"""Verification suite and machine-readable reports."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .algebra import BracketTable, jacobi_violations, long_root_indices, short_root_indices
from .extremal import (
    CharacteristicTwoError, automorphism_failures, certify, exp_group_law_failures, exp_map, is_extremal,
    random_long_root_element,
)
from .form import extremal_gram, form_radical_quotient, is_simple, long_root_span_check
from .geometry import (
    BudgetError, axiom_report, build_geometry, enumerate_points_brute, enumerate_points_orbit,
    long_root_connectivity,
)

SCHEMA_VERSION = "1.0"


@dataclass
class Check:
    name: str
    status: str  # pass | fail | skipped
    witness: object = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != "fail"


@dataclass
class RunConfig:
    command: str
    type: str
    field: str
    method: str = "orbit"
    brute_budget: int = 10 ** 7
    rank_budget: int = 10 ** 6
    max_points: int = 5000
    samples: int = 100
    seed: int = 0
    out: str | None = None
    cache_dir: str | None = None
    verbose: int = 0

    def echo(self) -> dict:
        d = asdict(self)
        for k in ("out", "cache_dir", "verbose"):
            d.pop(k)
        return d


class Report:
    def __init__(self, config: RunConfig):
        self.config = config
        self.checks: list[Check] = []
        self.results: dict = {}
        self.timings: dict = {}

    def run(self, name, fn, *args, **kwargs):
        """Run ``fn`` returning ``(status, witness, details)``; exceptions become failures."""
        t0 = time.perf_counter()
        try:
            status, witness, details = fn(*args, **kwargs)
        except (CharacteristicTwoError, BudgetError) as err:
            status, witness, details = "skipped", None, {"reason": str(err)}
        except Exception as err:  # noqa: BLE001 - every failure must surface with a witness
            status, witness, details = "fail", f"{type(err).__name__}: {err}", {}
        self.timings[name] = round(time.perf_counter() - t0, 4)
        check = Check(name, status, _plain(witness), _plain(details))
        self.checks.append(check)
        return check

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self, timings: bool = True) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "tool": "extremal-lie",
            "tool_version": __version__,
            "config": self.config.echo(),
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
            "results": self.results,
        }
        if timings:
            d["timings"] = self.timings
        return d

    def dumps(self, timings: bool = True) -> str:
        return json.dumps(self.as_dict(timings), indent=2) + "\n"


def _plain(v):
    if isinstance(v, dict):
        return {str(k): _plain(t) for k, t in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(t) for t in v]
    if isinstance(v, np.ndarray):
        return _plain(v.tolist())
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if hasattr(v, "numerator") and not isinstance(v, (int, bool)):
        return str(v)
    return v


# ---------------------------------------------------------------------------
# individual checks; each returns (status, witness, details)


def check_jacobi(A: BracketTable):
    count, wit = jacobi_violations(A)
    return ("pass" if count == 0 else "fail"), (wit[0] if wit else None), {"violations": count}


def check_long_roots(A: BracketTable):
    bad = [A.labels[i] for i in long_root_indices(A) if not is_extremal(A, A.x(i)).is_extremal]
    return ("pass" if not bad else "fail"), (bad[0] if bad else None), {"long_roots": len(long_root_indices(A))}


def check_short_roots(A: BracketTable):
    shorts = short_root_indices(A)
    if not shorts:
        return "skipped", None, {"reason": "single root length"}
    ext = [A.labels[i] for i in shorts if is_extremal(A, A.x(i)).is_extremal]
    if A.field.p == 2:
        return "skipped", None, {"reason": "not asserted in characteristic 2", "extremal_short": len(ext)}
    return ("pass" if not ext else "fail"), (ext[0] if ext else None), {"short_roots": len(shorts),
                                                                         "extremal_short": len(ext)}


def check_gram(A: BracketTable, store: dict):
    gram = extremal_gram(A)
    store["gram"] = gram
    R, Q = form_radical_quotient(A, gram)
    store["quotient"] = Q
    details = {"radical_dim": gram.radical_dim, "quotient_dim": Q.dim,
               "symmetric": gram.symmetric, "associative_failures": gram.associative_failures}
    ok = gram.symmetric and gram.associative_failures == 0
    return ("pass" if ok else "fail"), None, details


def check_quotient_simple(store: dict, limit: int = 40):
    Q = store.get("quotient")
    if Q is None:
        return "skipped", None, {"reason": "no quotient"}
    if Q.dim > limit:
        return "skipped", None, {"reason": f"quotient dimension {Q.dim} above {limit}"}
    ok = is_simple(Q)
    return ("pass" if ok else "fail"), (None if ok else Q.name), {"quotient_dim": Q.dim}


def check_exp(A: BracketTable, samples: int, seed: int):
    F = A.field
    rng = np.random.default_rng(seed)
    fails = 0
    witness = None
    for s in range(samples):
        x = certify(A, random_long_root_element(A, rng))
        lam = int(rng.integers(F.p)) if F.p else int(rng.integers(-3, 4))
        mu = int(rng.integers(F.p)) if F.p else int(rng.integers(-3, 4))
        M = exp_map(A, x, lam)
        U, V = F.random(rng, (1, A.dim)), F.random(rng, (1, A.dim))
        f = automorphism_failures(A, M, U, V) + exp_group_law_failures(A, x, lam, mu)
        if f and witness is None:
            witness = {"sample": s, "x": x.x, "lam": lam}
        fails += bool(f)
    return ("pass" if not fails else "fail"), witness, {"samples": samples, "failures": fails}


def check_span(A: BracketTable):
    ok = long_root_span_check(A)
    return ("pass" if ok else "fail"), None, {"dim": A.dim}


def check_connectivity(A: BracketTable):
    comps, info = long_root_connectivity(A)
    return ("pass" if comps == 1 else "fail"), (None if comps == 1 else comps), {"components": comps, **info}


def check_geometry(A: BracketTable, cfg: RunConfig, store: dict, results: dict):
    method = cfg.method
    if not A.field.is_finite:
        return "skipped", None, {"reason": "geometry needs a finite field"}
    sets = {}
    if method in ("orbit", "both"):
        sets["orbit"] = enumerate_points_orbit(A, budget=cfg.max_points)
    if method in ("brute", "both"):
        sets["brute"] = enumerate_points_brute(A, budget=cfg.brute_budget)
    P = sets.get("orbit") or sets["brute"]
    agree = len(sets) < 2 or sets["orbit"].same_as(sets["brute"])
    G = build_geometry(A, P)
    gram = store.get("gram")
    rep = axiom_report(G, A, None if gram is None else gram.radical, rank_budget=cfg.rank_budget)
    details = {"points": {k: len(v) for k, v in sets.items()}, "methods_agree": agree, **rep.as_dict()}
    if "brute" in sets:
        details["sandwich_points"] = len(sets["brute"].sandwiches)
    results["geometry"] = {"points": rep.points, "lines": rep.lines, "diameter": rep.diameter,
                           "rank": rep.rank, "e2_components": rep.e2_components}
    ok = agree and rep.passed
    witness = None if ok else (rep.witnesses or "enumeration methods disagree")
    return ("pass" if ok else "fail"), witness, details


def check_models(A: BracketTable):
    from .models import so_model, sl_model

    kind, n = A.rs.kind, A.rs.rank
    if kind == "A":
        model = sl_model(n, A.field)
    elif kind == "D" and A.field.p != 2:
        model = so_model(n, A.field)
    else:
        return "skipped", None, {"reason": f"no matrix model for {A.rs.label}"}
    return "pass", None, {"model": model.table.name, "scaling": model.scaling,
                          "negated": model.meta.get("negated", [])}


def check_product_ratio(A: BracketTable):
    from .ratio import product_ratio

    F = A.field
    if not F.is_finite:
        return "skipped", None, {"reason": "ratio sweep runs over finite fields"}
    if A.dim > 60:
        return "skipped", None, {"reason": "dimension above 60"}
    lams = [lam for lam in F.units()]
    out = {}
    for lam in lams:
        r = product_ratio(A, A.scaled(lam))
        out[str(lam)] = None if not r.ok else int(r.lam)
        if not r.ok or r.lam != lam:
            return "fail", {"lam": lam, **(r.witness or {})}, out
    return "pass", None, {"recovered": out}


def verify(A: BracketTable, cfg: RunConfig) -> Report:
    rep = Report(cfg)
    store: dict = {}
    rep.results["algebra"] = {"type": A.rs.label, "field": str(A.field), "dim": A.dim}
    if A.dim <= 160:
        rep.run("jacobi", check_jacobi, A)
    rep.run("long_root_extremality", check_long_roots, A)
    rep.run("short_root_non_extremality", check_short_roots, A)
    if A.dim <= 160:
        rep.run("extremal_form", check_gram, A, store)
        rep.run("quotient_simple", check_quotient_simple, store)
        rep.run("exp_automorphism", check_exp, A, cfg.samples, cfg.seed)
    if A.field.p != 2:
        rep.run("long_root_span", check_span, A)
        rep.run("e2_connectivity", check_connectivity, A)
    if "gram" in store:
        rep.results["radical_dim"] = store["gram"].radical_dim
        rep.results["quotient_dim"] = store["quotient"].dim
    rep.run("geometry", check_geometry, A, cfg, store, rep.results)
    rep.run("models", check_models, A)
    if A.field.p != 2:
        rep.run("product_ratio", check_product_ratio, A)
    return rep


def render(report: dict) -> str:
    """Human-readable summary of a JSON report."""
    cfg = report.get("config", {})
    lines = [f"{cfg.get('command', '?')} {cfg.get('type', '?')} over {cfg.get('field', '?')}"
             f" (schema {report.get('schema_version')})"]
    for c in report.get("checks", []):
        extra = f"  witness: {c['witness']}" if c.get("witness") is not None else ""
        lines.append(f"  {c['status'].upper():8s} {c['name']}{extra}")
    for k, v in report.get("results", {}).items():
        lines.append(f"  {k}: {v}")
    lines.append("PASS" if report.get("passed") else "FAIL")
    return "\n".join(lines)
