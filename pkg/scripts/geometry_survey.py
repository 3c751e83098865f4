"""Point, line and radical statistics of small Chevalley algebras over prime fields.

    python scripts/geometry_survey.py --types A2 A3 B2 G2 --fields 3 5
"""

import argparse
import time
from dataclasses import dataclass, field

from extremal_lie.algebra import algebra_make
from extremal_lie.form import extremal_gram
from extremal_lie.geometry import BudgetError, axiom_report, build_geometry, enumerate_points_orbit


@dataclass
class SurveyConfig:
    types: list = field(default_factory=lambda: ["A1", "A2", "A3", "B2", "G2"])
    fields: list = field(default_factory=lambda: [3, 5])
    max_points: int = 1500
    rank: bool = False


def survey(cfg: SurveyConfig):
    print(f"{'algebra':10s} {'dim':>4s} {'points':>7s} {'lines':>7s} {'diam':>5s} {'rad':>4s} {'rank':>5s} {'sec':>6s}")
    for t in cfg.types:
        for f in cfg.fields:
            t0 = time.perf_counter()
            A = algebra_make(t, f)
            try:
                P = enumerate_points_orbit(A, budget=cfg.max_points)
            except BudgetError:
                print(f"{A.name:10s} {A.dim:4d} {'>' + str(cfg.max_points):>7s}")
                continue
            G = build_geometry(A, P)
            gram = extremal_gram(A)
            rep = axiom_report(G, A, gram.radical, with_rank=cfg.rank)
            rk = "-" if rep.rank is None else str(rep.rank)
            print(f"{A.name:10s} {A.dim:4d} {rep.points:7d} {rep.lines:7d} {str(rep.diameter):>5s} "
                  f"{gram.radical_dim:4d} {rk:>5s} {time.perf_counter() - t0:6.2f}", flush=True)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--types", nargs="+", default=SurveyConfig().types)
    ap.add_argument("--fields", nargs="+", type=int, default=SurveyConfig().fields)
    ap.add_argument("--max-points", type=int, default=1500)
    ap.add_argument("--rank", action="store_true", help="also run the (exponential) rank search")
    ns = ap.parse_args()
    survey(SurveyConfig(ns.types, ns.fields, ns.max_points, ns.rank))
