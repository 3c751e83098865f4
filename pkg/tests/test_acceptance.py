"""The thirteen acceptance criteria, one test each.

Every test prints a single ``criterion NN: PASS|FAIL  detail`` line.  Run
``pytest tests/test_acceptance.py -v`` (or ``python tests/test_acceptance.py``).
"""

import time

import numpy as np
import pytest

from conftest import FIELDS, TYPES, table
from extremal_lie.algebra import algebra_make, jacobi_violations, long_root_indices, short_root_indices
from extremal_lie.extremal import is_extremal
from extremal_lie.form import associativity_failures, extremal_gram, form_radical_quotient, is_simple
from extremal_lie.form import long_root_span_check
from extremal_lie.geometry import (
    axiom_report, build_geometry, enumerate_points_brute, enumerate_points_orbit, long_root_connectivity,
)
from extremal_lie.models import (
    commutator, enumerate_flags, enumerate_isotropic_lines, hyperbolic_form, point_to_flag,
    point_to_isotropic_line, random_siegel_pair, siegel, siegel_bracket_coefficient,
    siegel_coefficient_symmetric, sl_model, so_model,
)
from extremal_lie.ratio import product_ratio
from extremal_lie.report import check_exp
from extremal_lie.scalars import parse_field

CONNECTIVITY_TYPES = TYPES + ["A5", "B4", "C4", "D5", "E6", "E7", "E8"]


def emit(capsys, number, ok, detail):
    line = f"criterion {number:02d}: {'PASS' if ok else 'FAIL'}  {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)


def c01():
    t0 = time.perf_counter()
    bad = {}
    for t in TYPES:
        for f in FIELDS:
            count, _ = jacobi_violations(algebra_make(t, f))
            if count:
                bad[(t, str(f))] = count
    dt = time.perf_counter() - t0
    return not bad and dt < 60, f"{len(TYPES) * len(FIELDS)} algebras, violations {bad or 0}, {dt:.1f}s"


def c02():
    fails = [(t, str(f)) for t in TYPES for f in FIELDS
             if not all(is_extremal(table(t, f), table(t, f).x(i)).is_extremal for i in long_root_indices(table(t, f)))]
    return not fails, f"long root vectors extremal in {len(TYPES) * len(FIELDS)} algebras, failures {fails or 0}"


def c03():
    exceptions, total = [], 0
    for t in ("B3", "C3", "G2", "F4"):
        for f in (5, 7):
            A = table(t, f)
            for i in short_root_indices(A):
                total += 1
                if is_extremal(A, A.x(i)).is_extremal:
                    exceptions.append((t, f, A.labels[i]))
    return not exceptions and total > 0, f"{total} short root vectors, extremal exceptions {exceptions or 0}"


def c04():
    t0 = time.perf_counter()
    A = algebra_make("A2", 3)
    brute, orbit = enumerate_points_brute(A), enumerate_points_orbit(A)
    G = build_geometry(A, orbit)
    rep = axiom_report(G, A, extremal_gram(A).radical)
    dt = time.perf_counter() - t0
    ok = (len(brute) == len(orbit) == 52 and brute.same_as(orbit) and len(G.lines) == 26
          and {len(line) for line in G.lines} == {4} and rep.diameter == 3 and rep.partial_linear
          and rep.hyperplane_check and rep.rank == 2 and rep.rank_exhaustive and rep.distance_correspondence
          and dt < 60)
    return ok, (f"points brute {len(brute)} orbit {len(orbit)}, lines {len(G.lines)}, diameter {rep.diameter}, "
                f"rank {rep.rank}, hyperplanes {rep.hyperplane_check}, "
                f"distance/relation {rep.distance_correspondence}, {dt:.2f}s")


def c05():
    out = {}
    for t, f in (("G2", 3), ("A2", 3), ("A2", 5), ("G2", 5)):
        A = table(t, f)
        gram = extremal_gram(A)
        _, Q = form_radical_quotient(A, gram)
        out[f"{t}/F{f}"] = (gram.radical_dim, Q.dim, is_simple(Q))
    ok = out["G2/F3"] == (7, 7, True) and out["A2/F3"] == (1, 7, True) \
        and out["A2/F5"][0] == 0 and out["G2/F5"][0] == 0
    return ok, "(rad, quotient dim, simple): " + ", ".join(f"{k} {v}" for k, v in out.items())


def c06():
    t0 = time.perf_counter()
    fails = {}
    for t in TYPES:
        for f in FIELDS:
            status, _, details = check_exp(table(t, f), 100, 0)
            if status != "pass":
                fails[(t, str(f))] = details["failures"]
    dt = time.perf_counter() - t0
    return not fails, (f"100 samples x {len(TYPES) * len(FIELDS)} algebras (automorphism + group law), "
                       f"failures {fails or 0}, {dt:.1f}s")


def c07():
    out = {}
    for t in ("A2", "B3", "G2"):
        A = table(t, 5)
        gram = extremal_gram(A)
        out[t] = (gram.symmetric, associativity_failures(A, gram.G))
    ok = all(s and a == 0 for s, a in out.values())
    return ok, "(symmetric, associativity failures) " + ", ".join(f"{k} {v}" for k, v in out.items())


def siegel_samples(n=100, seed=0):
    F = parse_field(7)
    B = hyperbolic_form(4)
    g = np.random.default_rng(seed)
    for _ in range(n):
        v, w = random_siegel_pair(F, B, g)
        x, y = g.integers(0, 7, 8), g.integers(0, 7, 8)
        S, T = siegel(F, B, v, w), siegel(F, B, x, y)
        yield F, B, (v, w, x, y), S, commutator(F, S, commutator(F, S, T))


def c08():
    stated = corrected = 0
    for F, B, args, S, lhs in siegel_samples():
        stated += np.array_equal(lhs, F.reduce(S * siegel_coefficient_symmetric(F, B, *args)))
        corrected += np.array_equal(lhs, F.reduce(S * siegel_bracket_coefficient(F, B, *args)))
    return stated == 100, (f"stated coefficient b(w,x)b(w,y)-b(v,x)b(v,y) exact in {stated}/100; "
                           f"2(b(v,x)b(w,y)-b(v,y)b(w,x)) exact in {corrected}/100")


def c09():
    out = {t: long_root_span_check(table(t, 5)) for t in ("B3", "C3", "G2", "F4")}
    return all(out.values()), f"rank = dim: {out}"


def c10():
    comps = {}
    for t in CONNECTIVITY_TYPES:
        for f in (3, 5):
            A = table(t, f) if t in TYPES else algebra_make(t, f)
            comps[f"{t}/F{f}"] = long_root_connectivity(A)[0]
    bad = {k: v for k, v in comps.items() if v != 1}
    return not bad, f"{len(comps)} algebras, components != 1: {bad or 0}"


def c11():
    got = {}
    for t in ("A2", "B3"):
        A = table(t, 5)
        got[t] = [product_ratio(A, A.scaled(lam)).lam for lam in (1, 2, 3, 4)]
    A = table("A2", 5)
    bad = product_ratio(A, A.with_entry(int(A.I[0]), int(A.J[0]), int(A.K[0]), int(A.V[0]) + 1))
    ok = all(v == [1, 2, 3, 4] for v in got.values()) and not bad.ok and bool(bad.witness)
    return ok, f"recovered {got}; tampered table rejected: {not bad.ok}, witness {bad.witness.get('reason')!r}"


def c12():
    notes = []
    ok = True
    for f in (3, 5, 7):
        for make, (t, n) in ((sl_model, ("A2", 2)), (so_model, ("D4", 4))):
            A, M = table(t, f), make(n, f)
            s = M.scaling
            F = A.field
            same = np.array_equal(F.reduce(M.table.tensor * s[:, None, None] * s[None, :, None]),
                                  F.reduce(A.tensor * s[None, None, :]))
            ok &= same
    notes.append(f"sl3/so8 tables match after rescaling over F3, F5, F7: {ok}")
    A, M = table("A2", 3), sl_model(2, 3)
    P = enumerate_points_orbit(A)
    flags = {point_to_flag(M, A.field.reduce(x * M.scaling)) for x in P.X}
    expected = enumerate_flags(2, 3)
    ok &= len(P) == len(flags) == len(expected) == 52 and flags == expected
    notes.append(f"sl3/F3 points {len(P)} <-> flags {len(expected)}")
    D, S = table("D4", 3), so_model(4, 3)
    Q = enumerate_points_orbit(D)
    lines = {point_to_isotropic_line(S, D.field.reduce(x * S.scaling)) for x in Q.X}
    iso = enumerate_isotropic_lines(3, 8, "D")
    ok &= len(Q) == len(lines) == len(iso) and lines == iso
    notes.append(f"so8/F3 points {len(Q)} <-> isotropic lines {len(iso)}")
    return ok, "; ".join(notes)


def c13():
    A = table("A2", 5)
    base = build_geometry(A, enumerate_points_orbit(A)).fingerprint()
    same = {}
    for lam in (2, 3, 4):
        As = A.scaled(lam)
        same[lam] = build_geometry(As, enumerate_points_orbit(As)).fingerprint() == base
    return all(same.values()), f"identical geometry for lambda in {same}"


CRITERIA = [c01, c02, c03, c04, c05, c06, c07, c08, c09, c10, c11, c12, c13]


def _run(number, capsys):
    ok, detail = CRITERIA[number - 1]()
    emit(capsys, number, ok, detail)
    return ok, detail


def test_criterion_01_jacobi(capsys):
    assert _run(1, capsys)[0]


def test_criterion_02_long_roots_extremal(capsys):
    assert _run(2, capsys)[0]


def test_criterion_03_short_roots_not_extremal(capsys):
    assert _run(3, capsys)[0]


def test_criterion_04_a2_f3_geometry(capsys):
    assert _run(4, capsys)[0]


def test_criterion_05_radicals_and_quotients(capsys):
    assert _run(5, capsys)[0]


def test_criterion_06_exp_automorphism(capsys):
    assert _run(6, capsys)[0]


def test_criterion_07_form_symmetric_associative(capsys):
    assert _run(7, capsys)[0]


@pytest.mark.xfail(strict=True, reason=(
    "the stated coefficient is symmetric in x, y while [s_vw,[s_vw,s_xy]] is antisymmetric; "
    "equality holds only when both sides vanish. The corrected identity is asserted below."))
def test_criterion_08_siegel_identity(capsys):
    assert _run(8, capsys)[0]


def test_criterion_08_siegel_identity_corrected():
    for F, B, args, S, lhs in siegel_samples():
        assert np.array_equal(lhs, F.reduce(S * siegel_bracket_coefficient(F, B, *args)))


def test_criterion_09_long_root_span(capsys):
    assert _run(9, capsys)[0]


def test_criterion_10_e2_connectivity(capsys):
    assert _run(10, capsys)[0]


def test_criterion_11_product_ratio(capsys):
    assert _run(11, capsys)[0]


def test_criterion_12_models(capsys):
    assert _run(12, capsys)[0]


def test_criterion_13_scaling_invariance(capsys):
    assert _run(13, capsys)[0]


if __name__ == "__main__":
    results = [_run(k, None)[0] for k in range(1, len(CRITERIA) + 1)]
    print(f"{sum(results)}/{len(results)} criteria pass")
