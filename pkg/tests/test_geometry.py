"""Point enumeration, extremal geometry and its axioms."""

import itertools

import numpy as np
import pytest

from conftest import table
from extremal_lie.extremal import E_1, E_2, E_MINUS1, E_MINUS2, classify_pair
from extremal_lie.geometry import (
    BudgetError, axiom_report, build_geometry, e2_components, enumerate_points_brute, enumerate_points_orbit,
    long_root_connectivity,
)
from extremal_lie.scalars import canon_vectors


@pytest.fixture(scope="module")
def a2f3():
    A = table("A2", 3)
    P = enumerate_points_orbit(A)
    return A, P, build_geometry(A, P)


def test_a2f3_points_brute_vs_orbit(a2f3):
    A, P, _ = a2f3
    B = enumerate_points_brute(A)
    assert len(B) == len(P) == 52 == 13 * 4
    assert B.same_as(P)
    # the scalar matrix (center in characteristic 3) is a sandwich, kept apart
    assert len(B.sandwiches) == 1
    assert len(enumerate_points_brute(A, pure=False)) == 53


def test_a2f3_lines(a2f3):
    A, _, G = a2f3
    assert len(G.lines) == 26
    assert {len(line) for line in G.lines} == {4}
    per_point = G.incidence().sum(axis=0)
    assert set(per_point.tolist()) == {2}
    F = A.field
    for line in G.lines:
        for a, b in itertools.combinations(line, 2):
            for lam in F.elements():
                s = canon_vectors(F.reduce(G.X[a] + lam * G.X[b]), F)[0]
                assert G.points.find(s) in line


def test_a2f3_axioms(a2f3):
    A, _, G = a2f3
    from extremal_lie.form import extremal_gram

    rep = axiom_report(G, A, extremal_gram(A).radical)
    assert rep.passed
    assert rep.partial_linear and rep.hyperplane_check and rep.distance_correspondence and rep.polarized
    assert rep.diameter == 3
    assert rep.rank == 2 and rep.rank_exhaustive
    assert rep.e2_components == 1
    assert rep.embedding_radical_dim == 1 and rep.radical_matches_form


def test_relation_matrix(a2f3):
    A, _, G = a2f3
    R = G.relations
    assert np.array_equal(R, R.T)
    assert np.all(np.diag(R) == E_MINUS2)
    g = np.random.default_rng(5)
    for i, j in g.integers(0, G.n, (40, 2)):
        assert R[i, j] == classify_pair(A, G.X[i], G.X[j])
    assert (R == E_2).any() and (R == E_1).any()


def test_e1_common_neighbour_is_bracket(a2f3):
    A, _, G = a2f3
    adj = G.adjacency()
    i, j = (int(t) for t in np.argwhere(G.relations == E_1)[0])
    common = np.flatnonzero(adj[i] & adj[j])
    assert len(common) == 1
    b = canon_vectors(A.bracket(G.X[i], G.X[j]), A.field)[0]
    assert G.points.find(b) == int(common[0])


def test_a1_has_no_lines():
    A = table("A1", 3)
    P = enumerate_points_orbit(A)
    assert P.same_as(enumerate_points_brute(A))
    G = build_geometry(A, P)
    assert G.lines == []
    rep = axiom_report(G, A)
    assert rep.reduced and rep.passed
    seeds = enumerate_points_orbit(A, seeds=A.field.identity(A.dim)[:1])
    assert len(seeds) == len(P) == 4


def test_g2f3_hexagon():
    A = table("G2", 3)
    G = build_geometry(A, enumerate_points_orbit(A))
    assert len(G.points) == len(G.lines) == 364
    rep = axiom_report(G, A, with_rank=False)
    assert rep.passed and rep.diameter == 3


def test_a2f5_counts():
    A = table("A2", 5)
    G = build_geometry(A, enumerate_points_orbit(A))
    assert len(G.points) == 31 * 6
    assert len(G.lines) == 2 * 31


def test_rationals_refused():
    with pytest.raises(BudgetError):
        enumerate_points_brute(table("A2", "Q"))
    with pytest.raises(BudgetError):
        enumerate_points_orbit(table("A2", "Q"))


def test_brute_budget():
    with pytest.raises(BudgetError):
        enumerate_points_brute(table("G2", 3), budget=1000)


@pytest.mark.parametrize("lam", [2, 3, 4])
def test_scaling_invariance(lam):
    A = table("A2", 5)
    G1 = build_geometry(A, enumerate_points_orbit(A))
    As = A.scaled(lam)
    G2 = build_geometry(As, enumerate_points_orbit(As))
    assert G1.fingerprint() == G2.fingerprint()


@pytest.mark.parametrize("t", ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"])
@pytest.mark.parametrize("f", [3, 5])
def test_long_root_connectivity(t, f):
    comps, _ = long_root_connectivity(table(t, f))
    assert comps == 1


def test_e2_components_direct(a2f3):
    _, _, G = a2f3
    assert e2_components(G) == 1


def test_orbit_points_b3f3():
    # one point per totally singular line of the 7-dimensional orthogonal space
    assert len(enumerate_points_orbit(table("B3", 3))) == 3640
