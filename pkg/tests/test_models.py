"""Matrix models of sl and so against the abstract Chevalley tables."""

import numpy as np
import pytest

from conftest import table
from extremal_lie.algebra import jacobi_violations
from extremal_lie.extremal import is_extremal
from extremal_lie.geometry import enumerate_points_orbit
from extremal_lie.models import (
    commutator, enumerate_flags, enumerate_isotropic_lines, find_rescaling, hyperbolic_form, point_to_flag,
    point_to_isotropic_line, random_siegel_pair, siegel, siegel_bracket_coefficient, siegel_coefficient_symmetric,
    sl_model, so_model,
)
from extremal_lie.scalars import parse_field, solve


def _structure_matches(A, M, s):
    """``s_i s_j c^M_ijk == s_k c^A_ijk`` on every basis triple."""
    F = A.field
    lhs = F.reduce(M.tensor * s[:, None, None] * s[None, :, None])
    rhs = F.reduce(A.tensor * s[None, None, :])
    return np.array_equal(lhs, rhs)


@pytest.mark.parametrize("n,f", [(1, 5), (2, 3), (2, 5), (3, 7)])
def test_sl_model_matches(n, f):
    A = table(f"A{n}", f)
    model = sl_model(n, f)
    assert jacobi_violations(model.table)[0] == 0
    assert _structure_matches(A, model.table, model.scaling)


@pytest.mark.parametrize("f", [3, 5, 7])
def test_so8_model_matches(f):
    A = table("D4", f)
    model = so_model(4, f)
    assert model.table.dim == 28
    assert jacobi_violations(model.table)[0] == 0
    assert _structure_matches(A, model.table, model.scaling)
    assert np.array_equal(find_rescaling(A, model.table), model.scaling)


def test_sl_product_rule():
    F = parse_field(5)
    E = lambda i, j: np.eye(3, dtype=np.int64)[:, [i]] @ np.eye(3, dtype=np.int64)[[j], :]
    assert np.array_equal(commutator(F, E(0, 1), E(1, 2)), E(0, 2))


def test_sl_extremal_examples():
    model = sl_model(3, 5)
    T = model.table
    F = T.field
    # e1 (x) phi2 is a root vector; e1 (x) phi2 + e3 (x) phi4 has rank 2
    i12 = next(i for i, m in enumerate(model.matrices) if m[0, 1] and np.count_nonzero(m) == 1)
    i34 = next(i for i, m in enumerate(model.matrices) if m[2, 3] and np.count_nonzero(m) == 1)
    assert is_extremal(T, T.basis(i12)).is_extremal
    assert not is_extremal(T, F.reduce(T.basis(i12) + T.basis(i34))).is_extremal


def test_extremality_transported(rng):
    A = table("A2", 5)
    model = sl_model(2, 5)
    F = A.field
    for _ in range(30):
        x = F.random(rng, A.dim)
        if not x.any():
            continue
        y = F.reduce(x * model.scaling)
        assert is_extremal(A, x).is_extremal == is_extremal(model.table, y).is_extremal


def test_so_skew_and_extremal():
    F = parse_field(7)
    B = hyperbolic_form(4)
    g = np.random.default_rng(2)
    model = so_model(4, 7)
    for _ in range(10):
        v, w = random_siegel_pair(F, B, g)
        S = siegel(F, B, v, w)
        # b(s x, y) = -b(x, s y)
        assert not np.any(F.reduce((S.T @ B) + (B @ S)))
        coords = _coordinates(model, S)
        assert is_extremal(model.table, coords).is_extremal


def _coordinates(model, S):
    F = model.field
    basis = model.matrices.reshape(model.matrices.shape[0], -1).T
    c = solve(basis, S.reshape(-1), F)
    assert c is not None
    return F.reduce(np.asarray(c, dtype=np.int64))


def test_siegel_identity_corrected():
    F = parse_field(7)
    B = hyperbolic_form(4)
    g = np.random.default_rng(8)
    for _ in range(100):
        v, w = random_siegel_pair(F, B, g)
        x, y = g.integers(0, 7, 8), g.integers(0, 7, 8)
        S, T = siegel(F, B, v, w), siegel(F, B, x, y)
        lhs = commutator(F, S, commutator(F, S, T))
        assert np.array_equal(lhs, F.reduce(S * siegel_bracket_coefficient(F, B, v, w, x, y)))


def test_siegel_symmetric_candidate_is_wrong():
    # the symmetric candidate does not change under x <-> y while s_{x,y} changes sign
    F = parse_field(7)
    B = hyperbolic_form(4)
    g = np.random.default_rng(9)
    v, w = random_siegel_pair(F, B, g)
    x, y = g.integers(0, 7, 8), g.integers(0, 7, 8)
    assert siegel_coefficient_symmetric(F, B, v, w, x, y) == siegel_coefficient_symmetric(F, B, v, w, y, x)
    assert siegel_bracket_coefficient(F, B, v, w, x, y) == F.canon(-siegel_bracket_coefficient(F, B, v, w, y, x))


def test_flag_bijection_sl3_f3():
    A = table("A2", 3)
    model = sl_model(2, 3)
    P = enumerate_points_orbit(A)
    flags = {point_to_flag(model, model.table.field.reduce(x * model.scaling)) for x in P.X}
    expected = enumerate_flags(2, 3)
    assert len(P) == len(flags) == len(expected) == 52
    assert flags == expected


def test_isotropic_line_counts():
    assert len(enumerate_isotropic_lines(3, 7, "B")) == len(enumerate_points_orbit(table("B3", 3))) == 3640


@pytest.mark.slow
def test_isotropic_line_bijection_so8_f3():
    A = table("D4", 3)
    model = so_model(4, 3)
    P = enumerate_points_orbit(A)
    F = A.field
    images = {point_to_isotropic_line(model, F.reduce(x * model.scaling)) for x in P.X}
    expected = enumerate_isotropic_lines(3, 8, "D")
    assert len(P) == len(images) == len(expected) == 36400
    assert images == expected
