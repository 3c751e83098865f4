"""Extremal form, radical, quotient, simplicity and product-ratio recovery."""

import numpy as np
import pytest

from conftest import table
from extremal_lie.algebra import jacobi_violations, table_from_dict
from extremal_lie.extremal import CharacteristicTwoError, is_extremal
from extremal_lie.form import (
    associativity_failures, center, extremal_gram, form_radical_quotient, ideal_closure, is_simple,
    long_root_span_check,
)
from extremal_lie.ratio import product_ratio
from extremal_lie.scalars import parse_field, rank


@pytest.mark.parametrize("t,f,rad", [("A2", 3, 1), ("A2", 5, 0), ("G2", 3, 7), ("G2", 5, 0),
                                     ("B3", 5, 0), ("C3", 5, 0), ("A3", 3, 0)])
def test_radical_dimension(t, f, rad):
    assert extremal_gram(table(t, f)).radical_dim == rad


def test_form_refused_in_char_2():
    with pytest.raises(CharacteristicTwoError):
        extremal_gram(table("A3", 2))


@pytest.mark.parametrize("t", ["A2", "B3", "G2"])
def test_form_symmetric_associative(t):
    A = table(t, 5)
    gram = extremal_gram(A)
    assert gram.symmetric
    assert np.array_equal(gram.G, gram.G.T)
    assert associativity_failures(A, gram.G) == 0


def test_form_matches_certificates():
    A = table("G2", 7)
    gram = extremal_gram(A)
    for i in range(A.num_roots):
        cert = is_extremal(A, A.x(i))
        if cert.is_extremal:
            assert np.array_equal(A.field.reduce(gram.G[i]), A.field.reduce(cert.g))


@pytest.mark.parametrize("t,f,qdim", [("G2", 3, 7), ("A2", 3, 7)])
def test_quotient_simple(t, f, qdim):
    A = table(t, f)
    R, Q = form_radical_quotient(A)
    assert Q.dim == qdim
    assert jacobi_violations(Q)[0] == 0
    assert is_simple(Q)
    # the radical is an ideal
    F = A.field
    for r in R:
        for j in range(A.dim):
            assert rank(np.vstack([R, A.bracket(r, A.basis(j))]), F) == R.shape[0]


def test_quotient_trivial_when_radical_zero():
    A = table("A2", 5)
    R, Q = form_radical_quotient(A)
    assert R.shape[0] == 0 and Q.dim == A.dim


def test_simplicity_examples():
    assert not is_simple(table("A2", 3))  # scalars form the center
    assert center(table("A2", 3)).shape[0] == 1
    assert is_simple(table("A2", 5))
    assert is_simple(table("B3", 5))
    F = parse_field(5)
    one = table_from_dict(F, ["e"], {}, name="abelian")
    assert not is_simple(one)


def test_ideal_closure_of_root_vector_is_everything():
    A = table("G2", 5)
    assert ideal_closure(A, A.x(0)).shape[0] == A.dim


@pytest.mark.parametrize("t,f", [("B3", 5), ("C3", 5), ("G2", 5), ("F4", 5), ("A2", 3)])
def test_long_root_span(t, f):
    assert long_root_span_check(table(t, f))


# -- product ratio ------------------------------------------------------------


@pytest.mark.parametrize("t", ["A2", "B3"])
def test_product_ratio_recovers_scalar(t):
    A = table(t, 5)
    for lam in (1, 2, 3, 4):
        r = product_ratio(A, A.scaled(lam))
        assert r.ok and r.lam == lam, r.witness


def test_product_ratio_small_field():
    A = table("A2", 3)
    r = product_ratio(A, A.scaled(2))
    assert r.ok and r.lam == 2


def test_product_ratio_rejects_tampering():
    A = table("A2", 5)
    bad = A.with_entry(int(A.I[0]), int(A.J[0]), int(A.K[0]), int(A.V[0]) + 1)
    r = product_ratio(A, bad)
    assert not r.ok
    assert r.witness and "reason" in r.witness
