"""The extremal form, its radical, the quotient algebra and simplicity tests."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import BracketTable, chevalley_exp, long_root_indices, table_from_dict
from .extremal import CharacteristicTwoError, certify
from .scalars import nullspace, rank, rref


class InconsistencyError(RuntimeError):
    """A check that should hold for every Chevalley algebra failed."""

    def __init__(self, message, witness=None):
        super().__init__(message if witness is None else f"{message} (witness {witness})")
        self.witness = witness


@dataclass(eq=False)
class GramForm:
    G: np.ndarray  # G[i, j] = g(e_i, e_j)
    radical: np.ndarray  # rows
    spanning: np.ndarray  # extremal elements used, as rows
    symmetric: bool
    associative_failures: int

    @property
    def radical_dim(self) -> int:
        return int(self.radical.shape[0])

    def __call__(self, u, v):
        return u @ self.G @ v


def long_root_candidates(A: BracketTable, signs=(1, -1)) -> np.ndarray:
    """Long root vectors followed by their images under root exponentials.

    The images ``exp(x_gamma, s) x_alpha`` (``alpha`` long, ``gamma`` any root)
    contain the three-term combinations used to rewrite short root vectors and
    the ``h_alpha`` as sums of long root elements.
    """
    F = A.field
    longs = long_root_indices(A)
    rows = [A.x(i) for i in longs]
    X = F.identity(A.dim)[longs]
    for gamma in range(A.num_roots):
        for s in signs:
            M = chevalley_exp(A, gamma, s)
            rows.extend(F.reduce(X @ M.T))
    return np.vstack(rows)


def independent_rows(X: np.ndarray, F) -> list[int]:
    """Indices of a maximal independent subset of rows, greedily in order."""
    if X.size == 0:
        return []
    return list(rref(np.asarray(X).T, F)[1])


def long_root_span_check(A: BracketTable) -> bool:
    """Do long root elements (and the exp-combinations above) span ``A``?"""
    if A.field.p == 2:
        raise CharacteristicTwoError("the spanning argument assumes characteristic != 2")
    return rank(long_root_candidates(A), A.field) == A.dim


def extremal_gram(A: BracketTable, elements: np.ndarray | None = None, check: bool = True) -> GramForm:
    """Assemble ``g(e_i, e_j)`` from certificates of spanning extremal elements.

    With ``S`` the matrix whose rows are spanning extremal ``s`` and ``Gx[s, j]
    = g_s(e_j)``, the basis Gram matrix is ``S^-1 Gx``.
    """
    F = A.field
    if F.p == 2:
        raise CharacteristicTwoError("the extremal form needs division by 2")
    X = long_root_candidates(A) if elements is None else np.asarray(elements)
    pick = independent_rows(X, F)
    if len(pick) < A.dim:
        raise InconsistencyError("extremal elements do not span the algebra", f"rank {len(pick)} < {A.dim}")
    S = X[pick]
    Gx = np.vstack([certify(A, s).g for s in S])
    # solve S G = Gx column by column through one augmented reduction
    R, piv = rref(np.hstack([S, Gx]), F)
    G = F.reduce(R[:, A.dim:])
    sym = not np.any(F.reduce(G - G.T) != 0)
    fails = associativity_failures(A, G) if check else 0
    if check and not sym:
        i, j = np.argwhere(F.reduce(G - G.T) != 0)[0]
        raise InconsistencyError("extremal form is not symmetric", (A.labels[i], A.labels[j]))
    if check and fails:
        raise InconsistencyError("extremal form is not associative", f"{fails} basis triples")
    return GramForm(G, nullspace(G, F), S, sym, fails)


def associativity_failures(A: BracketTable, G: np.ndarray) -> int:
    """Basis triples with ``g([a,b],c) != g(a,[b,c])``."""
    F = A.field
    C = A.tensor
    left = F.reduce(np.tensordot(C, G, axes=(2, 0)))  # [a,b,c]
    right = F.reduce(np.einsum("ak,bck->abc", G, C, optimize=True))
    return int(np.count_nonzero(F.reduce(left - right)))


def form_radical_quotient(A: BracketTable, gram: GramForm | None = None) -> tuple[np.ndarray, BracketTable]:
    """``rad(g)`` as rows, and the quotient algebra on the non-pivot basis vectors."""
    F = A.field
    gram = gram or extremal_gram(A)
    R = gram.radical
    d = A.dim
    if R.shape[0]:
        for i in range(d):
            images = A.brackets(np.tile(A.basis(i), (R.shape[0], 1)), R)
            bad = np.flatnonzero(np.any(F.reduce(images @ gram.G) != 0, axis=1))
            if bad.size:
                raise InconsistencyError("radical is not an ideal", (A.labels[i], int(bad[0])))
        R, piv = rref(R, F)
    else:
        piv = []
    keep = [c for c in range(d) if c not in set(piv)]
    entries = {}
    for a_pos, a in enumerate(keep):
        for b_pos, b in enumerate(keep):
            v = A.bracket(A.basis(a), A.basis(b))
            if R.shape[0]:
                v = F.reduce(v - v[piv] @ R)
            for c_pos, c in enumerate(keep):
                if v[c] != 0:
                    entries[(a_pos, b_pos, c_pos)] = v[c]
    labels = [A.labels[c] for c in keep]
    Q = table_from_dict(F, labels, entries, name=f"{A.name}/rad")
    Q.meta["quotient_of"] = A.name
    return R, Q


def ideal_closure(A: BracketTable, x) -> np.ndarray:
    """Reduced basis (rows) of the ideal generated by ``x``."""
    F = A.field
    S = rref(np.atleast_2d(F.asarray(x)), F)[0]
    adb = A.ad_basis
    while True:
        images = F.reduce(np.einsum("ijk,sk->isj", adb, S).reshape(-1, A.dim))
        T = rref(np.vstack([S, images]), F)[0]
        if T.shape[0] == S.shape[0]:
            return T
        S = T


def center(A: BracketTable) -> np.ndarray:
    F = A.field
    stacked = np.vstack(list(A.ad_basis))  # rows: [e_i, .] coordinates
    return nullspace(stacked, F)


def enveloping_dimension(A: BracketTable) -> int:
    """Dimension of the associative algebra generated by ``1`` and all ``ad e_i``."""
    F = A.field
    d = A.dim
    gens = np.stack([m for m in A.ad_basis if np.any(m != 0)])
    basis = F.identity(d).reshape(1, -1)
    frontier = basis
    while frontier.shape[0]:
        mats = frontier.reshape(-1, d, d)
        prods = F.reduce(np.einsum("gij,mjk->gmik", gens, mats, optimize=True)).reshape(-1, d * d)
        T = rref(np.vstack([basis, prods]), F)[0]
        if T.shape[0] == basis.shape[0] or T.shape[0] == d * d:
            return int(T.shape[0])
        basis, frontier = T, T
    return int(basis.shape[0])


def is_simple(A: BracketTable, burnside_limit: int = 40) -> bool:
    """Simplicity test.

    Necessary conditions: dimension > 1, nonzero bracket, trivial center,
    and every basis vector generating the whole algebra as an ideal.  These
    alone miss ideals avoiding all basis vectors, so the verdict is certified
    by Burnside's criterion: the ``ad e_i`` generate all of ``End(A)``, which
    makes the adjoint module (absolutely) irreducible.
    """
    d = A.dim
    if d <= 1 or len(A.V) == 0:
        return False
    if center(A).shape[0]:
        return False
    for i in range(d):
        if ideal_closure(A, A.basis(i)).shape[0] < d:
            return False
    if d > burnside_limit:
        raise ValueError(f"Burnside certificate refused above dimension {burnside_limit}")
    return enveloping_dimension(A) == d * d
