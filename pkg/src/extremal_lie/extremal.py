"""Extremal elements: certificates, sandwiches, exp maps, pair relations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import BracketTable, chevalley_exp, long_root_indices
from .scalars import Field, rank, solve

E_MINUS2, E_MINUS1, E_0, E_1, E_2 = -2, -1, 0, 1, 2
RELATION_NAMES = {-2: "E-2", -1: "E-1", 0: "E0", 1: "E1", 2: "E2"}


class NotExtremalError(ValueError):
    pass


class CharacteristicTwoError(ValueError):
    """An operation needs to divide by 2."""


@dataclass(eq=False)
class ExtremalCertificate:
    """Outcome of the extremality test for ``x``.

    ``twice_g[j]`` is the coefficient of ``x`` in ``[x,[x,e_j]]``; ``g`` is the
    extremal form ``g_x`` on the basis (``None`` when not extremal).  In
    characteristic 2, ``g`` is a solution of the Premet identities.
    """

    x: np.ndarray
    is_extremal: bool
    g: np.ndarray | None
    twice_g: np.ndarray | None
    is_sandwich: bool
    premet_checked: bool
    witness: object = None
    field: Field | None = None

    @property
    def is_pure(self) -> bool:
        return self.is_extremal and not self.is_sandwich

    def form(self, y) -> object:
        if self.g is None:
            raise NotExtremalError("no extremal form: element is not extremal")
        v = np.asarray(y) @ self.g
        return self.field.canon(v) if self.field is not None else v


def _lead(x: np.ndarray) -> int:
    nz = np.flatnonzero(x != 0)
    if nz.size == 0:
        raise ValueError("the zero vector is not extremal")
    return int(nz[0])


def _premet_tensors(A: BracketTable, x, AD):
    """Left-hand sides of both Premet identities on all basis pairs (y, z)."""
    F = A.field
    C = A.tensor
    ADT = AD.T  # row y = [x, e_y]
    p1 = F.reduce(np.einsum("yi,zj,ijk->yzk", ADT, ADT, C, optimize=True))
    inner = F.reduce(np.einsum("zj,yjk->yzk", ADT, C, optimize=True))  # [e_y, [x, e_z]]
    p2 = F.reduce(np.einsum("yzk,mk->yzm", inner, AD, optimize=True))
    return p1, p2


def premet_residuals(A: BracketTable, x, g) -> tuple[int, int]:
    """Number of basis pairs failing each Premet identity for a given ``g_x``."""
    F = A.field
    x = np.asarray(x)
    AD = A.ad_matrix(x)
    ADT = AD.T
    C = A.tensor
    p1, p2 = _premet_tensors(A, x, AD)
    gyz = F.reduce(np.tensordot(C, g, axes=(2, 0)))
    common = gyz[:, :, None] * x[None, None, :]
    gz_xy = g[None, :, None] * ADT[:, None, :]
    gy_xz = g[:, None, None] * ADT[None, :, :]
    r1 = F.reduce(p1 - (common + gz_xy - gy_xz))
    r2 = F.reduce(p2 - (common - gz_xy - gy_xz))
    return int(np.any(r1 != 0, axis=2).sum()), int(np.any(r2 != 0, axis=2).sum())


def _solve_premet(A: BracketTable, x, AD):
    """Find ``g`` satisfying both Premet identities (linear in ``g``), or None."""
    F = A.field
    d = A.dim
    C = A.tensor
    ADT = AD.T
    p1, p2 = _premet_tensors(A, x, AD)
    eye = np.eye(d, dtype=np.int64) if F.p else np.eye(d, dtype=object)
    base = np.einsum("yzm,k->yzkm", C, x)
    zt = np.einsum("zm,yk->yzkm", eye, ADT)
    yt = np.einsum("ym,zk->yzkm", eye, ADT)
    M1 = F.reduce(base + zt - yt).reshape(d * d * d, d)
    M2 = F.reduce(base - zt - yt).reshape(d * d * d, d)
    rhs = np.concatenate([p1.reshape(-1), p2.reshape(-1)])
    M = np.vstack([M1, M2])
    keep = np.any(M != 0, axis=1) | (rhs != 0)
    return solve(M[keep], rhs[keep], F) if keep.any() else F.zeros(d)


def is_sandwich(A: BracketTable, x) -> bool:
    """``[x,[x,y]] = 0`` and ``[x,[y,[x,z]]] = 0`` for all basis ``y, z``."""
    F = A.field
    x = np.asarray(x)
    _lead(x)
    AD = A.ad_matrix(x)
    if np.any(F.reduce(AD @ AD) != 0):
        return False
    triple = F.reduce(np.einsum("ab,ybc,cd->yad", AD, A.ad_basis, AD, optimize=True))
    return not np.any(triple != 0)


def is_extremal(A: BracketTable, x, check_premet: bool = False) -> ExtremalCertificate:
    """Test ``[x,[x,e_j]] in F x`` for every basis vector and extract ``g_x``.

    In characteristic 2 the Premet identities are always imposed and ``g_x``
    is recovered by solving them.  Otherwise they follow from the first
    identity and are only verified when ``check_premet`` is set.
    """
    cert = _is_extremal(A, x, check_premet)
    cert.field = A.field
    return cert


def _is_extremal(A: BracketTable, x, check_premet: bool) -> ExtremalCertificate:
    F = A.field
    x = F.asarray(x)
    k = _lead(x)
    AD = A.ad_matrix(x)
    AD2 = F.matmul(AD, AD)
    coeff = F.reduce(AD2[k] * F.inv(x[k]))
    resid = F.reduce(AD2 - np.outer(x, coeff))
    bad = np.flatnonzero(np.any(resid != 0, axis=0))
    if bad.size:
        return ExtremalCertificate(x, False, None, None, False, False, int(bad[0]))
    if F.p == 2:
        if np.any(coeff != 0):
            return ExtremalCertificate(x, False, None, coeff, False, False, int(np.flatnonzero(coeff)[0]))
        g = _solve_premet(A, x, AD)
        if g is None:
            return ExtremalCertificate(x, False, None, coeff, False, True, "premet")
        sandwich = is_sandwich(A, x)
        if sandwich:
            g = F.zeros(A.dim)
        return ExtremalCertificate(x, True, g, coeff, sandwich, True)
    g = F.reduce(coeff * F.inv(2))
    sandwich = not np.any(g != 0) and is_sandwich(A, x)
    premet = False
    if check_premet:
        bad1, bad2 = premet_residuals(A, x, g)
        premet = True
        if bad1 or bad2:
            return ExtremalCertificate(x, False, g, coeff, sandwich, True, ("premet", bad1, bad2))
    return ExtremalCertificate(x, True, g, coeff, sandwich, premet)


def certify(A: BracketTable, x) -> ExtremalCertificate:
    cert = x if isinstance(x, ExtremalCertificate) else is_extremal(A, x)
    if not cert.is_extremal:
        raise NotExtremalError(f"element is not extremal (witness {cert.witness})")
    return cert


def extremal_mask(A: BracketTable, X: np.ndarray, chunk: int = 4096) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized first-identity test on canonical rows (leading entry 1).

    Returns ``(mask, twice_g)``.  In characteristic 2 the mask only records
    ``[x,[x,g]] = 0``; the Premet identities must be checked separately.
    """
    F = A.field
    X = np.asarray(X)
    n, d = X.shape
    mask = np.zeros(n, dtype=bool)
    twice = F.zeros((n, d))
    adb = A.ad_basis
    for s in range(0, n, chunk):
        Xc = X[s:s + chunk]
        AD = F.reduce(np.tensordot(Xc, adb, axes=(1, 0)))
        AD2 = F.reduce(np.matmul(AD, AD)) if F.p else np.stack([F.matmul(a, a) for a in AD])
        lead = (Xc != 0).argmax(axis=1)
        inv = F.inv_array(Xc[np.arange(len(Xc)), lead])
        c = F.reduce(AD2[np.arange(len(Xc)), lead, :] * inv[:, None])
        resid = F.reduce(AD2 - Xc[:, :, None] * c[:, None, :])
        ok = ~np.any(resid != 0, axis=(1, 2))
        if F.p == 2:
            ok &= ~np.any(c != 0, axis=1)
        mask[s:s + chunk] = ok
        twice[s:s + chunk] = c
    return mask, twice


# ---------------------------------------------------------------------------
# exp maps


def exp_map(A: BracketTable, x, lam) -> np.ndarray:
    """Matrix of ``y -> y + lam [x,y] + lam^2 g_x(y) x`` for extremal ``x``.

    ``x`` may be an :class:`ExtremalCertificate` to skip recertification.
    """
    cert = certify(A, x)
    F = A.field
    lam = F.canon(lam)
    AD = A.ad_matrix(cert.x)
    return F.reduce(F.identity(A.dim) + AD * lam + np.outer(cert.x, cert.g) * F.canon(lam * lam))


def automorphism_failures(A: BracketTable, M: np.ndarray, U: np.ndarray, V: np.ndarray) -> int:
    """Count rows with ``M[u,v] != [Mu, Mv]``."""
    F = A.field
    lhs = F.matmul(A.brackets(U, V), M.T)
    rhs = A.brackets(F.matmul(U, M.T), F.matmul(V, M.T))
    return int(np.any(F.reduce(lhs - rhs) != 0, axis=1).sum())


# ---------------------------------------------------------------------------
# pair relations


def proportional(x, y, F: Field) -> bool:
    return rank(np.vstack([x, y]), F) == 1


def classify_pair(A: BracketTable, x, y) -> int:
    """Relation of two extremal elements, one of -2, -1, 0, 1, 2.

    Commuting, non-proportional pairs are split by the single probe ``x + y``:
    the span of two commuting extremal elements is either entirely extremal or
    has extremal points only at ``x`` and ``y``.
    """
    cx, cy = certify(A, x), certify(A, y)
    F = A.field
    x, y = cx.x, cy.x
    if proportional(x, y, F):
        return E_MINUS2
    xy = A.bracket(x, y)
    if not np.any(xy != 0):
        s = F.reduce(x + y)
        return E_MINUS1 if is_extremal(A, s).is_extremal else E_0
    if F.p == 2:
        raise CharacteristicTwoError("E1/E2 separation needs g_x, unavailable in characteristic 2")
    return E_2 if cx.form(y) != 0 else E_1


def classify_pair_exhaustive(A: BracketTable, x, y) -> int:
    """Same as :func:`classify_pair` but sweeps all ``lam x + mu y`` (finite fields)."""
    F = A.field
    cx, cy = certify(A, x), certify(A, y)
    x, y = cx.x, cy.x
    if proportional(x, y, F):
        return E_MINUS2
    xy = A.bracket(x, y)
    if not np.any(xy != 0):
        for mu in F.units():
            if not is_extremal(A, F.reduce(x + y * mu)).is_extremal:
                return E_0
        return E_MINUS1
    if F.p == 2:
        raise CharacteristicTwoError("E1/E2 separation needs g_x, unavailable in characteristic 2")
    return E_2 if cx.form(y) != 0 else E_1


# ---------------------------------------------------------------------------
# sampling


def random_long_root_element(A: BracketTable, rng: np.random.Generator, steps: int = 4) -> np.ndarray:
    """A long root vector moved by ``steps`` random root exponentials."""
    F = A.field
    longs = long_root_indices(A)
    x = A.x(longs[int(rng.integers(len(longs)))])
    for _ in range(steps):
        gamma = int(rng.integers(A.num_roots))
        lam = int(rng.integers(1, F.p)) if F.p else int(rng.integers(-3, 4))
        x = F.reduce(chevalley_exp(A, gamma, lam) @ x)
    return x


def exp_group_law_failures(A: BracketTable, x, lam, mu) -> int:
    """Entries where ``exp(x,lam) exp(x,mu) != exp(x,lam+mu)``."""
    F = A.field
    cert = certify(A, x)
    lhs = F.matmul(exp_map(A, cert, lam), exp_map(A, cert, mu))
    rhs = exp_map(A, cert, F.canon(F.canon(lam) + F.canon(mu)))
    return int(np.count_nonzero(F.reduce(lhs - rhs)))
