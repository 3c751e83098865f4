"""Structure-constant Lie algebras and the Chevalley construction.

A :class:`BracketTable` stores the nonzero products of basis vectors as
coordinate triplets ``[e_i, e_j] = sum_k c_ijk e_k``.  Elements are plain
coefficient vectors (numpy arrays over the table's field).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import factorial

import numpy as np

from .roots import RootSystem, StructureTable, root_system, structure_constants
from .scalars import Field, parse_field

DENSE_LIMIT = 160


@dataclass(eq=False)
class BracketTable:
    field: Field
    labels: tuple[str, ...]
    I: np.ndarray
    J: np.ndarray
    K: np.ndarray
    V: np.ndarray  # field elements
    rs: RootSystem | None = None
    coroots: np.ndarray | None = None  # (num_roots, rank) integer h_alpha expansion
    name: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"BracketTable({self.name or '?'} over {self.field}, dim={self.dim}, nnz={len(self.V)})"

    # -- element helpers ---------------------------------------------------

    def zero(self) -> np.ndarray:
        return self.field.zeros(self.dim)

    def basis(self, i: int) -> np.ndarray:
        v = self.zero()
        v[i] = self.field.canon(1)
        return v

    def x(self, root_index: int) -> np.ndarray:
        """Root vector ``x_alpha`` for the root with the given index."""
        return self.basis(root_index)

    def h(self, i: int) -> np.ndarray:
        return self.basis(self.num_roots + i)

    @property
    def num_roots(self) -> int:
        return 0 if self.rs is None else self.rs.num_roots

    def element(self, coeffs: dict) -> np.ndarray:
        """Build an element from ``{label or index: coefficient}``."""
        v = self.zero()
        lookup = {lab: i for i, lab in enumerate(self.labels)}
        for k, c in coeffs.items():
            i = lookup[k] if isinstance(k, str) else int(k)
            v[i] = self.field.canon(v[i] + self.field.canon(c))
        return v

    # -- dense views -------------------------------------------------------

    @cached_property
    def tensor(self) -> np.ndarray:
        """Dense ``C[i, j, k]``; only for modest dimensions."""
        d = self.dim
        if d > DENSE_LIMIT:
            raise MemoryError(f"dense structure tensor refused for dim {d}")
        C = self.field.zeros((d, d, d))
        C[self.I, self.J, self.K] = self.V
        return C

    @cached_property
    def ad_basis(self) -> np.ndarray:
        """``ad_basis[i]`` is the matrix of ``ad(e_i)`` (column j = [e_i, e_j])."""
        return np.ascontiguousarray(np.transpose(self.tensor, (0, 2, 1)))

    def ad_matrix(self, x) -> np.ndarray:
        """Matrix of ``ad x``: column ``j`` holds ``[x, e_j]``."""
        F = self.field
        x = np.asarray(x)
        if x.shape != (self.dim,):
            raise ValueError(f"expected a vector of length {self.dim}")
        if F.p and self.dim <= DENSE_LIMIT:
            return F.reduce(np.tensordot(x, self.ad_basis, axes=(0, 0)))
        # sparse path: touches only the stored structure constants
        M = F.zeros((self.dim, self.dim))
        nz = x[self.I] != 0
        np.add.at(M, (self.K[nz], self.J[nz]), x[self.I[nz]] * self.V[nz])
        return F.reduce(M)

    def bracket(self, u, v) -> np.ndarray:
        u, v = np.asarray(u), np.asarray(v)
        if u.shape != (self.dim,) or v.shape != (self.dim,):
            raise ValueError(f"dimension mismatch: algebra has dim {self.dim}")
        return self.field.reduce(self.ad_matrix(u) @ v)

    def brackets(self, U, V) -> np.ndarray:
        """Row-wise brackets ``[U[r], V[r]]`` for stacks of elements."""
        F = self.field
        if F.p:
            return F.reduce(np.einsum("ri,rj,ijk->rk", U, V, self.tensor, optimize=True))
        U, V = np.atleast_2d(U), np.atleast_2d(V)
        out = F.zeros((U.shape[0], self.dim))
        for r in range(U.shape[0]):
            w = U[r, self.I] * V[r, self.J]
            nz = w != 0
            np.add.at(out[r], self.K[nz], w[nz] * self.V[nz])
        return out

    # -- transforms ----------------------------------------------------------

    def scaled(self, lam) -> "BracketTable":
        """The algebra with product ``lam * [.,.]``."""
        F = self.field
        lam = F.canon(lam)
        if lam == 0:
            raise ValueError("scaling by 0 does not give a Lie product")
        V = F.reduce(self.V * lam)
        keep = V != 0
        return BracketTable(
            F, self.labels, self.I[keep], self.J[keep], self.K[keep], V[keep],
            self.rs, self.coroots, f"{self.name}*{lam}", self._plain_meta(),
        )

    def with_entry(self, i: int, j: int, k: int, value) -> "BracketTable":
        """Copy with ``c_ijk = value`` and ``c_jik = -value`` (used to tamper tables)."""
        F = self.field
        C = {(a, b, c): v for a, b, c, v in zip(self.I, self.J, self.K, self.V)}
        C[(i, j, k)] = F.canon(value)
        C[(j, i, k)] = F.canon(-F.canon(value))
        return table_from_dict(F, self.labels, C, self.rs, self.coroots, self.name + "~", self._plain_meta())

    def _plain_meta(self) -> dict:
        return {k: v for k, v in self.meta.items() if k != "_cache"}


def table_from_dict(F: Field, labels, entries: dict, rs=None, coroots=None, name="", meta=None) -> BracketTable:
    items = sorted((k, v) for k, v in entries.items() if v != 0)
    if items:
        I, J, K = (np.array(c, dtype=np.int64) for c in zip(*(k for k, _ in items)))
        V = F.asarray([v for _, v in items])
    else:
        I = J = K = np.zeros(0, dtype=np.int64)
        V = F.asarray(np.zeros(0, dtype=np.int64))
    return BracketTable(F, tuple(labels), I, J, K, V, rs, coroots, name, dict(meta or {}))


def table_from_tensor(F: Field, labels, C: np.ndarray, name="", meta=None) -> BracketTable:
    I, J, K = np.nonzero(C != 0)
    return BracketTable(F, tuple(labels), I.astype(np.int64), J.astype(np.int64), K.astype(np.int64),
                        F.asarray(C[I, J, K]), None, None, name, dict(meta or {}))


# ---------------------------------------------------------------------------
# Chevalley algebras


def chevalley_labels(rs: RootSystem) -> list[str]:
    return [f"x[{rs.root_name(i)}]" for i in range(rs.num_roots)] + [f"h{i + 1}" for i in range(rs.rank)]


def integral_entries(rs: RootSystem, st: StructureTable | None = None) -> dict:
    """Integer structure constants of the Chevalley basis.

    Basis order: ``x_alpha`` for every root (positive roots first), then
    ``h_1..h_n`` for the simple coroots.  ``h_{-alpha} = -h_alpha``.
    """
    st = st or structure_constants(rs)
    R = rs.roots
    nr, n = rs.num_roots, rs.rank
    entries: dict[tuple[int, int, int], int] = {}

    def put(i, j, k, v):
        if v:
            entries[(i, j, k)] = entries.get((i, j, k), 0) + v

    for (i, j), N in st.N.items():
        put(i, j, rs.index[tuple(int(c) for c in R[i] + R[j])], N)
    for i in range(nr):
        neg = rs.negative_index(i)
        cor = rs.coroot_coefficients(R[i])
        for t in range(n):
            put(i, neg, nr + t, int(cor[t]))
    for t in range(n):
        simple = np.eye(n, dtype=np.int64)[t]
        for j in range(nr):
            # <beta, alpha_t^vee>
            val = 2 * rs.ip(R[j], simple) // int(rs.gram[t, t])
            put(nr + t, j, j, val)
            put(j, nr + t, j, -val)
    return entries


def algebra_make(rs: RootSystem | str, F: Field | str | int) -> BracketTable:
    """The Chevalley Lie algebra of ``rs`` over ``F`` (dimension ``|roots| + rank``)."""
    if isinstance(rs, str):
        rs = root_system(rs)
    F = parse_field(F)
    entries = integral_entries(rs)
    reduced = {k: F.canon(v) for k, v in entries.items()}
    coroots = np.array([rs.coroot_coefficients(r) for r in rs.roots], dtype=np.int64)
    A = table_from_dict(F, chevalley_labels(rs), reduced, rs, coroots, f"{rs.label}/{F}")
    A.meta["type"] = rs.label
    return A


def long_root_indices(A: BracketTable) -> list[int]:
    return [int(i) for i in np.flatnonzero(A.rs.long)]


def short_root_indices(A: BracketTable) -> list[int]:
    return [int(i) for i in np.flatnonzero(~A.rs.long)]


def chevalley_exp(A: BracketTable, root: int, lam) -> np.ndarray:
    """Matrix of ``exp(lam ad x_root) = sum_k lam^k (ad x_root)^k / k!``.

    The divided powers are computed over the integers, where they are exact
    for a Chevalley basis, and reduced into the field afterwards.  For a long
    root this agrees with ``y -> y + lam[x,y] + lam^2 g_x(y) x``.
    """
    F = A.field
    terms = divided_powers(A, root)
    lam = F.canon(lam)
    M = F.zeros((A.dim, A.dim))
    coeff = F.canon(1)
    for term in terms:
        M = F.reduce(M + F.asarray(term) * coeff)
        coeff = F.canon(coeff * lam)
    return M


def divided_powers(A: BracketTable, root: int) -> list[np.ndarray]:
    """``[I, Z, Z^2/2, Z^3/6, ...]`` for the integer matrix ``Z = ad x_root``."""
    cache = A.meta.setdefault("_cache", {})
    key = ("_divpow", root)
    if key in cache:
        return cache[key]
    Z = integer_ad(A, root)
    d = A.dim
    terms = [np.eye(d, dtype=np.int64)]
    power = terms[0]
    for k in range(1, 6):
        power = power @ Z
        if not np.any(power):
            break
        if k > 4:
            raise RuntimeError("ad x_alpha is not nilpotent of order <= 4")
        if np.any(power % factorial(k)):
            raise RuntimeError("divided power is not integral")
        terms.append(power // factorial(k))
    cache[key] = terms
    return terms


def integer_ad(A: BracketTable, root: int) -> np.ndarray:
    """Integer matrix of ``ad x_root`` in the Chevalley basis."""
    cache = A.meta.setdefault("_cache", {})
    by_row = cache.get("_int_by_row")
    if by_row is None:
        by_row = {}
        for (i, j, k), v in integral_entries(A.rs).items():
            by_row.setdefault(i, []).append((j, k, v))
        cache["_int_by_row"] = by_row
    Z = np.zeros((A.dim, A.dim), dtype=np.int64)
    for j, k, v in by_row.get(root, ()):
        Z[k, j] += v
    return Z


def jacobi_violations(A: BracketTable, limit: int = 10) -> tuple[int, list]:
    """Count basis triples violating Jacobi or anticommutativity.

    Uses the dense tensor: ``J[a,b,c] = [[a,b],c] + [[b,c],a] + [[c,a],b]``.
    """
    F = A.field
    C = integer_tensor(A)
    if C is None:
        C = A.tensor
    else:
        F = _IntegerRing(F.p)
    d = A.dim
    witnesses = []
    anti = F.reduce(C + np.transpose(C, (1, 0, 2)))
    bad_anti = np.argwhere(np.any(anti != 0, axis=2))
    diag = np.argwhere(np.any(C[np.arange(d), np.arange(d)] != 0, axis=1))
    witnesses += [("anticommutativity", tuple(int(t) for t in w)) for w in bad_anti[:limit]]
    witnesses += [("alternating", (int(w[0]),)) for w in diag[:limit]]
    # T[a,b,c,k] = sum_m C[a,b,m] C[m,c,k]
    T = F.reduce(np.tensordot(C, C, axes=(2, 0)))
    Jac = F.reduce(T + np.transpose(T, (1, 2, 0, 3)) + np.transpose(T, (2, 0, 1, 3)))
    bad = np.argwhere(np.any(Jac != 0, axis=3))
    witnesses += [("jacobi", tuple(int(t) for t in w)) for w in bad[:limit]]
    return len(bad_anti) + len(diag) + len(bad), witnesses[:limit]


class _IntegerRing:
    """Exact integer arithmetic, reducing mod p only for prime fields."""

    def __init__(self, p):
        self.p = p

    def reduce(self, arr):
        return np.mod(arr, self.p) if self.p else arr


def integer_tensor(A: BracketTable) -> np.ndarray | None:
    """Dense int64 tensor when every structure constant is an integer."""
    if A.field.p:
        return A.tensor
    if not all(getattr(v, "denominator", 1) == 1 for v in A.V):
        return None
    C = np.zeros((A.dim,) * 3, dtype=np.int64)
    C[A.I, A.J, A.K] = [int(v) for v in A.V]
    return C
