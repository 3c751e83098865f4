"""Matrix models of sl(n+1) and so(2m), compared with the Chevalley tables.

Both models realise the Chevalley basis by explicit matrices.  The bracket is
the commutator, and structure constants are read off by solving for
coordinates in the chosen basis.  A diagonal rescaling then aligns the signs
with :func:`algebra_make`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import BracketTable, algebra_make, chevalley_labels, table_from_dict
from .roots import RootSystem, root_system
from .scalars import Field, parse_field, projective_points, rref, rows_key


class RescalingError(RuntimeError):
    pass


@dataclass(eq=False)
class MatrixModel:
    table: BracketTable
    matrices: np.ndarray  # (dim, N, N): basis element i as a matrix
    form: np.ndarray | None = None  # bilinear form for the orthogonal model
    scaling: np.ndarray | None = None  # s with model_i * s_i <-> chevalley e_i
    meta: dict = field(default_factory=dict)

    @property
    def field(self) -> Field:
        return self.table.field

    def to_matrix(self, x) -> np.ndarray:
        """Matrix of a model-coordinate vector."""
        F = self.field
        return F.reduce(np.tensordot(np.asarray(x), self.matrices, axes=(0, 0)))

    def from_chevalley(self, x) -> np.ndarray:
        """Matrix of a Chevalley-coordinate vector under the rescaled isomorphism."""
        F = self.field
        return self.to_matrix(F.reduce(np.asarray(x) * self.scaling))


def commutator(F: Field, X, Y) -> np.ndarray:
    return F.reduce(X @ Y - Y @ X)


def _structure_from_matrices(F: Field, mats: np.ndarray) -> dict:
    """``c_ijk`` with ``[M_i, M_j] = sum_k c_ijk M_k`` (the span must be closed)."""
    d, N, _ = mats.shape
    basis = mats.reshape(d, N * N)
    prods = F.reduce(np.einsum("iab,jbc->ijac", mats, mats) - np.einsum("jab,ibc->ijac", mats, mats))
    rhs = prods.reshape(d * d, N * N)
    R, piv = rref(np.hstack([basis.T, rhs.T]), F)
    if any(p >= d for p in piv):
        raise ValueError("matrix span is not closed under the commutator")
    coords = R[:d, d:]  # (k, i*d + j)
    entries = {}
    for k, ij in zip(*np.nonzero(coords)):
        i, j = divmod(int(ij), d)
        entries[(i, j, int(k))] = coords[k, ij]
    return entries


def _coroot_matrices(F: Field, rs: RootSystem, root_mats: list[np.ndarray]) -> list[np.ndarray]:
    """``h_i = [x_{alpha_i}, x_{-alpha_i}]`` for the simple roots."""
    out = []
    for t in range(rs.rank):
        e = np.zeros(rs.rank, dtype=np.int64)
        e[t] = 1
        i = rs.root_index(e)
        j = rs.root_index(-e)
        out.append(commutator(F, root_mats[i], root_mats[j]))
    return out


def _normalize_negatives(F: Field, rs: RootSystem, root_mats: list[np.ndarray]) -> list[str]:
    """Negate ``x_{-a}`` where needed so that ``[[x_a, x_{-a}], x_a] = 2 x_a``."""
    flipped = []
    for i in np.flatnonzero(rs.positive):
        j = rs.negative_index(i)
        X, Y = root_mats[i], root_mats[j]
        lhs = commutator(F, commutator(F, X, Y), X)
        if not np.any(F.reduce(lhs - 2 * X) != 0):
            continue
        if np.any(F.reduce(lhs + 2 * X) != 0):
            raise ValueError(f"x_a, x_-a do not span an sl2 triple for a = {rs.root_name(i)}")
        root_mats[j] = F.reduce(-Y)
        flipped.append(rs.root_name(j))
    return flipped


def _model(rs: RootSystem, F: Field, root_mats: list[np.ndarray], name: str, form=None) -> MatrixModel:
    root_mats = list(root_mats)
    flipped = _normalize_negatives(F, rs, root_mats)
    mats = np.stack(root_mats + _coroot_matrices(F, rs, root_mats))
    entries = _structure_from_matrices(F, mats)
    coroots = np.array([rs.coroot_coefficients(r) for r in rs.roots], dtype=np.int64)
    T = table_from_dict(F, chevalley_labels(rs), entries, rs, coroots, name)
    T.meta["type"] = rs.label
    return MatrixModel(T, mats, form, meta={"negated": flipped})


def _unit(F: Field, N: int, i: int, j: int) -> np.ndarray:
    M = F.zeros((N, N))
    M[i, j] = F.canon(1)
    return M


def sl_model(n: int, F) -> MatrixModel:
    """sl(n+1) with ``x_{e_i - e_j} = E_ij`` (0-based here) and ``h_i = E_ii - E_{i+1,i+1}``."""
    F = parse_field(F)
    rs = root_system("A", n)
    N = n + 1
    mats = []
    for r in rs.roots:
        support = np.flatnonzero(r)
        i, j = int(support[0]), int(support[-1]) + 1
        mats.append(_unit(F, N, i, j) if r[support[0]] > 0 else _unit(F, N, j, i))
    model = _model(rs, F, mats, f"sl{N}/{F}")
    model.scaling = find_rescaling(algebra_make(rs, F), model.table)
    return model


def hyperbolic_form(m: int) -> np.ndarray:
    """``b(e_{2k-1}, e_{2k}) = 1``, all other basis pairs 0 (1-based)."""
    B = np.zeros((2 * m, 2 * m), dtype=np.int64)
    for k in range(m):
        B[2 * k, 2 * k + 1] = B[2 * k + 1, 2 * k] = 1
    return B


def siegel(F: Field, B: np.ndarray, v, w) -> np.ndarray:
    """``s_{v,w} = v (x) b_w - w (x) b_v`` as a matrix acting on columns."""
    v, w = np.asarray(v), np.asarray(w)
    return F.reduce(np.outer(v, B @ w) - np.outer(w, B @ v))


def _eps_coordinates(rs: RootSystem) -> np.ndarray:
    """Roots of D_m in the orthonormal basis: a_i = e_i - e_{i+1}, a_m = e_{m-1} + e_m."""
    m = rs.rank
    S = np.zeros((m, m), dtype=np.int64)
    for t in range(m - 1):
        S[t, t], S[t, t + 1] = 1, -1
    S[m - 1, m - 2] = S[m - 1, m - 1] = 1
    if not np.array_equal(S @ S.T, rs.gram):
        raise RuntimeError("simple roots of D_m do not match the expected labelling")
    return rs.roots @ S


def so_model(m: int, F) -> MatrixModel:
    """so(2m) for the hyperbolic form, root vectors as Siegel elements.

    With 1-based ``e_1..e_{2m}`` and ``b(e_{2k-1}, e_{2k}) = 1``:
    ``x_{e_i - e_j} = s(e_{2i-1}, e_{2j})``, ``x_{e_i + e_j} = s(e_{2i-1}, e_{2j-1})``,
    ``x_{-e_i - e_j} = s(e_{2j}, e_{2i})`` for ``i < j``.  The last sign is the one
    making ``[[x_a, x_{-a}], x_a] = 2 x_a``; ``_normalize_negatives`` re-checks it.
    """
    F = parse_field(F)
    if F.p == 2:
        raise ValueError("the orthogonal model needs characteristic != 2")
    if m < 2:
        raise ValueError("so_model needs m >= 2")
    rs = root_system("D", m) if m >= 4 else None
    if rs is None:
        raise ValueError("D_m is supported for m >= 4")
    B = hyperbolic_form(m)
    I = np.eye(2 * m, dtype=np.int64)
    odd = lambda i: I[2 * i]  # e_{2i-1} for 0-based i
    even = lambda i: I[2 * i + 1]
    mats = []
    for eps in _eps_coordinates(rs):
        nz = np.flatnonzero(eps)
        i, j = int(nz[0]), int(nz[1])
        a, b = int(eps[i]), int(eps[j])
        if a == 1 and b == -1:
            v, w = odd(i), even(j)
        elif a == -1 and b == 1:
            v, w = odd(j), even(i)
        elif a == 1 and b == 1:
            v, w = odd(i), odd(j)
        else:
            v, w = even(j), even(i)
        mats.append(siegel(F, B, v, w))
    model = _model(rs, F, mats, f"so{2 * m}/{F}", form=B)
    model.scaling = find_rescaling(algebra_make(rs, F), model.table)
    return model


def find_rescaling(A: BracketTable, M: BracketTable) -> np.ndarray:
    """Diagonal ``s`` with ``e_i -> s_i m_i`` an isomorphism ``A -> M``.

    ``s_h = 1``; simple roots get 1; a positive root ``beta + alpha_t`` takes the
    value forced by ``[x_beta, x_{alpha_t}]``; ``s_{-alpha}`` is forced by the
    ``h`` components of ``[x_alpha, x_{-alpha}]``.  All structure constants are then
    compared: ``s_i s_j c^M_ijk = s_k c^A_ijk``.
    """
    F = A.field
    rs = A.rs
    d = A.dim
    CA, CM = A.tensor, M.tensor
    s = [None] * d
    for t in range(rs.rank):
        s[rs.num_roots + t] = F.canon(1)
    pos = np.flatnonzero(rs.positive)
    order = sorted(pos, key=lambda i: (rs.heights[i], i))
    for i in order:
        r = rs.roots[i]
        if rs.heights[i] == 1:
            s[i] = F.canon(1)
            continue
        for t in range(rs.rank):
            beta = r.copy()
            beta[t] -= 1
            if not rs.is_root(beta) or beta.sum() <= 0 or np.any(beta < 0):
                continue
            b = rs.root_index(beta)
            e = np.zeros(rs.rank, dtype=np.int64)
            e[t] = 1
            a = rs.root_index(e)
            cm, ca = CM[b, a, i], CA[b, a, i]
            if cm != 0 and ca != 0:
                s[i] = F.canon(s[b] * s[a] * cm * F.inv(ca))
                break
        if s[i] is None:
            raise RescalingError(f"no decomposition fixes the scale of root {rs.root_name(i)}")
    nr = rs.num_roots
    for i in pos:
        j = rs.negative_index(i)
        t = int(np.flatnonzero(CA[i, j, nr:])[0]) + nr
        if CM[i, j, t] == 0:
            raise RescalingError(f"[x_a, x_-a] has no {A.labels[t]} component for a = {rs.root_name(i)}")
        s[j] = F.canon(CA[i, j, t] * F.inv(s[i] * CM[i, j, t]))
    s = F.asarray(s)
    lhs = F.reduce(np.einsum("i,j,ijk->ijk", s, s, CM))
    rhs = F.reduce(CA * s[None, None, :])
    bad = np.argwhere(F.reduce(lhs - rhs) != 0)
    if bad.size:
        i, j, k = bad[0]
        raise RescalingError(
            f"no diagonal rescaling: mismatch at [{A.labels[i]}, {A.labels[j]}] -> {A.labels[k]}")
    return s


# ---------------------------------------------------------------------------
# flags and isotropic lines


def _canonical_space(F: Field, vectors) -> bytes:
    R = rref(np.atleast_2d(vectors), F)[0]
    return np.ascontiguousarray(R, dtype=np.int64).tobytes()


def point_to_flag(model: MatrixModel, X) -> tuple[bytes, bytes]:
    """Rank-one trace-zero ``v phi^T`` to the incident pair ``(<v>, ker phi)``."""
    F = model.field
    Mx = model.to_matrix(X)
    R = rref(Mx, F)[0]
    if R.shape[0] != 1:
        raise ValueError("not a pure tensor (rank != 1)")
    if F.canon(np.trace(Mx)) != 0:
        raise ValueError("pure tensor is not singular")
    col = rref(Mx.T, F)[0][0]
    return col.astype(np.int64).tobytes(), R[0].astype(np.int64).tobytes()


def enumerate_flags(n: int, F) -> set[tuple[bytes, bytes]]:
    """Incident (point, hyperplane) pairs of ``PG(n, q)``; hyperplanes as functionals."""
    F = parse_field(F)
    P = np.vstack(list(projective_points(n + 1, F)))
    inc = F.reduce(P @ P.T) == 0
    keys = rows_key(P)
    return {(keys[i], keys[j]) for i, j in zip(*np.nonzero(inc))}


def quadratic_value(F: Field, v, kind: str = "D") -> int:
    v = np.asarray(v)
    m = v.size // 2
    q = sum(int(v[2 * k]) * int(v[2 * k + 1]) for k in range(m))
    if kind == "B":
        q += int(v[-1]) ** 2
    return F.canon(q)


def point_to_isotropic_line(model: MatrixModel, X) -> bytes:
    """Siegel 1-space ``<s_{v,w}>`` to the totally singular 2-space ``<v, w>``."""
    F = model.field
    Mx = model.to_matrix(X)
    R = rref(Mx.T, F)[0]  # column space
    if R.shape[0] != 2:
        raise ValueError("not a Siegel element (rank != 2)")
    B = model.form
    if any(quadratic_value(F, r) for r in R) or F.canon(R[0] @ B @ R[1]) != 0:
        raise ValueError("image is not totally singular")
    return R.astype(np.int64).tobytes()


def singular_points(F: Field, dim: int, kind: str = "D") -> np.ndarray:
    P = np.vstack(list(projective_points(dim, F)))
    if kind == "D":
        vals = F.reduce((P[:, 0::2] * P[:, 1::2]).sum(axis=1))
    else:
        core = P[:, :-1]
        vals = F.reduce((core[:, 0::2] * core[:, 1::2]).sum(axis=1) + P[:, -1] ** 2)
    return P[vals == 0]


def orthogonal_gram(dim: int, kind: str = "D") -> np.ndarray:
    """Gram matrix of the polar form of ``x1x2 + x3x4 + ... (+ x_dim^2 for B)``."""
    m = dim // 2
    B = np.zeros((dim, dim), dtype=np.int64)
    for k in range(m):
        B[2 * k, 2 * k + 1] = B[2 * k + 1, 2 * k] = 1
    if kind == "B":
        B[-1, -1] = 2
    return B


def enumerate_isotropic_lines(F, dim: int, kind: str = "D") -> set[bytes]:
    """Totally singular 2-spaces of the orthogonal space, by pairing singular points."""
    F = parse_field(F)
    S = singular_points(F, dim, kind)
    B = orthogonal_gram(dim, kind)
    perp = F.reduce(S @ B @ S.T) == 0
    out = set()
    for i in range(S.shape[0]):
        for j in np.flatnonzero(perp[i, i + 1:]) + i + 1:
            out.add(_canonical_space(F, S[[i, j]]))
    return out


def siegel_bracket_coefficient(F: Field, B, v, w, x, y) -> int:
    """Coefficient ``c`` in ``[s_vw, [s_vw, s_xy]] = c s_vw`` (twice the extremal form)."""
    b = lambda a, c: F.canon(np.asarray(a) @ B @ np.asarray(c))
    return F.canon(2 * (b(v, x) * b(w, y) - b(v, y) * b(w, x)))


def siegel_coefficient_symmetric(F: Field, B, v, w, x, y) -> int:
    """``b(w,x)b(w,y) - b(v,x)b(v,y)``: symmetric in ``x, y``, so not the bracket coefficient in general."""
    b = lambda a, c: F.canon(np.asarray(a) @ B @ np.asarray(c))
    return F.canon(b(w, x) * b(w, y) - b(v, x) * b(v, y))


def random_siegel_pair(F: Field, B: np.ndarray, rng: np.random.Generator):
    """Random independent ``v, w`` spanning a totally singular 2-space."""
    n = B.shape[0]
    while True:
        v = rng.integers(0, F.p, n)
        w = rng.integers(0, F.p, n)
        if quadratic_value(F, v) or quadratic_value(F, w) or F.canon(v @ B @ w):
            continue
        if rref(np.vstack([v, w]), F)[0].shape[0] == 2:
            return v, w
