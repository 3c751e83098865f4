"""Recover the scalar relating two Lie products with the same extremal geometry."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .algebra import BracketTable
from .extremal import E_1, E_2, E_MINUS1, extremal_mask
from .geometry import PointSet, pair_relations
from .form import long_root_candidates
from .scalars import canon_vectors, rank, rows_key, solve


@dataclass
class RatioResult:
    ok: bool
    lam: object = None
    seed: tuple | None = None
    pairs: int = 0
    propagated: int = 0
    direct: int = 0
    witness: dict | None = None
    notes: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


class RatioError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def default_points(A: BracketTable) -> PointSet:
    """Long root points and their images under single root exponentials."""
    F = A.field
    X = canon_vectors(long_root_candidates(A), F)
    seen, rows = set(), []
    for k, r in zip(rows_key(X), X):
        if k not in seen:
            seen.add(k)
            rows.append(r)
    return PointSet(np.array(rows), "long-root-radius-1", False)


def _pair_brackets(A: BracketTable, X: np.ndarray) -> np.ndarray:
    F = A.field
    C = A.tensor
    T = F.reduce(np.tensordot(X, C, axes=(1, 0)))  # [i, j', k]
    return F.reduce(np.einsum("jb,ibk->ijk", X, T, optimize=True))


def _ratio(F, u, v):
    """``lam`` with ``v = lam * u``, or None."""
    k = int(np.flatnonzero(u)[0])
    lam = F.canon(v[k] * F.inv(u[k]))
    return lam if not np.any(F.reduce(v - u * lam) != 0) else None


def _seed_scalar(A1, A2, x, y):
    """Write ``[x,y]_2 = a x + b y + c [x,y]_1``; the sl2 argument forces a = b = 0."""
    F = A1.field
    u = A1.bracket(x, y)
    v = A2.bracket(x, y)
    coeffs = solve(np.vstack([x, y, u]).T, v, F)
    if coeffs is None:
        raise RatioError("seed brackets are not proportional: [x,y]_2 leaves <x, y, [x,y]_1>",
                         {"x": x.tolist(), "y": y.tolist()})
    a, b, c = (F.canon(t) for t in coeffs)
    if a != 0 or b != 0 or c == 0:
        raise RatioError("seed brackets are not proportional",
                         {"x": x.tolist(), "y": y.tolist(), "coefficients": [int(a), int(b), int(c)]})
    return c


def product_ratio(A1: BracketTable, A2: BracketTable, points: PointSet | None = None) -> RatioResult:
    """Find ``lam`` with ``[.,.]_2 = lam [.,.]_1`` by propagation over extremal pairs.

    The ratio is seeded on the first E2 pair, then carried along
    ``(x,y) -> (y,x)`` and ``(x,y1) -> (x,y2)`` for collinear ``y1, y2``
    (both noncommuting with ``x``).  Every pair ratio is compared with the
    seed; the first disagreement is returned as a witness.
    """
    F = A1.field
    if A2.field != F or A2.dim != A1.dim:
        raise ValueError("the two products must live on the same space over the same field")
    P = points or default_points(A1)
    X = P.X
    n = X.shape[0]
    for name, A in (("first", A1), ("second", A2)):
        mask, _ = extremal_mask(A, X)
        if not mask.all():
            i = int(np.flatnonzero(~mask)[0])
            return RatioResult(False, witness={"reason": f"point not extremal for the {name} product",
                                               "point": X[i].tolist()})
    R1 = pair_relations(A1, P)
    R2 = pair_relations(A2, P)
    if np.any(R1 != R2):
        i, j = (int(t) for t in np.argwhere(R1 != R2)[0])
        return RatioResult(False, witness={"reason": "pair relations differ", "pair": (i, j),
                                           "relations": (int(R1[i, j]), int(R2[i, j])),
                                           "x": X[i].tolist(), "y": X[j].tolist()})
    seeds = np.argwhere(R1 == E_2)
    if seeds.size == 0:
        raise RatioError("no E2 pair among the points")
    si, sj = (int(t) for t in seeds[0])
    try:
        lam = _seed_scalar(A1, A2, X[si], X[sj])
    except RatioError as err:
        return RatioResult(False, seed=(si, sj), witness={"reason": str(err), **(err.witness or {})})

    B1 = _pair_brackets(A1, X)
    B2 = _pair_brackets(A2, X)
    live = (R1 == E_1) | (R1 == E_2)
    # pairs that commute must commute for both products
    dead_bad = np.argwhere(~live & np.any(B2 != 0, axis=2))
    if dead_bad.size:
        i, j = (int(t) for t in dead_bad[0])
        return RatioResult(False, lam, (si, sj), witness={"reason": "commuting pair with nonzero second bracket",
                                                          "pair": (i, j)})
    collinear = [np.flatnonzero(R1[k] == E_MINUS1) for k in range(n)]
    visited = np.zeros((n, n), dtype=bool)
    queue = deque([(si, sj)])
    visited[si, sj] = True
    propagated = 0
    while queue:
        i, j = queue.popleft()
        r = _ratio(F, B1[i, j], B2[i, j])
        if r != lam:
            return RatioResult(False, lam, (si, sj), int(live.sum()), propagated,
                               witness={"reason": "ratio differs from the seed" if r is not None
                                        else "brackets not proportional",
                                        "pair": (i, j), "ratio": None if r is None else int(r) if F.p else str(r),
                                        "x": X[i].tolist(), "y": X[j].tolist()})
        propagated += 1
        step = [(j, i)] + [(i, int(k)) for k in collinear[j]]
        for a, b in step:
            if live[a, b] and not visited[a, b]:
                visited[a, b] = True
                queue.append((a, b))
    direct = 0
    for i, j in np.argwhere(live & ~visited):
        direct += 1
        if _ratio(F, B1[i, j], B2[i, j]) != lam:
            return RatioResult(False, lam, (si, sj), int(live.sum()), propagated, direct,
                               witness={"reason": "unreached pair disagrees", "pair": (int(i), int(j))})
    res = RatioResult(True, lam, (si, sj), int(live.sum()), propagated, direct)
    if rank(X, F) < A1.dim:
        res.ok = False
        res.witness = {"reason": "points do not span the algebra", "rank": rank(X, F)}
        return res
    diff = F.reduce(A2.tensor - A1.tensor * lam)
    if np.any(diff != 0):
        a, b, c = (int(t) for t in np.argwhere(diff != 0)[0])
        res.ok = False
        res.witness = {"reason": "basis bracket disagrees", "basis": (A1.labels[a], A1.labels[b], A1.labels[c])}
    if direct:
        res.notes.append(f"{direct} pairs not reached by propagation were checked directly")
    return res
