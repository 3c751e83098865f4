"""Extremal points, the extremal geometry and its axiom checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .algebra import BracketTable, chevalley_exp, long_root_indices
from .extremal import E_0, E_1, E_2, E_MINUS1, E_MINUS2, extremal_mask, is_extremal
from .scalars import (
    canon_vectors, count_projective_points, intersect_subspaces, projective_points, rank, row_space, rows_key,
)

E_NONCOMMUTING = 3  # char 2: [x,y] != 0 but E1/E2 cannot be separated
DEFAULT_BRUTE_BUDGET = 10 ** 7
DEFAULT_RANK_BUDGET = 10 ** 6


class BudgetError(RuntimeError):
    pass


@dataclass(eq=False)
class PointSet:
    """Canonical representatives (leading entry 1) of extremal 1-spaces."""

    X: np.ndarray
    method: str
    complete: bool
    sandwiches: np.ndarray | None = None
    index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.index:
            self.index = {k: i for i, k in enumerate(rows_key(self.X))}

    def __len__(self) -> int:
        return self.X.shape[0]

    def find(self, v) -> int | None:
        return self.index.get(np.ascontiguousarray(v, dtype=np.int64).tobytes())

    def same_as(self, other: "PointSet") -> bool:
        return set(self.index) == set(other.index)


def _require_finite(A: BracketTable):
    if not A.field.is_finite:
        raise BudgetError("point enumeration over Q is infinite; use a finite field")


def _sorted_points(X: np.ndarray) -> np.ndarray:
    if X.shape[0] == 0:
        return X
    order = np.lexsort(X.T[::-1])
    return X[order]


def _premet_filter(A: BracketTable, X: np.ndarray) -> np.ndarray:
    if A.field.p != 2 or X.shape[0] == 0:
        return np.ones(X.shape[0], dtype=bool)
    return np.array([is_extremal(A, x).is_extremal for x in X], dtype=bool)


def _split_sandwiches(A: BracketTable, X: np.ndarray, twice: np.ndarray) -> np.ndarray:
    """Mask of sandwich rows among extremal rows."""
    out = np.zeros(X.shape[0], dtype=bool)
    for r in np.flatnonzero(~np.any(twice != 0, axis=1)):
        out[r] = is_extremal(A, X[r]).is_sandwich
    return out


def enumerate_points_brute(A: BracketTable, budget: int = DEFAULT_BRUTE_BUDGET, pure: bool = True,
                           chunk: int = 8192) -> PointSet:
    """Test every 1-space of ``A``; feasible while ``(q^d - 1)/(q - 1) <= budget``.

    Sandwich points are extremal by definition but carry no lines or form; with
    ``pure`` they are set aside in ``PointSet.sandwiches``.
    """
    _require_finite(A)
    F = A.field
    total = count_projective_points(A.dim, F.p)
    if total > budget:
        raise BudgetError(f"{total} candidate 1-spaces exceed the budget {budget}; use the orbit method")
    found, twices = [], []
    for block in projective_points(A.dim, F):
        for s in range(0, block.shape[0], chunk):
            Xc = block[s:s + chunk]
            mask, twice = extremal_mask(A, Xc)
            if mask.any():
                found.append(Xc[mask])
                twices.append(twice[mask])
    X = np.vstack(found) if found else np.zeros((0, A.dim), dtype=np.int64)
    T = np.vstack(twices) if twices else X.copy()
    keep = _premet_filter(A, X)
    X, T = X[keep], T[keep]
    sw = _split_sandwiches(A, X, T)
    if pure:
        return PointSet(_sorted_points(X[~sw]), "brute", True, _sorted_points(X[sw]))
    return PointSet(_sorted_points(X), "brute", True, _sorted_points(X[sw]))


def root_exp_generators(A: BracketTable) -> list[np.ndarray]:
    """``exp(x_alpha, 1)`` for every root; over a prime field these generate all
    ``exp(x_alpha, lam)`` since ``exp(x_alpha, k) = exp(x_alpha, 1)^k``."""
    return [chevalley_exp(A, r, 1) for r in range(A.num_roots)]


def enumerate_points_orbit(A: BracketTable, seeds: np.ndarray | None = None, budget: int = 5 * 10 ** 6,
                           verify: bool = True) -> PointSet:
    """Closure of the seed points (default: long root points) under root exponentials."""
    _require_finite(A)
    F = A.field
    if seeds is None:
        seeds = F.identity(A.dim)[long_root_indices(A)]
    seeds = canon_vectors(np.asarray(seeds, dtype=np.int64), F)
    gens = [M.T.copy() for M in root_exp_generators(A)]
    index: dict[bytes, int] = {}
    rows: list[np.ndarray] = []
    for k, r in zip(rows_key(seeds), seeds):
        if k not in index:
            index[k] = len(rows)
            rows.append(r)
    frontier = np.array(rows)
    while frontier.shape[0]:
        fresh = []
        for Mt in gens:
            Y = canon_vectors(F.reduce(frontier @ Mt), F)
            for k, r in zip(rows_key(Y), Y):
                if k not in index:
                    index[k] = len(rows)
                    rows.append(r)
                    fresh.append(r)
            if len(rows) > budget:
                raise BudgetError(f"orbit exceeds {budget} points")
        frontier = np.array(fresh) if fresh else np.zeros((0, A.dim), dtype=np.int64)
    X = _sorted_points(np.array(rows))
    if verify:
        mask, _ = extremal_mask(A, X)
        mask &= _premet_filter(A, X)
        if not mask.all():
            bad = X[np.flatnonzero(~mask)[0]]
            raise RuntimeError(f"orbit point failed the extremality test: {bad.tolist()}")
    return PointSet(X, "orbit", False)


# ---------------------------------------------------------------------------
# geometry


@dataclass(eq=False)
class Geometry:
    points: PointSet
    lines: list[tuple[int, ...]]
    relations: np.ndarray  # int8, entries in {-2,-1,0,1,2,3}
    distances: np.ndarray  # -1 for unreachable
    components: np.ndarray  # component label of each point (collinearity graph)
    q: int
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def X(self) -> np.ndarray:
        return self.points.X

    def adjacency(self) -> np.ndarray:
        return self.relations == E_MINUS1

    def incidence(self) -> np.ndarray:
        inc = np.zeros((len(self.lines), self.n), dtype=np.int32)
        for r, line in enumerate(self.lines):
            inc[r, list(line)] = 1
        return inc

    def fingerprint(self) -> tuple:
        """Everything that defines the geometry, as plain bytes."""
        return (self.X.tobytes(), tuple(self.lines), self.relations.tobytes())


def pair_relations(A: BracketTable, P: PointSet) -> np.ndarray:
    """Relation matrix of the points, row by row."""
    F = A.field
    X = P.X
    n = X.shape[0]
    R = np.zeros((n, n), dtype=np.int8)
    if n == 0:
        return R
    _, twice = extremal_mask(A, X)
    gvals = F.reduce(twice @ X.T)  # 2 g_{x_i}(x_j)
    adb = A.ad_basis
    for i in range(n):
        ad = F.reduce(np.tensordot(X[i], adb, axes=(0, 0)))
        B = F.reduce(X @ ad.T)  # rows [x_i, x_j]
        commute = ~np.any(B != 0, axis=1)
        row = np.where(gvals[i] != 0, E_2, E_1 if F.p != 2 else E_NONCOMMUTING).astype(np.int8)
        idx = np.flatnonzero(commute)
        idx = idx[idx != i]
        if idx.size:
            S = F.reduce(X[idx] + X[i])
            nonzero = np.any(S != 0, axis=1)
            res = np.full(idx.size, E_0, dtype=np.int8)
            if nonzero.any():
                Sc = canon_vectors(S[nonzero], F)
                hits = np.array([P.find(s) is not None for s in Sc])
                if not P.complete or (P.sandwiches is not None and len(P.sandwiches)):
                    mask, _ = extremal_mask(A, Sc)
                    hits = hits | (mask & _premet_filter(A, Sc))
                sub = np.where(hits, E_MINUS1, E_0).astype(np.int8)
                res[np.flatnonzero(nonzero)] = sub
            row[idx] = res
        row[i] = E_MINUS2
        R[i] = row
    return R


def _line_through(F, P: PointSet, x, y) -> tuple[int, ...] | None:
    members = [P.find(y)]
    for lam in F.elements():
        members.append(P.find(canon_vectors(F.reduce(x + y * lam), F)[0]))
    if any(m is None for m in members):
        return None
    return tuple(sorted(set(members)))


def build_geometry(A: BracketTable, P: PointSet) -> Geometry:
    """Lines from collinear pairs, relation matrix and collinearity distances."""
    F = A.field
    R = pair_relations(A, P)
    if np.any(R != R.T):
        i, j = np.argwhere(R != R.T)[0]
        raise RuntimeError(f"relation matrix not symmetric at points {i}, {j}")
    lines: dict[tuple[int, ...], None] = {}
    covered = np.zeros_like(R, dtype=bool)
    for i, j in np.argwhere(np.triu(R == E_MINUS1, 1)):
        if covered[i, j]:
            continue
        line = _line_through(F, P, P.X[i], P.X[j])
        if line is None:
            raise RuntimeError(f"collinear pair ({i}, {j}) spans a line with a missing point")
        lines[line] = None
        idx = np.array(line)
        covered[np.ix_(idx, idx)] = True
    lines_list = sorted(lines)
    adj = csr_matrix((R == E_MINUS1).astype(np.int8))
    D = shortest_path(adj, unweighted=True, directed=False)
    D = np.where(np.isinf(D), -1, D).astype(np.int16)
    _, comp = connected_components(adj, directed=False)
    return Geometry(P, lines_list, R, D, comp, F.p, {"algebra": A.name})


def geometry_from_algebra(A: BracketTable, method: str = "orbit") -> Geometry:
    P = enumerate_points_brute(A) if method == "brute" else enumerate_points_orbit(A)
    return build_geometry(A, P)


# ---------------------------------------------------------------------------
# axioms


@dataclass
class AxiomReport:
    points: int
    lines: int
    sandwiches: int | None = None
    partial_linear: bool | None = None
    line_sizes_ok: bool | None = None
    lines_pairwise_collinear: bool | None = None
    diameter: int | None = None
    hyperplane_check: bool | None = None
    distance_correspondence: bool | None = None
    polarized: bool | None = None
    embedding_radical_dim: int | None = None
    radical_matches_form: bool | None = None
    rank: int | None = None
    rank_exhaustive: bool | None = None
    e2_components: int | None = None
    collinearity_components: int | None = None
    reduced: bool = False
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        flags = [self.partial_linear, self.line_sizes_ok, self.lines_pairwise_collinear, self.hyperplane_check,
                 self.distance_correspondence, self.polarized, self.radical_matches_form]
        return all(f is not False for f in flags)

    def as_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__ if k != "witnesses"}
        d["witnesses"] = {k: _jsonable(v) for k, v in self.witnesses.items()}
        return d


def _jsonable(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (list, tuple)):
        return [_jsonable(t) for t in v]
    return v


def e2_components(G: Geometry) -> int:
    adj = csr_matrix((G.relations == E_2).astype(np.int8))
    return int(connected_components(adj, directed=False)[0])


def _component_diameters(G: Geometry) -> np.ndarray:
    """Diameter of the collinearity component of each point."""
    diam = np.zeros(G.n, dtype=np.int16)
    for c in np.unique(G.components):
        idx = np.flatnonzero(G.components == c)
        diam[idx] = G.distances[np.ix_(idx, idx)].max()
    return diam


def check_partial_linear(G: Geometry):
    if not G.lines:
        return True, None
    inc = G.incidence()
    share = inc.T @ inc
    np.fill_diagonal(share, 0)
    bad = np.argwhere(share > 1)
    return (False, tuple(int(t) for t in bad[0])) if bad.size else (True, None)


def check_hyperplanes(G: Geometry, diam: np.ndarray):
    """``p-perp`` (distance below the diameter) meets each line in 1 point or contains it."""
    inc = G.incidence()
    line_comp = G.components[inc.argmax(axis=1)]
    for p in range(G.n):
        perp = (G.distances[p] >= 0) & (G.distances[p] < diam[p])
        counts = inc @ perp.astype(np.int32)
        own = line_comp == G.components[p]
        bad = np.flatnonzero(own & (counts != 1) & (counts != G.q + 1))
        if bad.size:
            return False, (p, int(bad[0]))
    return True, None


def check_distance_correspondence(A: BracketTable, G: Geometry):
    """d=1 <-> E-1, d=2 with >= 2 common neighbours <-> E0,
    d=2 with one common neighbour <[x,y]> <-> E1, d=3 <-> E2."""
    F = A.field
    adj = G.adjacency().astype(np.float64)
    common = np.rint(adj @ adj).astype(np.int64)
    D, R = G.distances, G.relations
    expected = np.full(R.shape, 99, dtype=np.int8)
    expected[D == 0] = E_MINUS2
    expected[D == 1] = E_MINUS1
    expected[(D == 2) & (common >= 2)] = E_0
    expected[(D == 2) & (common == 1)] = E_1
    expected[D == 3] = E_2
    bad = np.argwhere(expected != R)
    if bad.size:
        i, j = bad[0]
        return False, (int(i), int(j), int(R[i, j]), int(D[i, j]))
    adjb = G.adjacency()
    for i in range(G.n):
        js = np.flatnonzero(R[i] == E_1)
        for j in js[js > i]:
            k = int(np.flatnonzero(adjb[i] & adjb[j])[0])
            b = canon_vectors(A.bracket(G.X[i], G.X[j]), F)[0]
            if G.points.find(b) != k:
                return False, (i, int(j), "common neighbour is not <[x,y]>")
    return True, None


def perp_spans(A: BracketTable, G: Geometry) -> list[np.ndarray]:
    """Row-reduced spans of ``E_{<=1}(x)`` for every point."""
    F = A.field
    close = G.relations <= E_1
    return [row_space(G.X[close[p]], F) for p in range(G.n)]


def check_polarized(A: BracketTable, G: Geometry, spans=None):
    F = A.field
    spans = spans if spans is not None else perp_spans(A, G)
    whole = rank(G.X, F)
    for p, S in enumerate(spans):
        if S.shape[0] >= whole:
            return False, p
    return True, None


def embedding_radical(A: BracketTable, G: Geometry, spans=None) -> np.ndarray:
    spans = spans if spans is not None else perp_spans(A, G)
    return intersect_subspaces(spans, A.dim, A.field)


def _close_subspace(G: Geometry, S: frozenset, line_of: dict, adj: np.ndarray) -> frozenset | None:
    """Smallest set containing ``S`` closed under lines; None if not singular."""
    S = set(S)
    queue = list(itertools.combinations(sorted(S), 2))
    while queue:
        a, b = queue.pop()
        if not adj[a, b]:
            return None
        for c in line_of[(a, b)]:
            if c not in S:
                for s in S:
                    queue.append((min(s, c), max(s, c)))
                S.add(c)
    return frozenset(S)


def geometry_rank(A: BracketTable, G: Geometry, budget: int = DEFAULT_RANK_BUDGET) -> tuple[int, bool]:
    """Largest vector dimension of a singular subspace, by exhaustive search.

    Returns ``(rank, exhaustive)``; ``exhaustive`` is False once ``budget``
    extension steps were spent, in which case the rank is a lower bound.
    """
    F = A.field
    if G.n == 0:
        return 0, True
    if not G.lines:
        return 1, True
    adj = G.adjacency()
    line_of = {}
    for line in G.lines:
        for a, b in itertools.combinations(line, 2):
            line_of[(a, b)] = line
    seen: set[frozenset] = set()
    best = 2
    steps = 0
    stack = [frozenset(line) for line in G.lines]
    while stack:
        S = stack.pop()
        if S in seen:
            continue
        seen.add(S)
        best = max(best, rank(G.X[sorted(S)], F))
        members = np.array(sorted(S))
        cand = np.flatnonzero(adj[members].all(axis=0))
        for c in cand:
            steps += 1
            if steps > budget:
                return best, False
            T = _close_subspace(G, S | {int(c)}, line_of, adj)
            if T is not None and T not in seen:
                stack.append(T)
    return best, True


def axiom_report(G: Geometry, A: BracketTable, radical: np.ndarray | None = None,
                 rank_budget: int = DEFAULT_RANK_BUDGET, with_rank: bool = True) -> AxiomReport:
    rep = AxiomReport(points=G.n, lines=len(G.lines))
    if G.points.sandwiches is not None:
        rep.sandwiches = int(len(G.points.sandwiches))
    rep.e2_components = e2_components(G)
    rep.collinearity_components = int(len(np.unique(G.components))) if G.n else 0
    if not G.lines:
        rep.reduced = True
        rep.rank = 1 if G.n else 0
        rep.rank_exhaustive = True
        return rep
    sizes = {len(line) for line in G.lines}
    rep.line_sizes_ok = sizes == {G.q + 1}
    if not rep.line_sizes_ok:
        rep.witnesses["line_sizes"] = sorted(sizes)
    rep.lines_pairwise_collinear = all(
        G.relations[a, b] == E_MINUS1 for line in G.lines for a, b in itertools.combinations(line, 2))
    rep.partial_linear, w = check_partial_linear(G)
    if w:
        rep.witnesses["partial_linear"] = w
    diam = _component_diameters(G)
    rep.diameter = int(diam.max())
    rep.hyperplane_check, w = check_hyperplanes(G, diam)
    if w:
        rep.witnesses["hyperplane"] = w
    if A.field.p != 2:
        rep.distance_correspondence, w = check_distance_correspondence(A, G)
        if w:
            rep.witnesses["distance_correspondence"] = w
    spans = perp_spans(A, G)
    rep.polarized, w = check_polarized(A, G, spans)
    if w is not None:
        rep.witnesses["polarized"] = w
    Rad = embedding_radical(A, G, spans)
    rep.embedding_radical_dim = int(Rad.shape[0])
    if radical is not None:
        F = A.field
        same = Rad.shape[0] == radical.shape[0] and (
            Rad.shape[0] == 0 or rank(np.vstack([Rad, radical]), F) == Rad.shape[0])
        rep.radical_matches_form = bool(same)
    if with_rank:
        rep.rank, rep.rank_exhaustive = geometry_rank(A, G, rank_budget)
    return rep


# ---------------------------------------------------------------------------
# connectedness of the long root points in the E2 graph


def long_root_connectivity(A: BracketTable) -> tuple[int, dict]:
    """Number of (E, E2)-components meeting the long root points.

    Vertices: long root points and their images ``exp(x_gamma, +-1) x_alpha``.
    An edge joins ``u`` to a long root vector ``x_beta`` when
    ``g_{x_beta}(u) != 0``.  Only these edges are used, so one component here
    implies one component in the full graph.
    """
    F = A.field
    if F.p == 2:
        raise ValueError("E2 adjacency needs the extremal form (characteristic != 2)")
    longs = long_root_indices(A)
    Xl = F.identity(A.dim)[longs]
    gl = np.vstack([is_extremal(A, x).g for x in Xl])  # g_{x_beta} on the basis
    verts = [Xl]
    for gamma in range(A.num_roots):
        for s in (1, -1):
            verts.append(F.reduce(Xl @ chevalley_exp(A, gamma, s).T))
    V = np.vstack(verts)
    keys = rows_key(canon_vectors(V, F))
    uniq = {}
    for k in keys:
        uniq.setdefault(k, len(uniq))
    vid = np.array([uniq[k] for k in keys])
    W = F.reduce(V @ gl.T)  # W[v, b] = g(x_b, v)
    rows, cols = np.nonzero(W)
    m = len(uniq)
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (vid[rows], vid[cols])), shape=(m, m))
    _, label = connected_components(graph, directed=False)
    root_labels = set(label[vid[:len(longs)]].tolist())
    return len(root_labels), {"vertices": m, "edges": int(len(rows)), "long_roots": len(longs)}
