"""Irreducible root systems and Chevalley structure constants.

Roots are integer vectors in the basis of simple roots.  Inner products go
through the symmetrized Cartan matrix ``gram[i, j] = (alpha_i, alpha_j)``,
scaled so that all entries are integers.  Simple roots follow the Bourbaki
labelling.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

SUPPORTED = {
    "A": "A_n, n >= 1",
    "B": "B_n, n >= 2",
    "C": "C_n, n >= 3 (C_2 is B_2)",
    "D": "D_n, n >= 4",
    "E": "E_6, E_7, E_8",
    "F": "F_4",
    "G": "G_2",
}

ROOT_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "G": lambda n: 12,
}


class UnsupportedRootSystem(ValueError):
    pass


class SignConsistencyError(RuntimeError):
    """Raised when structure constants violate a Jacobi-forced relation."""


def _check_supported(kind: str, n: int) -> None:
    ok = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 3,
        "D": n >= 4,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }.get(kind, False)
    if not ok:
        listing = "; ".join(SUPPORTED.values())
        raise UnsupportedRootSystem(f"unsupported root system {kind}{n}; supported: {listing}")


def parse_type(label: str) -> tuple[str, int]:
    """``'G2'`` -> ``('G', 2)``; validates support."""
    m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", str(label))
    if not m:
        raise UnsupportedRootSystem(
            f"cannot parse root system {label!r}; supported: " + "; ".join(SUPPORTED.values())
        )
    kind, n = m.group(1).upper(), int(m.group(2))
    _check_supported(kind, n)
    return kind, n


def _simple_gram(kind: str, n: int) -> np.ndarray:
    """Symmetrized Cartan matrix, integral, short roots of squared length 1 or 2."""
    G = np.zeros((n, n), dtype=np.int64)

    def chain(length):
        for i in range(length - 1):
            G[i, i + 1] = G[i + 1, i] = -1

    if kind in ("A", "D"):
        np.fill_diagonal(G, 2)
        chain(n)
        if kind == "D":
            G[n - 2, n - 1] = G[n - 1, n - 2] = 0
            G[n - 3, n - 1] = G[n - 1, n - 3] = -1
    elif kind == "E":
        np.fill_diagonal(G, 2)
        # Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4
        edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]
        for a, b in edges:
            if a <= n and b <= n:
                G[a - 1, b - 1] = G[b - 1, a - 1] = -1
    elif kind == "B":
        # alpha_i = e_i - e_{i+1}, alpha_n = e_n
        np.fill_diagonal(G, 2)
        chain(n)
        G[n - 1, n - 1] = 1
    elif kind == "C":
        # alpha_i = e_i - e_{i+1}, alpha_n = 2 e_n
        np.fill_diagonal(G, 2)
        chain(n)
        G[n - 1, n - 1] = 4
        G[n - 2, n - 1] = G[n - 1, n - 2] = -2
    elif kind == "F":
        # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        G[:] = [[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    elif kind == "G":
        # alpha_1 short, alpha_2 long
        G[:] = [[2, -3], [-3, 6]]
    return G


@dataclass(frozen=True, eq=False)
class RootSystem:
    kind: str
    rank: int
    gram: np.ndarray  # (alpha_i, alpha_j)
    roots: np.ndarray  # (N, rank) integer coordinates; positives first, by height
    index: dict = field(repr=False)

    @property
    def label(self) -> str:
        return f"{self.kind}{self.rank}"

    @property
    def num_roots(self) -> int:
        return len(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    def ip(self, a, b) -> int:
        return int(np.asarray(a) @ self.gram @ np.asarray(b))

    def norm(self, a) -> int:
        return self.ip(a, a)

    def root_index(self, a) -> int:
        key = tuple(int(c) for c in a)
        if key not in self.index:
            raise KeyError(f"{key} is not a root of {self.label}")
        return self.index[key]

    def is_root(self, a) -> bool:
        return tuple(int(c) for c in a) in self.index

    @property
    def positive(self) -> np.ndarray:
        return np.all(self.roots >= 0, axis=1)

    @property
    def heights(self) -> np.ndarray:
        return self.roots.sum(axis=1)

    @property
    def num_positive(self) -> int:
        return int(self.positive.sum())

    @property
    def lengths(self) -> np.ndarray:
        return np.einsum("ri,ij,rj->r", self.roots, self.gram, self.roots)

    @property
    def long(self) -> np.ndarray:
        """Boolean mask of long roots; all roots count as long in simply laced types."""
        lens = self.lengths
        return lens == lens.max()

    @property
    def highest_root(self) -> np.ndarray:
        return self.roots[int(np.argmax(self.heights))]

    @property
    def root_set(self) -> frozenset[int]:
        """``J = {i : (highest root, alpha_i) != 0}``, 1-based."""
        theta = self.highest_root
        return frozenset(i + 1 for i in range(self.rank) if int(theta @ self.gram[:, i]) != 0)

    def negative_index(self, i: int) -> int:
        return self.root_index(-self.roots[i])

    def coroot_coefficients(self, a) -> np.ndarray:
        """Integer ``c`` with ``a^vee = sum c_i alpha_i^vee``."""
        a = np.asarray(a)
        na = self.norm(a)
        out = []
        for i in range(self.rank):
            c = Fraction(int(a[i]) * int(self.gram[i, i]), na)
            assert c.denominator == 1
            out.append(int(c))
        return np.asarray(out, dtype=np.int64)

    def root_name(self, i: int) -> str:
        coords = self.roots[i]
        sign = "-" if np.all(coords <= 0) else ""
        return sign + "".join(str(abs(int(c))) for c in coords)


def _reflect(beta: np.ndarray, alpha: np.ndarray, gram: np.ndarray) -> np.ndarray:
    num = 2 * int(beta @ gram @ alpha)
    den = int(alpha @ gram @ alpha)
    assert num % den == 0
    return beta - (num // den) * alpha


def root_system(kind: str, n: int | None = None) -> RootSystem:
    """Build ``kind_n`` by closing the simple roots under simple reflections."""
    if n is None:
        kind, n = parse_type(kind)
    else:
        kind = kind.upper()
        _check_supported(kind, n)
    gram = _simple_gram(kind, n)
    simple = [np.eye(n, dtype=np.int64)[i] for i in range(n)]
    seen = {tuple(s) for s in simple}
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for a in simple:
                r = _reflect(beta, a, gram)
                key = tuple(int(c) for c in r)
                if key not in seen:
                    seen.add(key)
                    nxt.append(r)
        frontier = nxt
    roots = np.array(sorted(seen), dtype=np.int64)
    pos = roots[np.all(roots >= 0, axis=1)]
    # positive roots by (height, lexicographic); negatives mirror that order
    pos = np.array(sorted(pos.tolist(), key=lambda r: (sum(r), r)), dtype=np.int64)
    ordered = np.vstack([pos, -pos])
    index = {tuple(int(c) for c in r): i for i, r in enumerate(ordered)}
    rs = RootSystem(kind, n, gram, ordered, index)
    expected = ROOT_COUNTS[kind](n)
    if len(ordered) != expected:
        raise RuntimeError(f"{rs.label}: found {len(ordered)} roots, expected {expected}")
    return rs


def cartan_pairing(rs: RootSystem, beta, alpha) -> int:
    """``<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha)``."""
    beta, alpha = np.asarray(beta), np.asarray(alpha)
    if not (rs.is_root(beta) and rs.is_root(alpha)):
        raise ValueError("cartan_pairing expects two roots")
    num, den = 2 * rs.ip(beta, alpha), rs.norm(alpha)
    assert num % den == 0
    return num // den


def root_string_p(rs: RootSystem, alpha, beta) -> int:
    """Largest ``p >= 0`` with ``beta - p*alpha`` a root."""
    alpha, beta = np.asarray(alpha), np.asarray(beta)
    if not (rs.is_root(alpha) and rs.is_root(beta)):
        raise ValueError("root_string_p expects two roots")
    if np.array_equal(alpha, beta) or np.array_equal(alpha, -beta):
        raise ValueError("root_string_p is undefined for beta = ±alpha")
    p = 0
    while rs.is_root(beta - (p + 1) * alpha):
        p += 1
    return p


@dataclass(frozen=True, eq=False)
class StructureTable:
    """``N[(i, j)]`` for root indices with ``roots[i] + roots[j]`` a root."""

    rs: RootSystem
    N: dict
    p: dict
    extraspecial: tuple

    def __getitem__(self, key) -> int:
        return self.N[key]


def structure_constants(rs: RootSystem) -> StructureTable:
    """Signed structure constants ``N_{a,b} = ±(p_{a,b} + 1)``.

    Signs are fixed positive on extraspecial pairs (for each non-simple positive
    root xi, the pair (a, xi - a) with a the first positive root in the height
    order for which xi - a is a root).  All other constants follow from the
    standard relations among the N:

      N_{a,b} = -N_{b,a};   N_{-a,-b} = -N_{a,b};
      N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)      when a+b+c = 0;
      N_{a,b}N_{c,d}/(a+b,a+b) + N_{b,c}N_{a,d}/(b+c,b+c)
          + N_{c,a}N_{b,d}/(c+a,c+a) = 0                   when a+b+c+d = 0.
    """
    R = rs.roots
    npos = rs.num_positive
    norms = rs.lengths
    idx = rs.index

    def key(v):
        return tuple(int(c) for c in v)

    def find(v):
        return idx.get(key(v))

    pos_N: dict[tuple[int, int], int] = {}
    p_of: dict[tuple[int, int], int] = {}

    def pval(i, j):
        if (i, j) not in p_of:
            p_of[(i, j)] = root_string_p(rs, R[i], R[j])
        return p_of[(i, j)]

    def N(i, j) -> Fraction:
        """Constant for any pair whose sum is a root, reduced to positive pairs."""
        a, b = R[i], R[j]
        if i < npos and j < npos:
            if (i, j) in pos_N:
                return Fraction(pos_N[(i, j)])
            return Fraction(-pos_N[(j, i)])
        if i >= npos and j >= npos:
            return -N(find(-a), find(-b))
        k = find(-(a + b))
        # cyclic triple (a, b, R[k]) with a+b+c = 0; pick a same-sign pair
        if i < npos:  # a positive, b negative
            if k < npos:  # (c, a) both positive
                return Fraction(int(norms[k]), int(norms[j])) * N(k, i)
            return Fraction(int(norms[k]), int(norms[i])) * N(j, k)
        # a negative, b positive
        if k < npos:  # (b, c) both positive
            return Fraction(int(norms[k]), int(norms[i])) * N(j, k)
        return Fraction(int(norms[k]), int(norms[j])) * N(k, i)

    extraspecial = []
    by_height = sorted(range(npos), key=lambda i: (int(R[i].sum()), R[i].tolist()))
    for xi in by_height:
        pairs = []
        for a in range(npos):
            b = find(R[xi] - R[a])
            if b is not None and b < npos and a < b:
                pairs.append((a, b))
        if not pairs:
            continue
        # order on positive roots is the index order (height, then lexicographic)
        pairs.sort()
        a0, b0 = pairs[0]
        extraspecial.append((a0, b0))
        pos_N[(a0, b0)] = pval(a0, b0) + 1
        n_xi = int(norms[xi])
        Nab = Fraction(pos_N[(a0, b0)])
        for g, d in pairs[1:]:
            # four-root relation with (a0, b0, -g, -d)
            total = Fraction(0)
            mg, md = find(-R[g]), find(-R[d])
            s1 = R[b0] - R[g]
            if find(s1) is not None:
                total += N(b0, mg) * N(a0, md) / int(norms[find(s1)])
            s2 = R[a0] - R[g]
            if find(s2) is not None:
                total += N(mg, a0) * N(b0, md) / int(norms[find(s2)])
            val = n_xi * total / Nab
            if val.denominator != 1:
                raise SignConsistencyError(f"non-integral N for pair {(g, d)}: {val}")
            pos_N[(g, d)] = int(val)

    table: dict[tuple[int, int], int] = {}
    pvals: dict[tuple[int, int], int] = {}
    for i in range(len(R)):
        for j in range(len(R)):
            if i == j or find(R[i] + R[j]) is None:
                continue
            v = N(i, j)
            if v.denominator != 1:
                raise SignConsistencyError(f"non-integral N for {rs.root_name(i)}, {rs.root_name(j)}")
            v = int(v)
            pv = pval(i, j)
            if abs(v) != pv + 1:
                raise SignConsistencyError(
                    f"|N| = {abs(v)} but p + 1 = {pv + 1} for ({rs.root_name(i)}, {rs.root_name(j)})"
                )
            table[(i, j)] = v
            pvals[(i, j)] = pv
    for (i, j), v in table.items():
        if table[(j, i)] != -v:
            raise SignConsistencyError(f"antisymmetry fails at {(i, j)}")
    return StructureTable(rs, table, pvals, tuple(extraspecial))
