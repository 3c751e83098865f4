"""Exact arithmetic over the rationals and prime fields.

Vectors and matrices are numpy arrays.  Over a prime field they hold int64
residues in ``0..p-1``; over the rationals they are object arrays of
``fractions.Fraction``.  Every routine here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

# p*p*dim must stay far below 2**63 for int64 matmuls
MAX_PRIME = 1 << 20


def _smallest_factor(n: int) -> int:
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


@dataclass(frozen=True)
class Field:
    """The rationals (``p == 0``) or the prime field of order ``p``."""

    p: int
    _inv: tuple = dc_field(default=(), repr=False, compare=False)

    @property
    def kind(self) -> str:
        return "rationals" if self.p == 0 else "prime"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_finite(self) -> bool:
        return self.p > 0

    @property
    def order(self) -> int | None:
        return self.p if self.p else None

    def __str__(self) -> str:
        return "Q" if self.p == 0 else f"F{self.p}"

    # -- scalars ---------------------------------------------------------

    def canon(self, a) -> int | Fraction:
        if isinstance(a, np.ndarray):
            a = a.item()
        if self.p:
            if isinstance(a, Fraction):
                return (a.numerator * self.inv(a.denominator % self.p)) % self.p
            return int(a) % self.p
        return Fraction(a)

    def inv(self, a):
        if self.p:
            a = int(a) % self.p
            if a == 0:
                raise ZeroDivisionError(f"0 has no inverse in {self}")
            return self._inv[a]
        a = Fraction(a)
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in Q")
        return 1 / a

    def elements(self) -> list:
        if not self.p:
            raise ValueError("Q has infinitely many elements")
        return list(range(self.p))

    def units(self) -> list:
        return [a for a in self.elements() if a]

    # -- arrays ----------------------------------------------------------

    @property
    def dtype(self):
        return np.int64 if self.p else object

    def asarray(self, values) -> np.ndarray:
        """Canonical array of field elements."""
        if self.p:
            arr = np.asarray(values)
            if arr.dtype == object:
                arr = np.vectorize(self.canon, otypes=[np.int64])(arr) if arr.size else arr.astype(np.int64)
            return np.mod(arr.astype(np.int64), self.p)
        arr = np.asarray(values, dtype=object)
        if arr.size:
            arr = np.vectorize(Fraction, otypes=[object])(arr)
        return arr

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        """Bring the result of ring arithmetic back to canonical form."""
        if self.p:
            return np.mod(arr, self.p)
        return arr

    def matmul(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """Exact ``X @ Y``; over Q through integer numerators and one common denominator."""
        if self.p:
            return np.mod(X @ Y, self.p)
        nx, dx = _integerize(X)
        ny, dy = _integerize(Y)
        P = nx @ ny
        den = dx * dy
        out = np.empty(P.shape, dtype=object)
        flat, src = out.reshape(-1), P.reshape(-1)
        for i in range(src.size):
            flat[i] = Fraction(src[i], den)
        return out

    def zeros(self, shape) -> np.ndarray:
        if self.p:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.canon(1)
        return out

    def inv_array(self, arr: np.ndarray) -> np.ndarray:
        """Elementwise inverse of an array of nonzero elements."""
        if self.p:
            table = np.asarray(self._inv, dtype=np.int64)
            return table[arr]
        return np.vectorize(lambda a: 1 / Fraction(a), otypes=[object])(arr)

    def random(self, rng: np.random.Generator, shape, bound: int = 3) -> np.ndarray:
        """Random elements; over Q small fractions with numerators in [-bound, bound]."""
        if self.p:
            return rng.integers(0, self.p, size=shape, dtype=np.int64)
        num = rng.integers(-bound, bound + 1, size=shape)
        den = rng.integers(1, bound + 1, size=shape)
        out = np.empty(np.shape(num), dtype=object)
        for idx in np.ndindex(out.shape):
            out[idx] = Fraction(int(num[idx]), int(den[idx]))
        return out


def _integerize(X: np.ndarray) -> tuple[np.ndarray, int]:
    """Integer object array ``N`` and ``den`` with ``X = N / den``."""
    X = np.asarray(X, dtype=object)
    den = 1
    for v in X.flat:
        d = getattr(v, "denominator", 1)
        if d != 1:
            den = den * d // math.gcd(den, d)
    N = np.empty(X.shape, dtype=object)
    nflat, xflat = N.reshape(-1), X.reshape(-1)
    for i in range(xflat.size):
        v = xflat[i]
        nflat[i] = int(v * den) if den != 1 else int(v)
    return N, den


def field_make(kind: str = "prime", p: int = 0) -> Field:
    """Construct ``Q`` (``kind='rationals'``) or ``F_p`` (``kind='prime'``)."""
    if kind == "rationals":
        if p not in (0, None):
            raise ValueError("the rationals have characteristic 0")
        return Field(0)
    if kind != "prime":
        raise ValueError(f"unknown field kind {kind!r}; use 'rationals' or 'prime'")
    p = int(p)
    if p < 2:
        raise ValueError(f"{p} is not a prime")
    f = _smallest_factor(p)
    if f != p:
        raise ValueError(f"{p} is not prime: {p} = {f}·{p // f}")
    if p > MAX_PRIME:
        raise ValueError(f"primes above {MAX_PRIME} are not supported")
    inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]
    return Field(p, tuple(inv))


def parse_field(spec: str | int | Field) -> Field:
    """Accept ``'Q'``, ``'0'``, ``'5'``, ``'F5'``, ``'GF5'`` or an int."""
    if isinstance(spec, Field):
        return spec
    s = str(spec).strip().upper()
    if s in ("Q", "0", "QQ", "RATIONALS"):
        return field_make("rationals")
    for prefix in ("GF", "F"):
        if s.startswith(prefix):
            s = s[len(prefix):]
            break
    if not s.isdigit():
        raise ValueError(f"cannot parse field {spec!r}")
    return field_make("prime", int(s))


# ---------------------------------------------------------------------------
# linear algebra


def rref(M, F: Field) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns.

    Plain Gaussian elimination taking the first nonzero entry as pivot.
    """
    A = F.asarray(M).copy()
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c] != 0)
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = F.reduce(A[r] * F.inv(A[r, c]))
        others = np.flatnonzero(A[:, c] != 0)
        others = others[others != r]
        if others.size:
            A[others] = F.reduce(A[others] - np.outer(A[others, c], A[r]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M, F: Field) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, F)[1])


def mat_rank_nullspace(M, F: Field) -> tuple[int, list[np.ndarray]]:
    """Rank of ``M`` and a basis of ``{v : M v = 0}``."""
    M = np.asarray(M)
    if M.ndim != 2:
        raise ValueError("expected a matrix")
    cols = M.shape[1]
    if M.shape[0] == 0 or cols == 0:
        return 0, [F.asarray(row) for row in np.eye(cols, dtype=np.int64)]
    R, pivots = rref(M, F)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = F.zeros(cols)
        v[f] = F.canon(1)
        for i, pc in enumerate(pivots):
            v[pc] = F.canon(-R[i, f])
        basis.append(F.reduce(v))
    return len(pivots), basis


def nullspace(M, F: Field) -> np.ndarray:
    """Nullspace basis as the rows of a matrix (possibly with zero rows)."""
    M = np.asarray(M)
    _, basis = mat_rank_nullspace(M, F)
    if not basis:
        return F.zeros((0, M.shape[1]))
    return np.vstack(basis)


def solve(A, b, F: Field):
    """One solution ``x`` of ``A x = b``, or ``None`` when inconsistent."""
    A = F.asarray(A)
    b = F.asarray(b)
    n = A.shape[1]
    aug = np.hstack([A, b.reshape(-1, 1)])
    R, pivots = rref(aug, F)
    if n in pivots:
        return None
    x = F.zeros(n)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, n]
    return x


def row_space(M, F: Field) -> np.ndarray:
    """Reduced echelon basis of the row space (a canonical form)."""
    M = np.asarray(M)
    if M.size == 0:
        return F.zeros((0, M.shape[-1] if M.ndim == 2 else 0))
    return rref(M, F)[0]


def in_span(v, rows, F: Field) -> bool:
    rows = np.asarray(rows)
    if rows.size == 0:
        return not np.any(np.asarray(v) != 0)
    return rank(np.vstack([rows, np.asarray(v).reshape(1, -1)]), F) == rank(rows, F)


def intersect_subspaces(spaces: Sequence[np.ndarray], dim: int, F: Field) -> np.ndarray:
    """Intersection of row spaces, via the sum of their annihilators."""
    annihilators = []
    for S in spaces:
        S = np.asarray(S)
        if S.size == 0:
            return F.zeros((0, dim))
        annihilators.append(nullspace(S, F))
    stacked = [a for a in annihilators if a.size]
    if not stacked:
        return F.identity(dim)
    return nullspace(np.vstack(stacked), F)


def canon_vectors(X: np.ndarray, F: Field) -> np.ndarray:
    """Scale each nonzero row so that its first nonzero entry is 1."""
    X = np.atleast_2d(X)
    nz = X != 0
    if not np.all(nz.any(axis=1)):
        raise ValueError("cannot canonicalize the zero vector")
    lead = X[np.arange(X.shape[0]), nz.argmax(axis=1)]
    return F.reduce(X * F.inv_array(lead)[:, None])


def projective_points(dim: int, F: Field) -> Iterable[np.ndarray]:
    """Yield canonical representatives of all 1-spaces of ``F^dim`` in blocks.

    Each block holds the vectors whose leading 1 sits at a fixed coordinate.
    """
    if not F.is_finite:
        raise ValueError("projective point enumeration needs a finite field")
    q = F.p
    for lead in range(dim):
        tail = dim - lead - 1
        count = q ** tail
        block = np.zeros((count, dim), dtype=np.int64)
        block[:, lead] = 1
        if tail:
            idx = np.arange(count, dtype=np.int64)
            for j in range(tail):
                block[:, dim - 1 - j] = idx % q
                idx //= q
        yield block


def count_projective_points(dim: int, q: int) -> int:
    return (q ** dim - 1) // (q - 1)


def rows_key(X: np.ndarray) -> list[bytes]:
    """Hashable keys for the rows of an int64 array."""
    X = np.ascontiguousarray(X, dtype=np.int64)
    return [row.tobytes() for row in X]
