"""Versioned flat-file cache for Chevalley bracket tables.

Layout (one record per line)::

    CHEVCACHE v1
    type G2
    field F3
    dim 14
    labels x[10] x[01] ... h1 h2
    entries <count>
    i j k value            (one line per nonzero structure constant)
    coroots <count>
    r c_1 ... c_n          (integer expansion of h_alpha for root r)
    sha256 <hex digest of every line above>
"""

from __future__ import annotations

import hashlib
import logging
import os
from fractions import Fraction
from pathlib import Path

import numpy as np

from .algebra import BracketTable, algebra_make
from .roots import parse_type, root_system
from .scalars import parse_field

FORMAT_VERSION = 1
MAGIC = "CHEVCACHE"
ENV_VAR = "EXTREMAL_LIE_CACHE"

log = logging.getLogger(__name__)


class CacheError(RuntimeError):
    pass


class CacheVersionError(CacheError):
    pass


class CacheChecksumError(CacheError):
    pass


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else Path.home() / ".cache" / "extremal_lie"


def cache_path(directory, type_label: str, field_label: str) -> Path:
    return Path(directory) / f"{type_label}_{field_label}.chev"


def _fmt(v) -> str:
    return str(v) if not isinstance(v, Fraction) else f"{v.numerator}/{v.denominator}"


def dumps(A: BracketTable, version: int = FORMAT_VERSION) -> str:
    if A.rs is None:
        raise CacheError("only Chevalley tables (with a root system) are cached")
    lines = [
        f"{MAGIC} v{version}",
        f"type {A.rs.label}",
        f"field {A.field}",
        f"dim {A.dim}",
        "labels " + " ".join(A.labels),
        f"entries {len(A.V)}",
    ]
    lines += [f"{i} {j} {k} {_fmt(v)}" for i, j, k, v in zip(A.I, A.J, A.K, A.V)]
    lines.append(f"coroots {len(A.coroots)}")
    lines += [f"{r} " + " ".join(str(int(c)) for c in row) for r, row in enumerate(A.coroots)]
    body = "\n".join(lines) + "\n"
    return body + f"sha256 {hashlib.sha256(body.encode()).hexdigest()}\n"


def loads(text: str) -> BracketTable:
    lines = text.splitlines()
    if not lines or not lines[0].startswith(MAGIC):
        raise CacheError("not a bracket-table cache file")
    version = lines[0].split()[1]
    if version != f"v{FORMAT_VERSION}":
        raise CacheVersionError(f"cache format {version}, expected v{FORMAT_VERSION}")
    if not lines[-1].startswith("sha256 "):
        raise CacheChecksumError("checksum line missing")
    body = "\n".join(lines[:-1]) + "\n"
    if hashlib.sha256(body.encode()).hexdigest() != lines[-1].split()[1]:
        raise CacheChecksumError("checksum mismatch: cache file is corrupted")
    kind, n = parse_type(lines[1].split()[1])
    F = parse_field(lines[2].split()[1])
    dim = int(lines[3].split()[1])
    labels = tuple(lines[4].split()[1:])
    count = int(lines[5].split()[1])
    recs = [ln.split() for ln in lines[6:6 + count]]
    I = np.array([int(r[0]) for r in recs], dtype=np.int64)
    J = np.array([int(r[1]) for r in recs], dtype=np.int64)
    K = np.array([int(r[2]) for r in recs], dtype=np.int64)
    V = F.asarray([int(r[3]) if F.p else Fraction(r[3]) for r in recs])
    pos = 6 + count
    ncor = int(lines[pos].split()[1])
    coroots = np.array([[int(c) for c in ln.split()[1:]] for ln in lines[pos + 1:pos + 1 + ncor]], dtype=np.int64)
    rs = root_system(kind, n)
    if len(labels) != dim or rs.num_roots + rs.rank != dim:
        raise CacheError("dimension does not match the root system")
    A = BracketTable(F, labels, I, J, K, V, rs, coroots, f"{rs.label}/{F}")
    A.meta["type"] = rs.label
    return A


def write(A: BracketTable, directory) -> Path:
    path = cache_path(directory, A.rs.label, str(A.field))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(A))
    return path


def read(path) -> BracketTable:
    return loads(Path(path).read_text())


def tables_identical(A: BracketTable, B: BracketTable) -> bool:
    return (A.field == B.field and A.labels == B.labels
            and all(np.array_equal(getattr(A, f), getattr(B, f)) for f in "IJKV")
            and np.array_equal(A.coroots, B.coroots))


def cache_roundtrip(A: BracketTable, directory) -> bool:
    """Write then read back; True iff the table is reproduced exactly."""
    return tables_identical(A, read(write(A, directory)))


def load_or_build(type_label: str, field_spec, directory=None) -> tuple[BracketTable, str]:
    """Cached table if valid, otherwise build (and rewrite) it.

    Returns the table and a status: ``hit``, ``built``, or ``rebuilt: <why>``.
    """
    directory = Path(directory) if directory is not None else default_cache_dir()
    F = parse_field(field_spec)
    kind, n = parse_type(type_label)
    label = f"{kind}{n}"
    path = cache_path(directory, label, str(F))
    status = "built"
    if path.exists():
        try:
            return read(path), "hit"
        except CacheError as err:
            status = f"rebuilt: {err}"
            log.warning("cache %s unusable (%s); rebuilding", path, err)
    A = algebra_make(root_system(kind, n), F)
    write(A, directory)
    return A, status
