import numpy as np
import pytest

from extremal_lie.algebra import algebra_make

TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4"]
FIELDS = ["Q", 3, 5, 7]

_tables: dict = {}


def table(t, f):
    """Session-wide memo of Chevalley tables; they are treated as immutable."""
    key = (t, str(f))
    if key not in _tables:
        _tables[key] = algebra_make(t, f)
    return _tables[key]


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
