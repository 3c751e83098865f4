"""The Lie-algebra engine in one namespace.

The implementation is split over :mod:`algebra` (tables and the Chevalley
construction), :mod:`extremal` (certificates, exp maps, pair relations),
:mod:`form` (extremal form, radical, quotient, simplicity) and :mod:`ratio`
(recovery of the product scalar).
"""

from .algebra import *  # noqa: F401,F403
from .algebra import BracketTable, algebra_make, chevalley_exp, jacobi_violations  # noqa: F401
from .extremal import *  # noqa: F401,F403
from .form import *  # noqa: F401,F403
from .ratio import RatioResult, default_points, product_ratio  # noqa: F401
