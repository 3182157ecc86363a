"""Cyclically covering subspaces of F_q^n.

A subspace U of F_q^n is cyclically covering when every vector has some
cyclic shift lying in U.  The package computes h_q(n), the largest
codimension of such a subspace, exactly for small n, builds the known
algebraic families of covers, handles general finite group actions, and
turns covers into transitive permutation groups without fixed-point-free
elements of prime-power order.
"""

from .cover import CoverResult, h_search, is_covering, orbits
from .gf import Field, FieldElem, field_new, gf
from .linalg import Subspace

__all__ = [
    "CoverResult",
    "Field",
    "FieldElem",
    "Subspace",
    "field_new",
    "gf",
    "h_search",
    "is_covering",
    "orbits",
]
__version__ = "0.1.0"
