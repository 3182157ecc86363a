"""Covering subspaces for small matrix groups acting on F_q^dim.

A subspace U is G-covering when the images g(U), g in G, together contain
every vector.  Groups are materialised as explicit element lists, which is
exact and cheap at the sizes handled here.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from . import engine
from .cover import CoverResult, result_from_outcome
from .engine import OrbitTable, default_budget, floor_log
from .errors import (
    CapExceeded,
    CharDivides,
    DimensionMismatch,
    NotDecomposition,
    NotInvariant,
    ParseError,
)
from .gf import Field, gf
from .linalg import Subspace, contains, identity, kernel, mat_inv, mat_vec, subspace_sum

DEFAULT_CAP = 10_000

Matrix = tuple  # tuple of row tuples of field codes


def _as_matrix(M) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in M)


class MatrixRep:
    """A finite matrix group given by generators, with its full element list."""

    def __init__(self, field: Field, dim: int, generators, elements):
        self.field = field
        self.dim = dim
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self._table = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def orbit_table(self) -> OrbitTable:
        if self._table is None:
            labels = engine.action_orbit_labels(self.field, self.dim, self.generators)
            self._table = OrbitTable(self.field, self.dim, labels)
        return self._table

    def to_text(self) -> str:
        lines = [f"{self.field.q} {self.dim} {len(self.generators)}"]
        for M in self.generators:
            lines += [" ".join(str(x) for x in row) for row in M]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, cap: int = DEFAULT_CAP) -> MatrixRep:
        tokens = text.split()
        try:
            q, dim, ngen = (int(t) for t in tokens[:3])
            vals = [int(t) for t in tokens[3:]]
            field = gf(q)
        except (ValueError, IndexError) as exc:
            raise ParseError(f"malformed representation file: {exc}") from exc
        if len(vals) != ngen * dim * dim or any(not 0 <= v < q for v in vals):
            raise ParseError(f"expected {ngen} matrices of size {dim}x{dim} over GF({q})")
        mats = []
        for g in range(ngen):
            block = vals[g * dim * dim:(g + 1) * dim * dim]
            mats.append([block[r * dim:(r + 1) * dim] for r in range(dim)])
        return rep_close(mats, field, dim=dim, cap=cap)


def _mul(ar: engine._Arith, A: Matrix, B: Matrix) -> Matrix:
    return _as_matrix(ar.matmul(np.array(A, np.int64), np.array(B, np.int64)))


def rep_close(generators, field: Field, dim: int | None = None, cap: int = DEFAULT_CAP) -> MatrixRep:
    """Breadth-first closure of the group generated by ``generators``.

    Elements are listed in BFS order from the identity, multiplying by the
    generators on the left in the given order.
    """
    gens = [_as_matrix(M) for M in generators]
    if dim is None:
        if not gens:
            raise ValueError("dim is required when there are no generators")
        dim = len(gens[0])
    for M in gens:
        if len(M) != dim or any(len(r) != dim for r in M):
            raise DimensionMismatch(f"generator is not {dim}x{dim}")
        mat_inv(field, M)  # raises NotInvertible
    ar = engine._Arith(field)
    e = identity(dim)
    seen = {e}
    elements = [e]
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = _mul(ar, s, g)
            if h not in seen:
                if len(elements) >= cap:
                    raise CapExceeded(f"group has more than {cap} elements")
                seen.add(h)
                elements.append(h)
                queue.append(h)
    return MatrixRep(field, dim, gens, elements)


def permutation_matrix(perm) -> Matrix:
    """Matrix sending basis vector e_i to e_perm[i]."""
    n = len(perm)
    M = [[0] * n for _ in range(n)]
    for i, j in enumerate(perm):
        M[j][i] = 1
    return _as_matrix(M)


def shift_matrix(n: int) -> Matrix:
    """The cyclic shift moving coordinate i to i + 1."""
    return permutation_matrix([(i + 1) % n for i in range(n)])


def cyclic_rep(q: int, n: int) -> MatrixRep:
    return rep_close([shift_matrix(n)], gf(q), dim=n)


def trivial_rep(q: int, dim: int) -> MatrixRep:
    return rep_close([], gf(q), dim=dim)


def regular_rep_abelian(q: int, orders) -> MatrixRep:
    """Regular permutation representation of C_(o_1) x ... x C_(o_r).

    Group elements are tuples indexed in row-major order; generator i adds 1
    to component i.
    """
    orders = list(orders)
    size = math.prod(orders)
    index = {}
    for k in range(size):
        t, rest = [], k
        for o in reversed(orders):
            rest, r = divmod(rest, o)
            t.append(r)
        index[tuple(reversed(t))] = k
    gens = []
    for i, o in enumerate(orders):
        perm = [0] * size
        for t, k in index.items():
            u = list(t)
            u[i] = (u[i] + 1) % o
            perm[k] = index[tuple(u)]
        gens.append(permutation_matrix(perm))
    return rep_close(gens, gf(q), dim=size)


def _check_dim(U: Subspace, R: MatrixRep):
    if U.n != R.dim or U.field != R.field:
        raise DimensionMismatch(f"subspace of F_{U.field.q}^{U.n} vs representation of dimension {R.dim}")


def is_g_covering(U: Subspace, R: MatrixRep) -> bool:
    """Every vector lies in g(U) for some group element g (orbit test)."""
    _check_dim(U, R)
    return engine.uncovered(R.orbit_table(), U.rows).size == 0


def h_g_search(R: MatrixRep, threads: int = 1, budget=None) -> CoverResult:
    """Exact maximum codimension of a G-covering subspace, with witness.

    Orbits have at most |G| elements, so the search stops at floor(log_q |G|).
    """
    if budget is None:
        budget = default_budget()
    cap = min(R.dim, floor_log(R.field.q, R.order))
    out = engine.ascending_search(R.orbit_table(), cap, threads=threads, budget=budget)
    return result_from_outcome(R.field, R.dim, out)


def is_invariant(W: Subspace, R: MatrixRep) -> bool:
    return all(contains(W, mat_vec(R.field, M, w)) for M in R.generators for w in W.rows)


def restrict(R: MatrixRep, W: Subspace) -> MatrixRep:
    """The representation on an invariant subspace, in the RREF basis of W.

    Coordinates of a vector of W are its entries at the pivot columns.
    """
    _check_dim(W, R)
    if not is_invariant(W, R):
        raise NotInvariant("subspace is not invariant under the generators")
    k = W.dim
    F = R.field

    def on_w(M):
        cols = [W.coordinates(mat_vec(F, M, w)) for w in W.rows]
        return tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))

    gens = [on_w(M) for M in R.generators]
    if k == 0:
        return MatrixRep(F, 0, gens, [()])
    return rep_close(gens, F, dim=k, cap=max(R.order, 1))


def _mat_scale(F: Field, c: int, M) -> Matrix:
    return tuple(tuple(F.mul(c, x) for x in row) for row in M)


def maschke_complement(W: Subspace, R: MatrixRep) -> Subspace:
    """An invariant complement to ``W`` by averaging a projection over G.

    Needs the characteristic not to divide |G|; 1/|G| is the field inverse
    of |G| mod p.
    """
    _check_dim(W, R)
    F = R.field
    order = R.order
    if order % F.p == 0:
        raise CharDivides(f"characteristic {F.p} divides |G| = {order}")
    if not is_invariant(W, R):
        raise NotInvariant("subspace is not invariant under the generators")
    n = R.dim
    pivots = set(W.pivots)
    basis = list(W.rows) + [tuple(1 if i == j else 0 for i in range(n)) for j in range(n) if j not in pivots]
    A = tuple(zip(*basis))  # columns are the basis vectors
    A_inv = mat_inv(F, A)
    keep = W.dim
    D = tuple(tuple(1 if (i == j and i < keep) else 0 for j in range(n)) for i in range(n))
    ar = engine._Arith(F)
    P = _mul(ar, _mul(ar, A, D), A_inv)
    total = np.zeros((n, n), np.int64)
    for g in R.elements:
        g_inv = mat_inv(F, g)
        term = np.array(_mul(ar, _mul(ar, g_inv, P), g), np.int64)
        total = ar.add(total, term)
    avg = _mat_scale(F, F.inv(order % F.p), _as_matrix(total))
    Wc = Subspace(F, n, kernel(avg, F, n))
    if subspace_sum(W, Wc).dim != n or W.dim + Wc.dim != n:
        raise AssertionError("averaged projection did not give a complement")
    if not is_invariant(Wc, R):
        raise AssertionError("complement is not invariant")
    return Wc


@dataclass(frozen=True)
class DecompositionBounds:
    h_parts: tuple[int, ...]
    h_total: int
    sum_bound: int
    log_bound: int

    @property
    def lower(self) -> int:
        return max(self.h_parts) if self.h_parts else 0

    @property
    def upper(self) -> int:
        return min(self.sum_bound, self.log_bound)

    @property
    def holds(self) -> bool:
        return self.lower <= self.h_total <= self.upper

    def to_json(self) -> dict:
        return {
            "h_parts": list(self.h_parts),
            "h_total": self.h_total,
            "sum_bound": self.sum_bound,
            "log_bound": self.log_bound,
            "holds": self.holds,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def decomposition_bounds(R: MatrixRep, parts, threads: int = 1, budget=None) -> DecompositionBounds:
    """h on each invariant summand and on the whole space, with the bounds
    max h(W_i) <= h(V) <= min(sum h(W_i), floor(log_q |G|))."""
    parts = list(parts)
    if not parts:
        raise NotDecomposition("empty decomposition")
    for W in parts:
        _check_dim(W, R)
        if not is_invariant(W, R):
            raise NotDecomposition("summand is not invariant")
    S = parts[0]
    for W in parts[1:]:
        S = subspace_sum(S, W)
    if S.dim != R.dim or sum(W.dim for W in parts) != R.dim:
        raise NotDecomposition("summands do not form a direct sum equal to the whole space")
    h_parts = tuple(h_g_search(restrict(R, W), threads, budget).h for W in parts)
    h_total = h_g_search(R, threads, budget).h
    bounds = DecompositionBounds(h_parts, h_total, sum(h_parts), floor_log(R.field.q, R.order))
    if not bounds.holds:
        raise AssertionError(f"bounds violated: {bounds}")
    return bounds
