"""Exact linear algebra over GF(q) with canonical subspace bases.

A :class:`Subspace` is stored by its reduced row echelon basis, so two
subspaces are equal exactly when their bases are identical.  Vectors are
tuples of integer field codes; ``RingElement`` values are accepted wherever a
vector is expected.  Over GF(2) elimination runs on bit-packed integer rows.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotDirect, NotInvertible, ParseError
from .gf import Field, gf
from .polyring import RingElement, format_codes, parse_codes


def _vec(v) -> tuple[int, ...]:
    if isinstance(v, RingElement):
        return v.coeffs
    return tuple(int(c) for c in v)


def _pack(v) -> int:
    return sum(1 << i for i, c in enumerate(v) if c)


def _unpack(x: int, n: int) -> tuple[int, ...]:
    return tuple((x >> i) & 1 for i in range(n))


def _rref_gf2(rows: list[int], n: int) -> tuple[list[int], list[int]]:
    rows = [r for r in rows if r]
    pivots = []
    rank = 0
    for col in range(n):
        bit = 1 << col
        for i in range(rank, len(rows)):
            if rows[i] & bit:
                rows[rank], rows[i] = rows[i], rows[rank]
                break
        else:
            continue
        for i in range(len(rows)):
            if i != rank and rows[i] & bit:
                rows[i] ^= rows[rank]
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


def _rref_rows(field: Field, rows: list[list[int]], n: int):
    """Row reduce in place; return ``(rows, pivots)``."""
    if field.q == 2:
        packed, pivots = _rref_gf2([_pack(r) for r in rows], n)
        return [list(_unpack(x, n)) for x in packed], pivots
    rows = [list(r) for r in rows if any(r)]
    pivots = []
    rank = 0
    for col in range(n):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field.inv(rows[rank][col])
        prow = [field.mul(inv, x) for x in rows[rank]]
        rows[rank] = prow
        for i in range(len(rows)):
            c = rows[i][col]
            if i != rank and c:
                rows[i] = [field.sub(x, field.mul(c, y)) for x, y in zip(rows[i], prow)]
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


class Subspace:
    """A subspace of F_q^n held in canonical reduced row echelon form."""

    __slots__ = ("field", "n", "rows", "pivots", "_packed")

    def __init__(self, field: Field, n: int, rows: Sequence[Sequence[int]] = ()):
        rows = [list(_vec(r)) for r in rows]
        for r in rows:
            if len(r) != n:
                raise DimensionMismatch(f"vector of length {len(r)} in F_q^{n}")
        red, pivots = _rref_rows(field, rows, n)
        self.field = field
        self.n = n
        self.rows = tuple(tuple(r) for r in red)
        self.pivots = tuple(pivots)
        self._packed = [_pack(r) for r in self.rows] if field.q == 2 else None

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def codim(self) -> int:
        return self.n - len(self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.n == other.n
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.n, self.rows))

    def __repr__(self):
        body = ", ".join(format_codes(r, self.field.q) for r in self.rows)
        return f"Subspace(q={self.field.q}, n={self.n}, [{body}])"

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __le__(self, other: Subspace) -> bool:
        return all(r in other for r in self.rows)

    def basis(self) -> list[RingElement]:
        return [RingElement(self.field, self.n, r) for r in self.rows]

    def coordinates(self, v) -> tuple[int, ...]:
        """Coordinates of ``v`` in the RREF basis (its entries at the pivots)."""
        v = _vec(v)
        if not contains(self, v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def elements(self):
        """Iterate over all q^dim vectors of the subspace."""
        F = self.field
        for coeffs in itertools.product(range(F.q), repeat=self.dim):
            v = [0] * self.n
            for c, row in zip(coeffs, self.rows):
                if c:
                    v = [F.add(x, F.mul(c, y)) for x, y in zip(v, row)]
            yield tuple(v)

    def to_text(self) -> str:
        lines = [f"{self.field.q} {self.n} {self.dim}"]
        lines += [format_codes(r, self.field.q) for r in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Subspace:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        try:
            q, n, dim = (int(t) for t in lines[0].split())
            field = gf(q)
            rows = [parse_codes(ln, q) for ln in lines[1:]]
        except (IndexError, ValueError) as exc:
            raise ParseError(f"malformed subspace file: {exc}") from exc
        if len(rows) != dim or any(len(r) != n for r in rows):
            raise ParseError(f"expected {dim} rows of length {n}")
        U = cls(field, n, rows)
        if U.dim != dim:
            raise ParseError(f"rows span dimension {U.dim}, header says {dim}")
        return U


def rref(vectors: Iterable, field: Field | None = None, n: int | None = None) -> Subspace:
    """Canonical basis of the span of ``vectors``.

    ``field`` and ``n`` are needed only when ``vectors`` holds no ring elements.
    """
    vectors = list(vectors)
    for v in vectors:
        if isinstance(v, RingElement):
            if field is None:
                field = v.field
            if n is None:
                n = v.n
    if field is None or n is None:
        if not vectors:
            raise ValueError("field and n are required for an empty vector list")
        raise ValueError("field is required for plain coordinate vectors")
    return Subspace(field, n, vectors)


def full_space(field: Field, n: int) -> Subspace:
    return Subspace(field, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])


def zero_space(field: Field, n: int) -> Subspace:
    return Subspace(field, n, [])


def contains(U: Subspace, v) -> bool:
    """Membership by eliminating against the pivots."""
    v = _vec(v)
    if len(v) != U.n:
        raise DimensionMismatch(f"vector of length {len(v)} vs ambient {U.n}")
    if U._packed is not None:
        x = _pack(v)
        for p, row in zip(U.pivots, U._packed):
            if x >> p & 1:
                x ^= row
        return x == 0
    F = U.field
    v = list(v)
    for p, row in zip(U.pivots, U.rows):
        c = v[p]
        if c:
            v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
    return not any(v)


def codim(U: Subspace) -> int:
    return U.codim


def _check_ambient(U: Subspace, W: Subspace):
    if U.field != W.field or U.n != W.n:
        raise DimensionMismatch("subspaces live in different ambient spaces")


def subspace_sum(U: Subspace, W: Subspace, require_direct: bool = False) -> Subspace:
    """Span of ``U`` and ``W``; with ``require_direct`` the sum must be direct."""
    _check_ambient(U, W)
    S = Subspace(U.field, U.n, U.rows + W.rows)
    if require_direct and S.dim != U.dim + W.dim:
        raise NotDirect(f"dim(U)+dim(W) = {U.dim + W.dim} but dim(U+W) = {S.dim}")
    return S


def direct_sum(*parts: Subspace) -> Subspace:
    S = parts[0]
    for P in parts[1:]:
        S = subspace_sum(S, P, require_direct=True)
    return S


def kernel(rows: Sequence[Sequence[int]], field: Field, n: int) -> list[tuple[int, ...]]:
    """Basis of ``{x : r . x = 0 for every row r}``."""
    red, pivots = _rref_rows(field, [list(_vec(r)) for r in rows], n)
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        x = [0] * n
        x[f] = 1
        for row, p in zip(red, pivots):
            x[p] = field.neg(row[f])
        basis.append(tuple(x))
    return basis


def annihilator(U: Subspace) -> tuple[tuple[int, ...], ...]:
    """RREF parity-check rows ``H`` with ``U = ker H``; ``codim(U)`` rows."""
    return Subspace(U.field, U.n, kernel(U.rows, U.field, U.n)).rows


def from_parity_check(H: Sequence[Sequence[int]], field: Field, n: int) -> Subspace:
    return Subspace(field, n, kernel(H, field, n))


def intersect(U: Subspace, W: Subspace) -> Subspace:
    _check_ambient(U, W)
    return from_parity_check(annihilator(U) + annihilator(W), U.field, U.n)


# -- small dense matrices (tuples of rows) --------------------------------

def mat_vec(field: Field, M, v) -> tuple[int, ...]:
    v = _vec(v)
    out = []
    for row in M:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return tuple(out)


def mat_mul(field: Field, A, B) -> tuple[tuple[int, ...], ...]:
    cols = list(zip(*B))
    return tuple(mat_vec(field, cols, row) for row in A)


def identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_inv(field: Field, M) -> tuple[tuple[int, ...], ...]:
    n = len(M)
    aug = [list(_vec(row)) + list(e) for row, e in zip(M, identity(n))]
    red, pivots = _rref_rows(field, aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise NotInvertible("matrix is singular")
    return tuple(tuple(r[n:]) for r in red[:n])


def transpose(M):
    return tuple(zip(*M))


def image(U: Subspace, M) -> Subspace:
    """``M(U)`` for a square matrix ``M`` acting on column vectors."""
    return Subspace(U.field, U.n, [mat_vec(U.field, M, r) for r in U.rows])


def shifted(U: Subspace, r: int) -> Subspace:
    """The cyclic shift ``sigma^r(U)``."""
    n = U.n
    r %= n
    return Subspace(U.field, n, [row[n - r:] + row[: n - r] for row in U.rows])
