"""Factoring X^n - 1 over GF(q) through cyclotomic cosets.

Each q-cyclotomic coset of Z_n gives one irreducible factor: the minimal
polynomial of ``omega^s`` for a fixed primitive n-th root of unity ``omega``
and any ``s`` in the coset.  The Chinese remainder idempotents then split
R_n = F_q[X]/(X^n - 1) into the shift-invariant components V_i.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass

from .errors import CoefficientEscape, NotCoprime
from .gf import Field, FieldElem, field_new, find_generator, gf, prime_power
from .linalg import Subspace
from .polyring import Poly, RingElement, poly_divrem, poly_eval, poly_gcdex, shift, x_pow_minus_1


def _require_coprime(q: int, n: int):
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if math.gcd(q, n) != 1:
        raise NotCoprime(f"gcd(n={n}, q={q}) = {math.gcd(q, n)}")


def order_mod(q: int, n: int) -> int:
    """Least ``L >= 1`` with ``q^L = 1 mod n``."""
    _require_coprime(q, n)
    if n == 1:
        return 1
    L, x = 1, q % n
    while x != 1:
        x = x * q % n
        L += 1
    return L


@dataclass(frozen=True)
class CosetPartition:
    q: int
    n: int
    cosets: tuple[tuple[int, ...], ...]

    def index_of(self, s: int) -> int:
        s %= self.n
        for i, c in enumerate(self.cosets):
            if s in c:
                return i
        raise AssertionError("partition does not cover Z_n")  # pragma: no cover


def cyclotomic_cosets(q: int, n: int) -> CosetPartition:
    """Orbits of Z_n under ``i -> q*i mod n``, ordered by least element."""
    _require_coprime(q, n)
    seen = set()
    cosets = []
    for s in range(n):
        if s in seen:
            continue
        orbit = []
        x = s
        while x not in orbit:
            orbit.append(x)
            x = x * q % n
        seen.update(orbit)
        cosets.append(tuple(sorted(orbit)))
    return CosetPartition(q, n, tuple(cosets))


def extension_field(q: int, L: int) -> Field:
    """GF(q^L), built directly over the prime field."""
    p, m = prime_power(q)
    return field_new(p, m * L)


def primitive_root_of_unity(q: int, n: int) -> FieldElem:
    """``g^((q^L - 1)/n)`` for the canonical generator ``g`` of GF(q^L)."""
    L = order_mod(q, n)
    E = extension_field(q, L)
    g = find_generator(E)
    return g ** ((E.q - 1) // n)


@functools.lru_cache(maxsize=None)
def _subfield_map(E: Field, Fq: Field) -> dict[int, int]:
    """Codes of the order-|Fq| subfield of ``E`` mapped to codes of ``Fq``."""
    if Fq.m == 1:
        return {c: c for c in range(Fq.p)}
    modulus = Poly(field_new(Fq.p), Fq.modulus)
    # roots of the modulus lie in the unique subfield of order Fq.q; take the least code
    h = E.pow(find_generator(E).code, (E.q - 1) // (Fq.q - 1))
    sub, c = [], 1
    for _ in range(Fq.q - 1):
        sub.append(c)
        c = E.mul(c, h)
    root = min(c for c in sub if poly_eval(modulus, FieldElem(E, c)).code == 0)
    powers = [E.pow(root, i) for i in range(Fq.m)]
    out = {}
    for a in range(Fq.q):
        img = 0
        for d, rp in zip(Fq.digits(a), powers):
            img = E.add(img, E.mul(d, rp))
        out[img] = a
    return out


def min_poly(omega: FieldElem, q: int) -> Poly:
    """Minimal polynomial over GF(q) of ``omega``: the product of ``X - c`` over
    the distinct conjugates ``c = omega^(q^j)``."""
    E = omega.field
    Fq = gf(q)
    if E.p != Fq.p or E.m % Fq.m:
        raise ValueError(f"{E!r} does not contain GF({q})")
    conj = [omega.code]
    c = E.pow(omega.code, q)
    while c != omega.code:
        conj.append(c)
        c = E.pow(c, q)
    prod = Poly(E, [1])
    for r in conj:
        prod = prod * Poly(E, [E.neg(r), 1])
    sub = _subfield_map(E, Fq)
    coeffs = []
    for a in prod.coeffs:
        if E.pow(a, q) != a or a not in sub:
            raise CoefficientEscape(f"coefficient {a} of the minimal polynomial is not in GF({q})")
        coeffs.append(sub[a])
    return Poly(Fq, coeffs)


@dataclass(frozen=True)
class Factorization:
    q: int
    n: int
    field: Field
    cosets: CosetPartition
    factors: tuple[Poly, ...]
    idempotents: tuple[RingElement, ...]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(f.degree for f in self.factors)

    def index_of(self, s: int) -> int:
        """Index of the factor whose roots are ``omega^t`` for ``t`` in the coset of ``s``."""
        return self.cosets.index_of(s)

    def component(self, i: int) -> Subspace:
        return component_subspace(self, i)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "factors": [list(f.coeffs) for f in self.factors],
            "cosets": [list(c) for c in self.cosets.cosets],
            "idempotents": [str(u) for u in self.idempotents],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


@functools.lru_cache(maxsize=None)
def factor_xn_minus_1(q: int, n: int) -> Factorization:
    cosets = cyclotomic_cosets(q, n)
    Fq = gf(q)
    omega = primitive_root_of_unity(q, n)
    factors = tuple(min_poly(omega ** c[0], q) for c in cosets.cosets)
    total = x_pow_minus_1(Fq, n)
    idems = []
    for f in factors:
        cofactor, rem = poly_divrem(total, f)
        assert not rem, "factor does not divide X^n - 1"
        g, _, t = poly_gcdex(f, cofactor)
        assert g.coeffs == (1,), "factors are not pairwise coprime"
        idems.append(RingElement.from_poly(t * cofactor, n))
    return Factorization(q, n, Fq, cosets, factors, tuple(idems))


def component_subspace(F: Factorization, i: int) -> Subspace:
    """V_i, spanned by ``X^r u_i`` for ``0 <= r < deg f_i``."""
    u = F.idempotents[i]
    return Subspace(F.field, F.n, [shift(u, r) for r in range(F.factors[i].degree)])
