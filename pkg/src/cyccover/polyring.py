"""Polynomials over GF(q) and the cyclic ring R_n = F_q[X]/(X^n - 1).

Both types hold integer field codes (see :mod:`cyccover.gf`) in ascending
degree order.  A ring element of length n doubles as a vector of F_q^n:
coordinate i (0-based) is the coefficient of X^i, and multiplying by X is
the cyclic shift that moves coordinate i to i + 1.
"""

from __future__ import annotations

from .errors import DimensionMismatch, DivisorZero, FieldMismatch
from .gf import Field, FieldElem


def _check_field(a, b):
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")


def format_codes(codes, q: int) -> str:
    """Digit string for q <= 10, comma-separated codes otherwise."""
    if q <= 10:
        return "".join(str(c) for c in codes)
    return ",".join(str(c) for c in codes)


def parse_codes(text: str, q: int) -> tuple[int, ...]:
    text = text.strip()
    if "," in text or " " in text:
        parts = text.replace(",", " ").split()
        codes = tuple(int(t) for t in parts)
    elif q <= 10:
        codes = tuple(int(ch) for ch in text)
    else:
        codes = (int(text),)
    if any(not 0 <= c < q for c in codes):
        raise ValueError(f"coordinate out of range in {text!r}")
    return codes


class Poly:
    """A polynomial with coefficients in ``field``, constant term first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, field: Field) -> Poly:
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: Field, c: int) -> Poly:
        return cls(field, (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"Poly({self.field!r}, {list(self.coeffs)})"

    def __str__(self):
        return format_codes(self.coeffs, self.field.q) if self.coeffs else "0"

    def __add__(self, other: Poly) -> Poly:
        _check_field(self, other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(F, [F.add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)])

    def __neg__(self) -> Poly:
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, FieldElem)):
            c = self.field(other).code
            return Poly(self.field, [self.field.mul(c, x) for x in self.coeffs])
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __divmod__(self, other: Poly):
        return poly_divrem(self, other)

    def __floordiv__(self, other: Poly) -> Poly:
        return poly_divrem(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return poly_divrem(self, other)[1]

    def __call__(self, x: FieldElem) -> FieldElem:
        return poly_eval(self, x)

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        inv = self.field.inv(self.lead)
        return self * inv


def poly_mul(a: Poly, b: Poly) -> Poly:
    _check_field(a, b)
    F = a.field
    if not a.coeffs or not b.coeffs:
        return Poly(F)
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return Poly(F, out)


def poly_divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder with ``a = quot * b + rem``, ``deg rem < deg b``."""
    _check_field(a, b)
    if not b.coeffs:
        raise DivisorZero("polynomial division by zero")
    F = a.field
    rem = list(a.coeffs)
    db = b.degree
    if len(rem) - 1 < db:
        return Poly(F), Poly(F, rem)
    quot = [0] * (len(rem) - db)
    inv_lead = F.inv(b.lead)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = F.mul(rem[k + db], inv_lead)
        quot[k] = c
        if c:
            for i, bc in enumerate(b.coeffs):
                rem[k + i] = F.sub(rem[k + i], F.mul(c, bc))
    return Poly(F, quot), Poly(F, rem[:db])


def poly_gcdex(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    _check_field(a, b)
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly(F, [1]), Poly(F)
    t0, t1 = Poly(F), Poly(F, [1])
    while r1:
        quot, rem = poly_divrem(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
        t0, t1 = t1, t0 - quot * t1
    if not r0:
        return r0, s0, t0
    inv = F.inv(r0.lead)
    return r0 * inv, s0 * inv, t0 * inv


def poly_eval(a: Poly, x: FieldElem) -> FieldElem:
    """Horner evaluation of ``a`` at ``x``.

    ``x`` may live in an extension field when the coefficients of ``a`` come
    from the prime field (prime-field codes embed unchanged).
    """
    E = x.field
    if a.field != E:
        if not (a.field.m == 1 and a.field.p == E.p):
            raise FieldMismatch(f"cannot evaluate a polynomial over {a.field!r} in {E!r}")
    acc = 0
    for c in reversed(a.coeffs):
        acc = E.add(E.mul(acc, x.code), c)
    return FieldElem(E, acc)


def x_pow_minus_1(field: Field, n: int) -> Poly:
    """The polynomial X^n - 1."""
    coeffs = [0] * (n + 1)
    coeffs[0] = field.neg(1)
    coeffs[n] = 1
    return Poly(field, coeffs)


class RingElement:
    """An element of F_q[X]/(X^n - 1), equivalently a vector of F_q^n."""

    __slots__ = ("field", "n", "coeffs")

    def __init__(self, field: Field, n: int, coeffs=None):
        if coeffs is None:
            coeffs = (0,) * n
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != n:
            raise DimensionMismatch(f"expected {n} coordinates, got {len(coeffs)}")
        self.field = field
        self.n = n
        self.coeffs = coeffs

    @classmethod
    def from_poly(cls, p: Poly, n: int) -> RingElement:
        """Reduce a polynomial modulo X^n - 1 (exponents wrap mod n)."""
        out = [0] * n
        F = p.field
        for i, c in enumerate(p.coeffs):
            out[i % n] = F.add(out[i % n], c)
        return cls(F, n, out)

    @classmethod
    def from_str(cls, field: Field, text: str) -> RingElement:
        codes = parse_codes(text, field.q)
        return cls(field, len(codes), codes)

    def to_poly(self) -> Poly:
        return Poly(self.field, self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"RingElement({self.field!r}, {str(self)!r})"

    def __str__(self):
        return format_codes(self.coeffs, self.field.q)

    def _check(self, other):
        _check_field(self, other)
        if self.n != other.n:
            raise DimensionMismatch(f"ring lengths {self.n} and {other.n} differ")

    def __add__(self, other: RingElement) -> RingElement:
        self._check(other)
        F = self.field
        return RingElement(F, self.n, [F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> RingElement:
        return RingElement(self.field, self.n, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: RingElement) -> RingElement:
        return self + (-other)

    def __mul__(self, other) -> RingElement:
        F = self.field
        if isinstance(other, (int, FieldElem)):
            c = F(other).code
            return RingElement(F, self.n, [F.mul(c, x) for x in self.coeffs])
        self._check(other)
        n = self.n
        out = [0] * n
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        k = (i + j) % n
                        out[k] = F.add(out[k], F.mul(x, y))
        return RingElement(F, n, out)

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.coeffs)

    def shift(self, r: int = 1) -> RingElement:
        return shift(self, r)

    def residue(self, f: Poly) -> Poly:
        return residue(self, f)


def shift(v: RingElement, r: int) -> RingElement:
    """``X^r * v``: coordinate i moves to ``(i + r) mod n``."""
    n = v.n
    r %= n
    return RingElement(v.field, n, v.coeffs[n - r:] + v.coeffs[: n - r])


def residue(v: RingElement, f: Poly) -> Poly:
    """Remainder of the degree < n lift of ``v`` modulo ``f``."""
    _check_field(v, f)
    return poly_divrem(v.to_poly(), f)[1]
