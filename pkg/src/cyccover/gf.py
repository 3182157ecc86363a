"""Arithmetic in finite fields GF(p^m).

An element is stored as an integer code in ``[0, q)``: the base-p digits of
the code, least significant first, are its coordinates in the polynomial
basis ``1, X, ..., X^(m-1)``.  The prime subfield therefore consists of the
codes ``0 .. p-1`` in every field of characteristic p.

Fields are built deterministically: the modulus of GF(p^m) is the
lexicographically least monic irreducible polynomial of degree m, comparing
coefficient tuples constant term first.  ``field_new`` is memoised, so equal
``(p, m)`` always return the same object.

Low-level arithmetic works on bare integer codes through ``Field.add``,
``Field.mul`` and friends; ``FieldElem`` wraps a code for convenient
operator syntax.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .errors import DegreeZero, DivisionByZero, FieldMismatch, NonPrime, ZeroElement

# Fields up to this order get exp/log tables for multiplication.
_TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order (trial division)."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, m)`` with ``q == p**m``; raise NonPrime otherwise."""
    if q < 2:
        raise NonPrime(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    m = 0
    r = q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise NonPrime(f"{q} is not a prime power")
    return p, m


# -- polynomials over GF(p) as coefficient lists, constant term first ------

def _strip(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _prem(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _strip(a)
    return a


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ac in enumerate(a):
        if ac:
            for j, bc in enumerate(b):
                out[i + j] = (out[i + j] + ac * bc) % p
    return _prem(_strip(out), f, p)


def _pgcd(a, b, p):
    a, b = _strip(list(a)), _strip(list(b))
    while b:
        a, b = b, _prem(a, b, p)
    return a


def _ppow_mod(a, e, f, p):
    result = [1]
    base = _prem(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        e >>= 1
        if e:
            base = _pmulmod(base, base, f, p)
    return result


def is_irreducible(coeffs, p: int) -> bool:
    """Irreducibility of a polynomial over GF(p).

    ``f`` of degree m is irreducible iff ``gcd(f, X^(p^i) - X) = 1`` for every
    ``1 <= i <= m // 2``, i.e. it has no irreducible factor of small degree.
    """
    f = _strip([c % p for c in coeffs])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if f[0] == 0:
        return False
    h = [0, 1]
    for _ in range(m // 2):
        h = _ppow_mod(h, p, f, p)
        g = list(h) + [0] * max(0, 2 - len(h))
        g[1] = (g[1] - 1) % p
        if len(_pgcd(f, _strip(g), p)) != 1:
            return False
    return True


def _least_irreducible(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    # a zero constant term means X divides; start the scan past those
    for low in itertools.product(range(1, p), *[range(p)] * (m - 1)):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class Field:
    """The finite field GF(p^m); build instances with :func:`field_new`."""

    def __init__(self, p: int, m: int, modulus: tuple[int, ...] | None):
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus
        self._exp = None
        self._log = None
        self._generator = None
        if m > 1 and p == 2:
            self._mod_bits = sum(c << i for i, c in enumerate(modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __str__(self):
        return f"{self.p}^{self.m}"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash((Field, self.p, self.m))

    def __reduce__(self):
        return (field_new, (self.p, self.m))

    def __call__(self, code) -> FieldElem:
        if isinstance(code, FieldElem):
            if code.field != self:
                raise FieldMismatch(f"{code!r} is not in {self!r}")
            return code
        code = int(code)
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for {self!r}")
        return FieldElem(self, code)

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, 1)

    def elements(self):
        return [FieldElem(self, c) for c in range(self.q)]

    def digits(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def from_digits(self, digits) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.p + d % self.p
        return code

    # -- arithmetic on integer codes --------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self.from_digits([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._log is None and self.q <= _TABLE_LIMIT:
            self._build_tables()
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self!r}")
        if self.m == 1:
            return pow(a, -1, self.p)
        if self._log is None and self.q <= _TABLE_LIMIT:
            self._build_tables()
        if self._log is not None:
            return self._exp[-self._log[a] % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.m == 1:
            return pow(a, e, self.p)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def _slow_mul(self, a: int, b: int) -> int:
        if self.p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> self.m & 1:
                    a ^= self._mod_bits
            return r
        prod = _pmulmod(list(self.digits(a)), list(self.digits(b)), self.modulus, self.p)
        return self.from_digits(prod)

    def _slow_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            e >>= 1
            if e:
                a = self._slow_mul(a, a)
        return result

    def _build_tables(self):
        g = self._least_generator(self._slow_pow)
        exp = [1] * (self.q - 1)
        log = [0] * self.q
        x = 1
        for i in range(self.q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        self._exp, self._log = exp, log

    def _least_generator(self, power) -> int:
        order = self.q - 1
        primes = prime_factors(order) if order > 1 else []
        for c in range(1, self.q):
            if all(power(c, order // r) != 1 for r in primes):
                return c
        raise AssertionError("multiplicative group has no generator")  # pragma: no cover


@functools.lru_cache(maxsize=None)
def field_new(p: int, m: int = 1) -> Field:
    """The deterministic field GF(p^m)."""
    if m < 1:
        raise DegreeZero(f"extension degree must be >= 1, got {m}")
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    modulus = _least_irreducible(p, m) if m > 1 else None
    return Field(p, m, modulus)


def gf(q: int) -> Field:
    """The field of order ``q``."""
    p, m = prime_power(q)
    return field_new(p, m)


@dataclass(frozen=True)
class FieldElem:
    field: Field
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.digits(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.code
        if isinstance(other, int) and 0 <= other < self.field.p:
            return other
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.sub(self.code, b))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.mul(self.code, self.field.inv(b)))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.code, e))

    def inverse(self) -> FieldElem:
        return FieldElem(self.field, self.field.inv(self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __str__(self):
        return str(self.code)

    def __repr__(self):
        return f"{self.field!r}({self.code})"


def arith(a: FieldElem, b: FieldElem | int | None, kind: str) -> FieldElem:
    """Dispatch ``add``, ``mul``, ``inv`` or ``pow`` (``b`` is the exponent)."""
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "inv":
        return a.inverse()
    if kind == "pow":
        return a ** int(b)
    raise ValueError(f"unknown operation {kind!r}")


def element_order(a: FieldElem) -> int:
    """Multiplicative order of a nonzero element."""
    if a.code == 0:
        raise ZeroElement("zero has no multiplicative order")
    F = a.field
    t = F.q - 1
    for r in prime_factors(t) if t > 1 else []:
        while t % r == 0 and F.pow(a.code, t // r) == 1:
            t //= r
    return t


def find_generator(F: Field) -> FieldElem:
    """The least-code element of multiplicative order ``q - 1``."""
    if F._generator is None:
        F._generator = F._least_generator(F.pow)
    return FieldElem(F, F._generator)
