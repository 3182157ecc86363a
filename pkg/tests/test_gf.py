import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyccover.errors import DegreeZero, DivisionByZero, FieldMismatch, NonPrime, ZeroElement
from cyccover.gf import (
    arith,
    element_order,
    field_new,
    find_generator,
    gf,
    is_irreducible,
    prime_power,
)
from oracles import has_root_factor_scan, poly_mulmod_p

SMALL = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    for bad in (0, 1, 6, 12, 100):
        with pytest.raises(NonPrime):
            prime_power(bad)


def test_field_new_validates():
    with pytest.raises(NonPrime):
        field_new(4)
    with pytest.raises(DegreeZero):
        field_new(2, 0)
    assert field_new(2, 3) is field_new(2, 3)


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_irreducibility_matches_trial_division(p, m):
    for low in itertools.product(range(p), repeat=m):
        f = list(low) + [1]
        assert is_irreducible(f, p) == (not has_root_factor_scan(f, p)), f


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_modulus_is_least_irreducible(p, m):
    F = field_new(p, m)
    for low in itertools.product(range(p), repeat=m):
        cand = tuple(low) + (1,)
        if cand == F.modulus:
            break
        assert has_root_factor_scan(list(cand), p)
    assert not has_root_factor_scan(list(F.modulus), p)


def test_known_moduli():
    assert gf(4).modulus == (1, 1, 1)
    # constant term first, so 1 + X^2 + X^3 precedes 1 + X + X^3
    assert gf(8).modulus == (1, 0, 1, 1)
    assert gf(9).modulus == (1, 0, 1)


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27])
def test_multiplication_matches_polynomial_oracle(q):
    F = gf(q)
    for a in range(q):
        for b in range(q):
            want = poly_mulmod_p(list(F.digits(a)), list(F.digits(b)), list(F.modulus), F.p)
            assert F.mul(a, b) == F.from_digits(want)


@pytest.mark.parametrize("q", SMALL)
def test_field_axioms(q):
    F = gf(q)
    for a in range(q):
        assert F.add(a, F.neg(a)) == 0
        assert F.mul(a, 1) == a
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, q - 1) == 1
    g = find_generator(F)
    assert element_order(g) == q - 1
    assert len({F.pow(g.code, i) for i in range(q - 1)}) == q - 1


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_distributive(q, data):
    F = gf(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


def test_gf4_and_gf9_examples():
    F4 = gf(4)
    assert F4.mul(2, 2) == 3  # X * X = X + 1
    F9 = gf(9)
    assert find_generator(F9).code == 4  # 1 + X
    assert element_order(F9(4)) == 8


def test_field_elem_operators():
    F = gf(8)
    a, b = F(3), F(6)
    assert (a + b).code == 5
    assert (a * b) / b == a
    assert a - a == F.zero
    assert a ** 7 == F.one
    assert arith(a, b, "mul") == a * b
    assert arith(a, None, "inv") * a == F.one
    with pytest.raises(DivisionByZero):
        F.zero.inverse()
    with pytest.raises(FieldMismatch):
        a + gf(4)(1)
    with pytest.raises(ZeroElement):
        element_order(F.zero)
    with pytest.raises(ValueError):
        arith(a, b, "frobnicate")


def test_large_field_without_tables():
    F = field_new(2, 20)
    g = F(2)
    assert F.mul(F.inv(g.code), g.code) == 1
    assert F._log is None
