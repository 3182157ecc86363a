import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyccover.errors import DimensionMismatch, NotDirect, NotInvertible, ParseError
from cyccover.gf import gf
from cyccover.linalg import (
    Subspace,
    annihilator,
    contains,
    direct_sum,
    from_parity_check,
    full_space,
    identity,
    image,
    intersect,
    kernel,
    mat_inv,
    mat_mul,
    mat_vec,
    rref,
    shifted,
    subspace_sum,
    zero_space,
)
from cyccover.polyring import RingElement
from oracles import span_set


def vec_lists(q, n, max_rows=4):
    return st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), max_size=max_rows)


def _span(F, rows, n):
    return span_set([tuple(r) for r in rows], F.q, n, F.add, F.mul)


@settings(max_examples=120, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(1, 5), st.data())
def test_rref_spans_the_same_set(q, n, data):
    F = gf(q)
    rows = data.draw(vec_lists(q, n))
    U = Subspace(F, n, rows)
    want = _span(F, rows, n)
    assert len(want) == q**U.dim
    assert _span(F, U.rows, n) == want
    assert set(U.elements()) == want
    for v in itertools.product(range(q), repeat=n):
        assert (v in U) == (v in want)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.integers(1, 5), st.data())
def test_canonical_form_is_basis_independent(q, n, data):
    F = gf(q)
    rows = data.draw(vec_lists(q, n))
    U = Subspace(F, n, rows)
    perm = list(U.rows) + [tuple(F.add(a, b) for a, b in zip(r, s)) for r, s in zip(U.rows, U.rows[1:])]
    random.Random(0).shuffle(perm)
    assert Subspace(F, n, perm) == U
    assert hash(Subspace(F, n, perm)) == hash(U)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.integers(1, 5), st.data())
def test_annihilator_and_kernel(q, n, data):
    F = gf(q)
    U = Subspace(F, n, data.draw(vec_lists(q, n)))
    H = annihilator(U)
    assert len(H) == U.codim
    back = from_parity_check(H, F, n)
    assert back == U
    for r in kernel(H, F, n):
        assert all(c == 0 for c in mat_vec(F, H, r))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(1, 4), st.data())
def test_sum_and_intersection_against_sets(q, n, data):
    F = gf(q)
    U = Subspace(F, n, data.draw(vec_lists(q, n, 3)))
    W = Subspace(F, n, data.draw(vec_lists(q, n, 3)))
    su, sw = set(U.elements()), set(W.elements())
    assert set(intersect(U, W).elements()) == su & sw
    S = subspace_sum(U, W)
    assert S.dim == U.dim + W.dim - intersect(U, W).dim
    assert U <= S and W <= S


def test_direct_sum_rejects_overlap():
    F = gf(2)
    U = Subspace(F, 3, [(1, 1, 0)])
    with pytest.raises(NotDirect):
        subspace_sum(U, Subspace(F, 3, [(1, 1, 0), (0, 0, 1)]), require_direct=True)
    assert direct_sum(U, Subspace(F, 3, [(0, 0, 1)])).dim == 2


def test_gf2_packed_agrees_with_generic():
    F2 = gf(2)
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 12)
        rows = [[rng.randint(0, 1) for _ in range(n)] for _ in range(rng.randint(0, 6))]
        U = Subspace(F2, n, rows)
        for row in U.rows:
            assert row[U.pivots[U.rows.index(row)]] == 1
        v = tuple(rng.randint(0, 1) for _ in range(n))
        assert contains(U, v) == (v in _span(F2, rows, n))


def test_coordinates_and_ring_elements():
    F = gf(3)
    U = rref([RingElement(F, 3, [1, 2, 0]), RingElement(F, 3, [0, 1, 1])])
    for c in itertools.product(range(3), repeat=2):
        vec = tuple((c[0] * a + c[1] * b) % 3 for a, b in zip((1, 2, 0), (0, 1, 1)))
        coords = U.coordinates(vec)
        rebuilt = [0, 0, 0]
        for k, row in zip(coords, U.rows):
            rebuilt = [(x + k * y) % 3 for x, y in zip(rebuilt, row)]
        assert tuple(rebuilt) == vec
    assert (1, 0, 0) not in U
    with pytest.raises(ValueError):
        U.coordinates((1, 0, 0))


def test_text_round_trip_and_errors():
    F = gf(3)
    U = Subspace(F, 4, [(1, 2, 0, 1), (0, 1, 1, 1)])
    assert Subspace.from_text(U.to_text()) == U
    assert zero_space(F, 2).to_text() == "3 2 0\n"
    with pytest.raises(ParseError):
        Subspace.from_text("2 3 2\n101\n")
    with pytest.raises(ParseError):
        Subspace.from_text("2 3 2\n101\n101\n")
    with pytest.raises(ParseError):
        Subspace.from_text("garbage")
    big = Subspace(gf(11), 2, [(10, 3)])
    assert big.rows == ((1, 8),)  # scaled by 10^-1 = 10
    big = Subspace(gf(11), 2, [(1, 10)])
    assert "1,10" in big.to_text()
    assert Subspace.from_text(big.to_text()) == big


def test_dimension_checks():
    F = gf(2)
    with pytest.raises(DimensionMismatch):
        Subspace(F, 3, [(1, 0)])
    with pytest.raises(DimensionMismatch):
        intersect(full_space(F, 2), full_space(F, 3))


def test_matrices():
    F = gf(5)
    M = ((1, 2), (3, 4))
    Minv = mat_inv(F, M)
    assert mat_mul(F, M, Minv) == identity(2)
    with pytest.raises(NotInvertible):
        mat_inv(F, ((1, 2), (2, 4)))
    U = Subspace(F, 2, [(1, 0)])
    assert image(U, M) == Subspace(F, 2, [(1, 3)])


def test_shifted_moves_coordinates_right():
    F = gf(2)
    U = Subspace(F, 4, [(1, 1, 0, 0)])
    assert shifted(U, 1) == Subspace(F, 4, [(0, 1, 1, 0)])
    assert shifted(U, 4) == U
