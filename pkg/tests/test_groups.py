import random

import pytest

from cyccover.cover import h_search, is_covering
from cyccover.cyclo import factor_xn_minus_1
from cyccover.errors import CapExceeded, CharDivides, NotDecomposition, NotInvariant, NotInvertible, ParseError
from cyccover.gf import gf
from cyccover.groups import (
    MatrixRep,
    cyclic_rep,
    decomposition_bounds,
    h_g_search,
    is_g_covering,
    is_invariant,
    maschke_complement,
    permutation_matrix,
    regular_rep_abelian,
    rep_close,
    restrict,
    shift_matrix,
    trivial_rep,
)
from cyccover.engine import floor_log
from cyccover.linalg import Subspace, direct_sum, full_space, identity, mat_mul


def test_closure_examples():
    assert cyclic_rep(2, 3).order == 3
    assert rep_close([identity(4)], gf(2)).order == 1
    assert cyclic_rep(3, 6).order == 6
    R = cyclic_rep(2, 5)
    elems = set(R.elements)
    assert identity(5) in elems
    for g in R.elements:
        for h in R.elements:
            assert mat_mul(R.field, g, h) in elems


def test_closure_errors():
    with pytest.raises(NotInvertible):
        rep_close([((1, 1), (1, 1))], gf(2))
    with pytest.raises(CapExceeded):
        rep_close([shift_matrix(7)], gf(2), cap=5)


def test_symmetric_group_closure():
    R = rep_close([permutation_matrix([1, 0, 2]), permutation_matrix([1, 2, 0])], gf(5))
    assert R.order == 6


def test_is_g_covering_examples():
    F = gf(2)
    R = cyclic_rep(2, 3)
    assert is_g_covering(full_space(F, 3), R)
    assert is_g_covering(Subspace(F, 3, [(1, 1, 1), (0, 0, 1)]), R)
    assert not is_g_covering(Subspace(F, 3, [(1, 0, 0), (0, 1, 0)]), trivial_rep(2, 3))


@pytest.mark.parametrize("q,n", [(2, 5), (2, 6), (3, 4)])
def test_g_covering_matches_cyclic_covering(q, n):
    R = cyclic_rep(q, n)
    rng = random.Random(n)
    for _ in range(30):
        rows = [[rng.randrange(q) for _ in range(n)] for _ in range(rng.randint(0, n))]
        U = Subspace(gf(q), n, rows)
        assert is_g_covering(U, R) == is_covering(U)


@pytest.mark.parametrize("q,n", [(2, 3), (2, 5), (2, 6), (2, 7), (3, 4), (3, 6), (2, 9)])
def test_h_g_search_matches_cyclic_search(q, n):
    res = h_g_search(cyclic_rep(q, n))
    assert res.h == h_search(q, n).h
    assert res.h <= floor_log(q, n)


def test_h_g_search_examples():
    assert h_g_search(cyclic_rep(2, 3)).h == 1
    assert h_g_search(cyclic_rep(3, 6)).h == 0
    assert h_g_search(trivial_rep(3, 4)).h == 0


@pytest.mark.parametrize("q,orders", [(3, (2, 3)), (3, (3,)), (3, (9,)), (2, (4,)), (5, (2,)), (7, (3,)), (2, (2, 2))])
def test_abelian_times_p_group_has_no_cover(q, orders):
    R = regular_rep_abelian(q, orders)
    assert R.order == R.dim
    assert h_g_search(R).h == 0


def test_maschke_examples():
    F = gf(2)
    R = cyclic_rep(2, 3)
    W = Subspace(F, 3, [(1, 1, 1)])
    Wc = maschke_complement(W, R)
    assert Wc == Subspace(F, 3, [(1, 1, 0), (0, 1, 1)])
    T = trivial_rep(3, 4)
    W = Subspace(gf(3), 4, [(1, 0, 0, 0), (0, 1, 0, 0)])
    assert maschke_complement(W, T) == Subspace(gf(3), 4, [(0, 0, 1, 0), (0, 0, 0, 1)])
    with pytest.raises(CharDivides):
        maschke_complement(Subspace(F, 2, [(1, 1)]), cyclic_rep(2, 2))
    with pytest.raises(NotInvariant):
        maschke_complement(Subspace(F, 3, [(1, 0, 0)]), R)


@pytest.mark.parametrize("q,n", [(2, 7), (2, 9), (3, 4), (3, 5), (5, 3)])
def test_maschke_on_components(q, n):
    R = cyclic_rep(q, n)
    F = factor_xn_minus_1(q, n)
    for i in range(len(F.factors)):
        W = F.component(i)
        Wc = maschke_complement(W, R)
        assert is_invariant(Wc, R)
        assert direct_sum(W, Wc).dim == n


def _in_coords(V, U):
    return Subspace(V.field, V.dim, [V.coordinates(r) for r in U.rows])


def test_decomposition_bounds_on_two_field_components():
    Fa = factor_xn_minus_1(2, 21)
    W1 = Fa.component(Fa.index_of(7))
    W2 = Fa.component(Fa.index_of(3))
    V = direct_sum(W1, W2)
    RV = restrict(cyclic_rep(2, 21), V)
    b = decomposition_bounds(RV, [_in_coords(V, W1), _in_coords(V, W2)])
    assert b.h_parts == (1, 2)
    assert b.h_total == 3 == b.sum_bound
    assert b.log_bound == 4
    assert b.holds


def test_decomposition_bounds_small_cases():
    F = gf(2)
    R = cyclic_rep(2, 3)
    W1 = Subspace(F, 3, [(1, 1, 1)])
    W2 = maschke_complement(W1, R)
    b = decomposition_bounds(R, [W1, W2])
    assert b.lower <= b.h_total <= b.upper
    single = decomposition_bounds(R, [full_space(F, 3)])
    assert single.h_parts == (single.h_total,) == (1,)
    with pytest.raises(NotDecomposition):
        decomposition_bounds(R, [W1, W1])
    with pytest.raises(NotDecomposition):
        decomposition_bounds(R, [Subspace(F, 3, [(1, 0, 0)])])


@pytest.mark.parametrize("q,n", [(2, 7), (2, 9), (3, 8), (2, 5), (3, 4)])
def test_invariant_subspace_bounds(q, n):
    R = cyclic_rep(q, n)
    h_total = h_g_search(R).h
    F = factor_xn_minus_1(q, n)
    parts = [F.component(i) for i in range(len(F.factors))]
    hs = [h_g_search(restrict(R, W)).h for W in parts]
    assert all(h <= h_total for h in hs)
    assert h_total <= sum(hs)


def test_representation_file_round_trip():
    R = regular_rep_abelian(3, (2, 3))
    back = MatrixRep.from_text(R.to_text())
    assert back.generators == R.generators and back.order == 6
    with pytest.raises(ParseError):
        MatrixRep.from_text("2 2 1\n1 0 0")
    with pytest.raises(ParseError):
        MatrixRep.from_text("2 x 1")
