from itertools import product
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secantkit.closedform import (
    coordinate_ring_table,
    hilbert,
    lambda_stats,
    m_lambda,
    schur_of_pair_tensor,
    sym_of_sym3,
    sym_of_triple_tensor,
    table_dimension,
)
from secantkit.combinatorics import Shape, dim_schur, dim_specht, n_partitions, two_row_npartitions
from secantkit.graphmodel import count_types
from secantkit.prolongation import ideal_dim
from secantkit.zeroweight import basis_size


def test_lambda_stats():
    st_ = lambda_stats((3,), ((8, 4),))
    assert (st_.f, st_.e) == (2, 4)
    assert lambda_stats((1, 1, 1), ((2, 1),) * 3) == lambda_stats((1, 1, 1), ((2, 1), (2, 1), (2, 1)))


def test_documented_values():
    assert m_lambda(Shape((1, 1, 1), 3), ((2, 1),) * 3) == 1
    assert m_lambda(Shape((3,), 4), ((8, 4),)) == 1
    assert m_lambda(Shape((1, 1, 1), 3), ((1, 1, 1), (3,), (3,))) == 0
    # e < 2f
    assert m_lambda(Shape((2,), 3), ((4, 2),)) == 1
    assert m_lambda(Shape((1, 1), 3), ((2, 1), (3,))) == 0


def test_rejects_other_secant_orders_and_profiles():
    with pytest.raises(ValueError):
        m_lambda(Shape((1, 1), 3, k=3), ((3,), (3,)))
    with pytest.raises(ValueError):
        m_lambda(Shape((1, 1), 3), ((3,), (2,)))


@pytest.mark.parametrize("r", range(0, 9))
def test_triple_tensor_fills_the_space(r):
    table = sym_of_triple_tensor(r)
    assert table_dimension(table, (2, 2, 2)) == comb(r + 7, 7)


@pytest.mark.parametrize("r", range(0, 11))
def test_twisted_cubic_fills_the_space(r):
    assert sum(m * dim_schur(lam, 2) for lam, m in sym_of_sym3(r).items()) == comb(r + 3, 3)


def test_classical_degree_two_tables():
    assert sym_of_triple_tensor(2) == {
        ((2,), (2,), (2,)): 1,
        ((2,), (1, 1), (1, 1)): 1,
        ((1, 1), (2,), (1, 1)): 1,
        ((1, 1), (1, 1), (2,)): 1,
    }
    assert sym_of_sym3(2) == {(6,): 1, (4, 2): 1}
    assert sym_of_sym3(1) == {(3,): 1}
    assert sym_of_triple_tensor(1) == {((1,), (1,), (1,)): 1}
    assert sym_of_triple_tensor(0) == {((), (), ()): 1}
    assert schur_of_pair_tensor((1, 1)) == {((2,), (1, 1)): 1, ((1, 1), (2,)): 1}
    assert schur_of_pair_tensor((2,)) == {((2,), (2,)): 1, ((1, 1), (1, 1)): 1}


@pytest.mark.parametrize("mu", [(1,), (2,), (1, 1), (3,), (2, 1), (2, 2), (3, 1), (4, 2), (3, 3)])
def test_pair_tensor_dimensions(mu):
    table = schur_of_pair_tensor(mu)
    assert sum(m * dim_schur(a, 2) * dim_schur(b, 2) for (a, b), m in table.items()) == dim_schur(mu, 4)


def test_pair_tensor_rejects_long_mu():
    with pytest.raises(ValueError):
        schur_of_pair_tensor((1, 1, 1))


def test_hilbert():
    assert hilbert(Shape((1, 1, 1), 1), (3, 2, 4)) == 24
    assert hilbert(Shape((2, 1), 1), (2, 3)) == 9
    with pytest.raises(ValueError):
        hilbert(Shape((1, 1), 2), (1, 3))
    # the secant line variety of P2 x P2 is the determinantal cubic
    assert hilbert(Shape((1, 1), 3), (3, 3)) == comb(9 + 2, 3) - 1


@pytest.mark.parametrize("delta,r", [((1, 1, 1), 3), ((1, 1), 3), ((2,), 3), ((2,), 4), ((2, 1), 3), ((3,), 3)])
def test_coordinate_ring_dimension_is_image_of_pi(delta, r):
    shape = Shape(delta, r)
    table = coordinate_ring_table(shape)
    total = sum(m * _specht(lam) for lam, m in table.items())
    assert total == basis_size(shape) - ideal_dim(shape)


def _specht(lam):
    out = 1
    for part in lam:
        out *= dim_specht(part)
    return out


def test_count_types_matches_closed_form_on_a_grid():
    for n in (1, 2, 3):
        for delta in product(range(1, 4), repeat=n):
            for r in range(1, 7):
                shape = Shape(delta, r)
                if n == 3 and r > 4:
                    continue
                for lam in two_row_npartitions(shape):
                    assert count_types(shape, lam) == m_lambda(shape, lam), (delta, r, lam)


@settings(max_examples=60)
@given(st.integers(1, 3), st.integers(1, 6), st.data())
def test_factor_permutation_symmetry(d, r, data):
    shape = Shape((d, d), r)
    lam = data.draw(st.sampled_from(two_row_npartitions(shape)))
    assert m_lambda(shape, lam) == m_lambda(shape, (lam[1], lam[0]))


def test_three_row_components_vanish():
    shape = Shape((1, 1, 1), 3)
    for lam in n_partitions(shape):
        if any(len(p) > 2 for p in lam):
            assert m_lambda(shape, lam) == 0
