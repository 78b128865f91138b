import pytest

from secantkit.combinatorics import Shape, partitions
from secantkit.exactlinalg import ExactMatrix, rank
from secantkit.prolongation import (
    build_pi,
    generic_ideal_part,
    grouping_count,
    ideal_dim,
    pi_image,
    row_groupings,
    secant_mus,
    set_partitions,
)
from secantkit.zeroweight import parse_block

from conftest import cached_flattening

DELTA = (2, 1)
WORKED_BLOCK = "1,6|1 ; 2,3|4 ; 4,5|2 ; 7,8|3"


def blocks(*texts):
    return {parse_block(t, DELTA): 1 for t in texts}


def test_worked_pi_22():
    image = pi_image(parse_block(WORKED_BLOCK, DELTA), (2, 2), DELTA)
    assert image == blocks(
        "1,2,3,6|1,4 ; 4,5,7,8|2,3",
        "1,4,5,6|1,2 ; 2,3,7,8|3,4",
        "1,6,7,8|1,3 ; 2,3,4,5|2,4",
    )


def test_worked_pi_211():
    image = pi_image(parse_block(WORKED_BLOCK, DELTA), (2, 1, 1), DELTA)
    assert image == blocks(
        "1,2,3,6|1,4 ; 4,5|2 ; 7,8|3",
        "1,4,5,6|1,2 ; 2,3|4 ; 7,8|3",
        "1,6,7,8|1,3 ; 2,3|4 ; 4,5|2",
        "2,3,4,5|2,4 ; 1,6|1 ; 7,8|3",
        "2,3,7,8|3,4 ; 1,6|1 ; 4,5|2",
        "4,5,7,8|2,3 ; 1,6|1 ; 2,3|4",
    )


def test_collapsing_after_211_gives_twice_22():
    shape = Shape(DELTA, 4)
    p211 = build_pi(shape, (2, 1, 1))
    p22_from_211 = build_pi(shape, (2, 2), source_mu=(2, 1, 1))
    p22 = build_pi(shape, (2, 2))
    for j in range(len(p211.source)):
        v = p22_from_211.image(p211.image({j: 1}))
        assert v == {i: 2 * c for i, c in p22.image({j: 1}).items()}


def test_set_partitions_count():
    bell = [1, 1, 2, 5, 15, 52]
    for n, b in enumerate(bell):
        assert sum(1 for _ in set_partitions(tuple(range(n)))) == b


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_grouping_counts(r):
    for mu in partitions(r):
        assert len(row_groupings((1,) * r, mu)) == grouping_count(mu)


def test_secant_mus():
    assert secant_mus(Shape((1,), 5)) == ((4, 1), (3, 2))
    assert secant_mus(Shape((1,), 2)) == ((1, 1),)


@pytest.mark.parametrize("delta,r,dim", [
    ((1, 1, 1), 3, 15), ((1, 1, 1), 4, 447), ((1, 1), 3, 1), ((2,), 3, 5),
    ((2,), 4, 70), ((2, 1), 3, 52), ((3,), 3, 204), ((1, 1, 1), 2, 0),
])
def test_ideal_dimensions(delta, r, dim):
    assert ideal_dim(Shape(delta, r)) == dim


def test_incremental_intersection_matches_stacked_rank(small_shape):
    I = generic_ideal_part(small_shape)
    assert I.dim == ideal_dim(small_shape)
    for mu in secant_mus(small_shape):
        pi = build_pi(small_shape, mu)
        assert all(not pi.image(v) for v in I.basis)


def test_early_stop_with_known_subspace(small_shape):
    F = cached_flattening(small_shape.delta, small_shape.r)
    assert generic_ideal_part(small_shape, flattening=F) == generic_ideal_part(small_shape)


def test_pi_matrix_shape():
    pi = build_pi(Shape((1, 1, 1), 3), (2, 1))
    assert (pi.matrix.rows, pi.matrix.cols) == (27, 36)
    assert pi.matrix.nnz() == 36 * 3
    assert rank(pi.matrix) == 36 - 15
    assert isinstance(pi.matrix, ExactMatrix)
