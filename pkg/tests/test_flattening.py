import pytest

from secantkit.combinatorics import Shape
from secantkit.exactlinalg import Subspace, rank
from secantkit.flattening import (
    FlatteningSplit,
    MinorGenerator,
    expand_minor,
    flattening_space,
    generator_count,
    minor_generators,
    one_flattening_space,
    signed_permutations,
    splits,
)
from secantkit.prolongation import build_pi, secant_mus
from secantkit.zeroweight import basis_index, parse_block

from conftest import cached_flattening, cached_ideal


def test_worked_determinant_expansion():
    delta = (2, 1)
    g = MinorGenerator(
        alphas=(((1,), (1,)), ((3,), (4,)), ((7,), (3,))),
        betas=(((6,), ()), ((2,), ()), ((8,), ())),
        gammas=(((4, 5), (2,)),),
    )
    g.check(delta)
    tail = " ; 4,5|2"
    expected = {
        "1,6|1 ; 3,2|4 ; 7,8|3": 1,
        "1,2|1 ; 3,6|4 ; 7,8|3": -1,
        "1,8|1 ; 3,2|4 ; 7,6|3": -1,
        "1,6|1 ; 3,8|4 ; 7,2|3": -1,
        "1,8|1 ; 3,6|4 ; 7,2|3": 1,
        "1,2|1 ; 3,8|4 ; 7,6|3": 1,
    }
    assert expand_minor(g, delta) == {parse_block(t + tail, delta): c for t, c in expected.items()}


def test_generator_check_rejects_bad_labels():
    with pytest.raises(ValueError):
        MinorGenerator((((1,), (1,)),), (((1,), ()),), ()).check((2, 1))


def test_signed_permutations():
    perms = signed_permutations(3)
    assert len(perms) == 6
    assert sum(s for _, s in perms) == 0
    assert dict(perms)[(1, 0, 2)] == -1


def test_splits_up_to_transpose():
    assert [(s.A, s.B) for s in splits((2,))] == [((1,), (1,))]
    assert len(splits((1, 1, 1))) == 3
    assert len(splits((1, 1, 1), up_to_transpose=False)) == 6
    assert [(s.A, s.B) for s in splits((2, 1), one_sided=True)] == [((0, 1), (2, 0)), ((1, 0), (1, 1))]
    with pytest.raises(ValueError):
        FlatteningSplit((0, 0), (2, 1))


@pytest.mark.parametrize("delta,r,count", [
    ((1, 1, 1), 3, 18), ((1, 1, 1), 4, 1152), ((1, 1), 3, 1), ((2,), 3, 20), ((2,), 4, 560),
    ((2, 1), 3, 135), ((3,), 3, 1260), ((3,), 4, 277200), ((2, 1), 4, 15120),
])
def test_generator_counts(delta, r, count):
    assert sum(generator_count(s, r, 3) for s in splits(delta)) == count


@pytest.mark.parametrize("delta,r", [((1, 1, 1), 3), ((2, 1), 3), ((3,), 3), ((2,), 4)])
def test_generator_count_matches_enumeration(delta, r):
    for s in splits(delta):
        gens = list(minor_generators(s, r, 3))
        assert len(gens) == generator_count(s, r, 3)
        for g in gens[:50]:
            g.check(delta)


def test_transposed_splits_add_nothing(small_shape):
    index = basis_index(small_shape)
    vectors = [
        index.vector(expand_minor(g, small_shape.delta))
        for s in splits(small_shape.delta, up_to_transpose=False)
        for g in minor_generators(s, small_shape.r, 3)
    ]
    assert Subspace.span(vectors, len(index)) == cached_flattening(small_shape.delta, small_shape.r)


def test_saturation_matches_enumeration(small_shape):
    assert flattening_space(small_shape, method="saturate") == cached_flattening(small_shape.delta, small_shape.r)


def test_flattenings_lie_in_ideal(small_shape):
    F = cached_flattening(small_shape.delta, small_shape.r)
    for mu in secant_mus(small_shape):
        pi = build_pi(small_shape, mu)
        assert all(not pi.image(v) for v in F.basis)
    assert F == cached_ideal(small_shape.delta, small_shape.r)


def test_no_minors_below_their_size():
    assert flattening_space(Shape((1, 1, 1), 2)).dim == 0


@pytest.mark.parametrize("delta,r", [((1, 1, 1), 2), ((2,), 2), ((1, 1), 3), ((2, 1), 2)])
def test_two_by_two_minors_match_the_variety_ideal(delta, r):
    # k = 1: the 2x2 minors span the kernel of the collapse onto a single row
    shape = Shape(delta, r, k=1)
    pi = build_pi(shape, (r,))
    assert flattening_space(shape).dim == len(basis_index(shape)) - rank(pi.matrix)


def test_one_sided_space_is_inside_full_space():
    shape = Shape((2, 1), 3)
    F1 = one_flattening_space(shape)
    assert F1.issubspace(cached_flattening(shape.delta, shape.r))
