import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secantkit.combinatorics import Shape, partitions
from secantkit.zeroweight import (
    GroupElement,
    act,
    act_vector,
    adjacent_transpositions,
    basis_index,
    basis_size,
    canonical,
    enumerate_basis,
    format_block,
    is_canonical,
    parse_block,
    validate_block,
)

WORKED_BLOCK = "1,6|1 ; 2,3|4 ; 4,5|2 ; 7,8|3"


def brute_count(delta, r):
    """Distinct canonical blocks reached from every labelling of the cells."""
    seen = set()
    columns = []
    for d in delta:
        columns.append(list(permutations(range(1, r * d + 1))))
    # fix the first factor's labels up to the order of rows; enough for tiny cases
    for perms in _product(columns):
        rows = []
        for i in range(r):
            rows.append(tuple(tuple(sorted(p[i * d:(i + 1) * d])) for p, d in zip(perms, delta)))
        seen.add(canonical(rows, delta))
    return len(seen)


def _product(columns):
    if not columns:
        yield ()
        return
    for first in columns[0]:
        for rest in _product(columns[1:]):
            yield (first,) + rest


@pytest.mark.parametrize("delta,r", [((1, 1), 3), ((2,), 3), ((1, 1, 1), 2), ((2, 1), 2)])
def test_basis_size_against_brute_force(delta, r):
    shape = Shape(delta, r)
    assert basis_size(shape) == brute_count(delta, r) == len(enumerate_basis(shape))


@pytest.mark.parametrize("delta,r,n", [
    ((1, 1, 1), 3, 36), ((1, 1, 1), 4, 576), ((1, 1), 3, 6), ((2,), 3, 15),
    ((2,), 4, 105), ((2, 1), 3, 90), ((3,), 3, 280), ((3,), 4, 15400), ((2, 1), 4, 2520),
])
def test_basis_sizes(delta, r, n):
    assert basis_size(Shape(delta, r)) == n


@pytest.mark.parametrize("delta,r", [((1, 1, 1), 3), ((2, 1), 3), ((3,), 3), ((2,), 4)])
def test_enumeration_for_every_row_profile(delta, r):
    shape = Shape(delta, r)
    for mu in partitions(r):
        blocks = enumerate_basis(shape, mu)
        assert len(set(blocks)) == len(blocks)
        assert all(is_canonical(b, delta) for b in blocks)
        for b in blocks:
            validate_block(b, shape)


def test_worked_action_example():
    delta = (2, 1)
    block = parse_block(WORKED_BLOCK, delta)
    g = GroupElement.from_cycles((8, 4), [[(1, 2), (5, 3, 7)], [(1, 4, 3)]])
    assert act(g, block, delta) == parse_block("2,6|4 ; 1,7|3 ; 4,3|2 ; 5,8|1", delta)


@settings(max_examples=50)
@given(st.integers(0, 2**32))
def test_action_is_a_group_action(seed):
    rng = random.Random(seed)
    shape = Shape((2, 1), 3)
    blocks = enumerate_basis(shape)
    b = rng.choice(blocks)
    g = GroupElement.sample(shape.profile, rng)
    h = GroupElement.sample(shape.profile, rng)
    assert act(g * h, b, shape.delta) == act(g, act(h, b, shape.delta), shape.delta)
    assert act(g.inverse(), act(g, b, shape.delta), shape.delta) == b
    # the action permutes the basis
    assert basis_index(shape).get(act(g, b, shape.delta)) is not None


def test_adjacent_transpositions_generate_transitive_action():
    shape = Shape((1, 1), 3)
    gens = adjacent_transpositions(shape.profile)
    start = enumerate_basis(shape)[0]
    seen, todo = {start}, [start]
    while todo:
        b = todo.pop()
        for g in gens:
            c = act(g, b, shape.delta)
            if c not in seen:
                seen.add(c)
                todo.append(c)
    assert len(seen) == basis_size(shape)


def test_act_vector_cancels():
    delta = (1, 1)
    b = parse_block("1|1 ; 2|2", delta)
    swap = GroupElement.from_cycles((2, 2), [[(1, 2)], [(1, 2)]])
    assert act(swap, b, delta) == b
    assert act_vector(swap, {b: 1}, delta) == {b: 1}


def test_text_roundtrip_and_errors():
    delta = (2, 1)
    b = parse_block(WORKED_BLOCK, delta)
    assert parse_block(format_block(b), delta) == b
    assert format_block(b) == "1,6|1 ; 2,3|4 ; 4,5|2 ; 7,8|3"
    with pytest.raises(ValueError):
        parse_block("1,2|1|3", delta)
    with pytest.raises(ValueError):
        validate_block(parse_block("1,2|1 ; 1,3|2", delta), Shape(delta, 2))


def test_index_rejects_noncanonical():
    shape = Shape((1, 1), 2)
    index = basis_index(shape)
    rows = (((2,), (2,)), ((1,), (1,)))
    with pytest.raises(KeyError):
        index.index(rows)
    assert index.index(canonical(rows, shape.delta)) >= 0
