import random

import pytest

from secantkit.combinatorics import Shape, two_row_npartitions
from secantkit.graphmodel import (
    ColoredGraph,
    McbType,
    admissible_types,
    assemble_block,
    canonically_oriented,
    count_types,
    format_graph,
    graph_hwt,
    graph_tableaux,
    graph_vector,
    has_odd_cycle,
    mcb_type,
    parse_graph,
    random_graph,
    random_mcb_graph,
    tableau_to_graph,
    vanishing_certificate,
)
from secantkit.repmult import apply_symmetrizer
from secantkit.zeroweight import canonical

from conftest import cached_flattening

TRIPLE = (1, 1, 1)
LAM21 = ((2, 1),) * 3


def negate(v):
    return {b: -c for b, c in v.items()}


def test_worked_triangle():
    g = tableau_to_graph(LAM21, [[[1, 2], [3]], [[1, 3], [2]], [[2, 1], [3]]], 3)
    assert sorted(g.edges) == [(1, 2, 2), (1, 3, 1), (2, 3, 3)]
    assert has_odd_cycle(g)
    assert mcb_type(g) is None


def test_worked_double_edge():
    lam = ((2, 1), (2, 1))
    g = tableau_to_graph(lam, [[[1, 3], [2]], [[1, 3], [2]]], 3)
    assert sorted(g.edges) == [(1, 2, 1), (1, 2, 2)]
    assert not has_odd_cycle(g)
    assert mcb_type(g) is None


def test_edgeless_graph():
    g = tableau_to_graph(((3,), (3,)), [[[1, 2, 3]], [[1, 2, 3]]], 3)
    assert g.edges == ()
    assert mcb_type(g) == McbType(1, 0)


def test_three_row_shapes_rejected():
    with pytest.raises(ValueError):
        tableau_to_graph(((1, 1, 1),), [[[1], [2], [3]]], 3)


@pytest.mark.parametrize("edges,expected", [
    (((1, 2, 1), (2, 3, 1)), McbType(2, 1)),
    (((1, 2, 1), (3, 4, 1)), None),
    (((1, 2, 1), (2, 3, 2), (3, 4, 3), (4, 5, 1), (5, 1, 2)), None),
    (((1, 2, 1), (1, 2, 2)), McbType(1, 1)),
])
def test_mcb_types(edges, expected):
    g = ColoredGraph(max(max(s, t) for s, t, _ in edges), edges)
    assert mcb_type(g) == expected


def test_odd_cycles():
    five = ColoredGraph(5, ((1, 2, 1), (2, 3, 2), (3, 4, 3), (4, 5, 1), (5, 1, 2)))
    assert has_odd_cycle(five)
    assert has_odd_cycle(ColoredGraph(2, ((1, 1, 1),)))
    assert not has_odd_cycle(ColoredGraph(4, ((1, 2, 1), (2, 3, 1), (3, 4, 2), (4, 1, 3))))


def test_text_roundtrip():
    g = parse_graph("r=4; edges=(1,2,c1),(2,3,c3)")
    assert g == ColoredGraph(4, ((1, 2, 1), (2, 3, 3)))
    assert parse_graph(format_graph(g)) == g
    with pytest.raises(ValueError):
        parse_graph("edges=(1,2,c1)")


def test_degree_caps():
    with pytest.raises(ValueError):
        ColoredGraph(3, ((1, 2, 1), (1, 3, 1))).check(TRIPLE)
    ColoredGraph(3, ((1, 2, 1), (1, 3, 1))).check((2, 1, 1))


def test_reversing_an_edge_negates_the_vector():
    g = ColoredGraph(3, ((1, 2, 1), (2, 3, 2), (1, 2, 3)))
    v = graph_vector(g, LAM21, TRIPLE)
    assert v
    assert graph_vector(g.reversed_edge(1), LAM21, TRIPLE) == negate(v)


def test_loop_gives_zero():
    lam = ((5, 1), (2, 1), (2, 1))
    g = ColoredGraph(3, ((1, 1, 1), (2, 3, 2), (1, 3, 3)))
    assert graph_vector(g, lam, (2, 1, 1)) == {}


def test_column_order_does_not_matter():
    lam = ((2, 2), (2, 2), (2, 2))
    g = ColoredGraph(4, ((1, 2, 1), (3, 4, 1), (1, 4, 2), (3, 2, 2), (1, 2, 3), (3, 4, 3)))
    tabs = graph_tableaux(g, lam, TRIPLE)
    swapped = [[list(reversed(row)) for row in tabs[0]]] + tabs[1:]
    rows = [[[] for _ in TRIPLE] for _ in range(4)]
    for j, tab in enumerate(swapped):
        label = 1
        for row in tab:
            for v in row:
                rows[v - 1][j].append(label)
                label += 1
    other = canonical(rows, TRIPLE)
    assert other != assemble_block(g, lam, TRIPLE)
    assert apply_symmetrizer(lam, {other: 1}, TRIPLE) == graph_vector(g, lam, TRIPLE)


def test_graph_hwt_is_nonzero_exactly_when_vector_is():
    rng = random.Random(5)
    shape = Shape(TRIPLE, 3)
    for lam in two_row_npartitions(shape):
        for _ in range(5):
            g = random_graph(shape, lam, rng)
            assert bool(graph_hwt(g, lam, TRIPLE)) == bool(graph_vector(g, lam, TRIPLE))


def test_incompatible_counts():
    with pytest.raises(ValueError):
        graph_vector(ColoredGraph(3, ((1, 2, 1),)), LAM21, TRIPLE)


def test_documented_type_counts():
    assert count_types(Shape(TRIPLE, 3), LAM21) == 1
    assert admissible_types(Shape(TRIPLE, 3), LAM21) == [McbType(2, 1)]
    assert admissible_types(Shape(TRIPLE, 4), ((2, 2),) * 3) == [McbType(2, 2)]
    assert count_types(Shape(TRIPLE, 3), ((1, 1, 1), (3,), (3,))) == 0
    # e < 2f
    assert count_types(Shape((1, 1), 4), ((2, 2), (4,))) == 0


def test_canonical_orientation():
    g = ColoredGraph(3, ((2, 1, 1), (3, 2, 2)))
    h = canonically_oriented(g)
    assert sorted(h.edges) == [(1, 2, 1), (3, 2, 2)]
    with pytest.raises(ValueError):
        canonically_oriented(ColoredGraph(3, ((1, 2, 1), (2, 3, 2), (3, 1, 3))))


def test_triangle_certificate():
    shape = Shape(TRIPLE, 3)
    F = cached_flattening(TRIPLE, 3)
    g = ColoredGraph(3, ((1, 3, 1), (1, 2, 2), (2, 3, 3)))
    assert vanishing_certificate(g, LAM21, F, shape)


def test_nonzero_graph_at_degree_two_is_not_in_f():
    shape = Shape(TRIPLE, 2)
    F = cached_flattening(TRIPLE, 2)
    lam = ((1, 1), (1, 1), (2,))
    g = ColoredGraph(2, ((1, 2, 1), (1, 2, 2)))
    assert graph_vector(g, lam, TRIPLE)
    assert not vanishing_certificate(g, lam, F, shape)


def test_certificate_shape_mismatch():
    with pytest.raises(ValueError):
        vanishing_certificate(ColoredGraph(4, ()), ((4,),) * 3, cached_flattening(TRIPLE, 3), Shape(TRIPLE, 3))


def test_random_mcb_graph_has_requested_type():
    rng = random.Random(11)
    shape = Shape((2, 1), 3)
    lam = ((4, 2), (2, 1))
    g = random_mcb_graph(shape, lam, McbType(2, 1), rng)
    assert g is not None and mcb_type(g) == McbType(2, 1)
    assert random_mcb_graph(shape, lam, McbType(3, 1), rng) is None


@pytest.mark.parametrize("edges,lam", [
    (((1, 2, 1), (3, 4, 2), (3, 4, 3)), ((3, 1), (3, 1), (3, 1))),
    (((1, 2, 1), (1, 2, 2), (1, 2, 3), (3, 4, 1)), ((2, 2), (3, 1), (3, 1))),
])
def test_two_node_component_with_odd_edge_count_is_in_f(edges, lam):
    shape = Shape(TRIPLE, 4)
    g = ColoredGraph(4, edges)
    assert vanishing_certificate(g, lam, cached_flattening(TRIPLE, 4), shape)
