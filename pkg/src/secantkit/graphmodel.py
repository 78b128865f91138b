"""Edge-colored multigraphs standing for two-row n-tableaux.

Vertex v is block row v.  A column of length two in the i-th tableau, with x
on top and y below, becomes an edge x -> y of color i; the one-box columns carry
no edges.  Applying the Young symmetrizer to the block assembled from a graph
gives the graph's vector.
"""

from __future__ import annotations

import random
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import networkx as nx

from .closedform import lambda_stats
from .combinatorics import NPartition, Shape
from .exactlinalg import Subspace
from .repmult import apply_symmetrizer, hwt_coordinates
from .zeroweight import Block, basis_index, canonical

Edge = tuple[int, int, int]


@dataclass(frozen=True)
class ColoredGraph:
    """Vertices 1..r and a multiset of oriented edges (source, target, color)."""

    r: int
    edges: tuple[Edge, ...] = field(default_factory=tuple)

    def color_degrees(self, color: int) -> Counter:
        deg: Counter = Counter()
        for s, t, c in self.edges:
            if c == color:
                deg[s] += 1
                deg[t] += 1
        return deg

    def check(self, delta: Sequence[int]) -> None:
        for s, t, c in self.edges:
            if not (1 <= s <= self.r and 1 <= t <= self.r):
                raise ValueError(f"edge ({s}, {t}) leaves the vertex range 1..{self.r}")
            if not 1 <= c <= len(delta):
                raise ValueError(f"color {c} out of range")
        for c, d in enumerate(delta, start=1):
            if any(v > d for v in self.color_degrees(c).values()):
                raise ValueError(f"a vertex has more than {d} edges of color {c}")

    def edge_counts(self, n: int) -> tuple[int, ...]:
        counts = Counter(c for _, _, c in self.edges)
        return tuple(counts[c] for c in range(1, n + 1))

    def reversed_edge(self, i: int) -> ColoredGraph:
        s, t, c = self.edges[i]
        edges = list(self.edges)
        edges[i] = (t, s, c)
        return ColoredGraph(self.r, tuple(edges))

    def multigraph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(range(1, self.r + 1))
        g.add_edges_from((s, t) for s, t, _ in self.edges)
        return g


def format_graph(g: ColoredGraph) -> str:
    edges = ",".join(f"({s},{t},c{c})" for s, t, c in g.edges)
    return f"r={g.r}; edges={edges}"


def parse_graph(text: str) -> ColoredGraph:
    """Parse ``"r=4; edges=(1,2,c1),(2,3,c3)"``."""
    m = re.fullmatch(r"\s*r\s*=\s*(\d+)\s*;\s*edges\s*=\s*(.*)", text)
    if not m:
        raise ValueError(f"malformed graph text: {text!r}")
    edges = tuple(
        (int(s), int(t), int(c)) for s, t, c in re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*,\s*c(\d+)\s*\)", m.group(2))
    )
    return ColoredGraph(int(m.group(1)), edges)


def _check_two_row(lam: NPartition) -> None:
    if any(len(part) > 2 for part in lam):
        raise ValueError("graphs encode two-row tableaux only")


def tableau_to_graph(lam: NPartition, tableaux: Sequence[Sequence[Sequence[int]]], r: int) -> ColoredGraph:
    """One edge per length-two column: top entry -> bottom entry, colored by factor."""
    _check_two_row(lam)
    edges = []
    for color, (part, tab) in enumerate(zip(lam, tableaux), start=1):
        if tuple(len(row) for row in tab if row) != tuple(part):
            raise ValueError(f"tableau {tab} does not have shape {part}")
        if len(tab) == 2:
            for top, bottom in zip(tab[0], tab[1]):
                edges.append((top, bottom, color))
    return ColoredGraph(r, tuple(edges))


def graph_tableaux(g: ColoredGraph, lam: NPartition, delta: Sequence[int]) -> list[list[list[int]]]:
    """Tableaux with the edges as leading columns and leftover vertex copies in the first row."""
    _check_two_row(lam)
    g.check(delta)
    if g.edge_counts(len(delta)) != tuple(part[1] if len(part) > 1 else 0 for part in lam):
        raise ValueError("edge counts per color do not match the second rows of lam")
    out = []
    for color, (part, d) in enumerate(zip(lam, delta), start=1):
        top, bottom = [], []
        for s, t, c in g.edges:
            if c == color:
                top.append(s)
                bottom.append(t)
        deg = g.color_degrees(color)
        for v in range(1, g.r + 1):
            top.extend([v] * (d - deg[v]))
        if len(top) != part[0]:
            raise ValueError("first row length does not match lam")
        out.append([top, bottom] if bottom else [top])
    return out


def assemble_block(g: ColoredGraph, lam: NPartition, delta: Sequence[int]) -> Block:
    """Block whose row v holds the boxes filled with v in each tableau."""
    rows = [[[] for _ in delta] for _ in range(g.r)]
    for j, tab in enumerate(graph_tableaux(g, lam, delta)):
        label = 1
        for row in tab:
            for v in row:
                rows[v - 1][j].append(label)
                label += 1
    return canonical(rows, delta)


def graph_vector(g: ColoredGraph, lam: NPartition, delta: Sequence[int]) -> dict[Block, int]:
    """The Young symmetrizer of ``lam`` applied to the assembled block."""
    return apply_symmetrizer(lam, {assemble_block(g, lam, delta): 1}, delta)


def graph_hwt(g: ColoredGraph, lam: NPartition, delta: Sequence[int]) -> dict[Block, int]:
    """The graph's vector in specialized coordinates (injective on such vectors)."""
    return hwt_coordinates(lam, assemble_block(g, lam, delta), delta)


def has_odd_cycle(g: ColoredGraph) -> bool:
    """True iff the underlying multigraph is not bipartite; a loop counts as odd."""
    return not nx.is_bipartite(g.multigraph())


@dataclass(frozen=True)
class McbType:
    a: int
    b: int


def _bipartition(component: nx.MultiGraph) -> tuple[set[int], set[int]]:
    if component.number_of_nodes() == 1:
        return set(component.nodes), set()
    left, right = nx.bipartite.sets(component)
    return set(left), set(right)


def maximal_component(g: ColoredGraph) -> set[int] | None:
    """Vertex set of the unique component that can carry edges, if G is MCB."""
    mg = g.multigraph()
    if not nx.is_bipartite(mg):
        return None
    comps = sorted((set(c) for c in nx.connected_components(mg)), key=lambda c: (-len(c), min(c)))
    if len(comps) == 1:
        return comps[0]
    big = comps[0]
    if any(len(c) > 1 for c in comps[1:]):
        return None
    if len(big) > 1 and mg.subgraph(big).number_of_edges() != len(big) - 1:
        return None
    return big


def mcb_type(g: ColoredGraph) -> McbType | None:
    """(a, b) sizes of the bipartition of the maximal component, a >= b; None if not MCB."""
    comp = maximal_component(g)
    if comp is None:
        return None
    left, right = _bipartition(g.multigraph().subgraph(comp))
    a, b = sorted((len(left), len(right)), reverse=True)
    return McbType(a, b)


def canonically_oriented(g: ColoredGraph) -> ColoredGraph:
    """Orient every edge from the larger side to the smaller one.

    With equal sides the edges leave the side holding the smallest vertex of
    the maximal component.
    """
    comp = maximal_component(g)
    if comp is None:
        raise ValueError("only MCB graphs have a canonical orientation")
    left, right = _bipartition(g.multigraph().subgraph(comp))
    if len(left) < len(right) or (len(left) == len(right) and min(comp) not in left):
        left, right = right, left
    edges = tuple((s, t, c) if s in left else (t, s, c) for s, t, c in g.edges)
    return ColoredGraph(g.r, edges)


def admissible_types(shape: Shape, lam: NPartition) -> list[McbType]:
    """Types (a', b') with a' + b' = min(e + 1, r), b' >= f, a' >= b', and a' != b' for odd e."""
    _check_two_row(lam)
    st = lambda_stats(shape.delta, lam)
    total = min(st.e + 1, shape.r)
    out = []
    for b in range(st.f, total // 2 + 1):
        a = total - b
        if a == b and st.e % 2 == 1:
            continue
        out.append(McbType(a, b))
    return out


def count_types(shape: Shape, lam: NPartition) -> int:
    if any(len(part) > 2 for part in lam):
        return 0
    return len(admissible_types(shape, lam))


def vanishing_certificate(g: ColoredGraph, lam: NPartition, F: Subspace, shape: Shape) -> bool:
    """Whether the graph's vector lies in the flattening space F."""
    index = basis_index(shape)
    if F.ambient_dim != len(index) or g.r != shape.r:
        raise ValueError("shape mismatch between the graph and F")
    return F.contains(index.vector(graph_vector(g, lam, shape.delta)))


def vector_in(F: Subspace, shape: Shape, combination: Mapping[Block, int]) -> bool:
    return F.contains(basis_index(shape).vector(combination))


def random_graph(shape: Shape, lam: NPartition, rng: random.Random, attempts: int = 1000) -> ColoredGraph | None:
    """A random graph with lam's edge counts respecting the per-color degree caps."""
    for _ in range(attempts):
        edges: list[Edge] = []
        ok = True
        for color, (part, d) in enumerate(zip(lam, shape.delta), start=1):
            deg: Counter = Counter()
            for _ in range(part[1] if len(part) > 1 else 0):
                free = [v for v in range(1, shape.r + 1) if deg[v] < d]
                if len(free) < 2:
                    ok = False
                    break
                s, t = rng.sample(free, 2)
                deg[s] += 1
                deg[t] += 1
                edges.append((s, t, color))
            if not ok:
                break
        if ok:
            return ColoredGraph(shape.r, tuple(edges))
    return None


def random_mcb_graph(shape: Shape, lam: NPartition, kind: McbType, rng: random.Random,
                     attempts: int = 2000) -> ColoredGraph | None:
    """A random canonically oriented MCB graph of the given type, or None if none was found."""
    st = lambda_stats(shape.delta, lam)
    if kind.a + kind.b != min(st.e + 1, shape.r):
        return None
    for _ in range(attempts):
        verts = list(range(1, shape.r + 1))
        rng.shuffle(verts)
        left, right = verts[:kind.a], verts[kind.a:kind.a + kind.b]
        edges: list[Edge] = []
        ok = True
        for color, (part, d) in enumerate(zip(lam, shape.delta), start=1):
            deg: Counter = Counter()
            for _ in range(part[1] if len(part) > 1 else 0):
                ls = [v for v in left if deg[v] < d]
                rs = [v for v in right if deg[v] < d]
                if not ls or not rs:
                    ok = False
                    break
                s, t = rng.choice(ls), rng.choice(rs)
                deg[s] += 1
                deg[t] += 1
                edges.append((s, t, color))
            if not ok:
                break
        if not ok:
            continue
        g = ColoredGraph(shape.r, tuple(edges))
        if mcb_type(g) == kind:
            return canonically_oriented(g)
    return None
