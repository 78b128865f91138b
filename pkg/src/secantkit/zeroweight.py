"""Generic zero-weight spaces as spans of canonical blocks.

A block is a tuple of rows; a row is a tuple of cells, one per factor; a cell is
a sorted tuple of labels.  In factor j the cells of a block partition the labels
{1, ..., r*d_j}, and a row of size s has cells of sizes s*d_j.  Rows are stored
grouped by decreasing size, and rows of equal size are sorted lexicographically,
so every block has exactly one stored form.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import factorial, prod
from typing import Iterator, Sequence

from .combinatorics import Partition, Shape, check_partition

Cell = tuple[int, ...]
Row = tuple[Cell, ...]
Block = tuple[Row, ...]


def row_size(row: Row, delta: Sequence[int]) -> int:
    return len(row[0]) // delta[0]


def canonical(rows, delta: Sequence[int]) -> Block:
    """Sort cells and rows into the stored form."""
    d0 = delta[0]
    fixed = [tuple(tuple(sorted(c)) for c in row) for row in rows]
    fixed.sort(key=lambda row: (-(len(row[0]) // d0), row))
    return tuple(fixed)


def is_canonical(block: Block, delta: Sequence[int]) -> bool:
    return canonical(block, delta) == block


def row_profile(block: Block, delta: Sequence[int]) -> Partition:
    return tuple(row_size(row, delta) for row in block)


def validate_block(block: Block, shape: Shape) -> None:
    mu = row_profile(block, shape.delta)
    if sum(mu) != shape.r:
        raise ValueError(f"block rows {mu} do not partition r={shape.r}")
    for j, d in enumerate(shape.delta):
        labels = sorted(x for row in block for x in row[j])
        if labels != list(range(1, shape.r * d + 1)):
            raise ValueError(f"column {j + 1} is not a partition of 1..{shape.r * d}")
        for row, s in zip(block, mu):
            if len(row[j]) != s * d:
                raise ValueError("cell size does not match its row size")


def basis_size(shape: Shape) -> int:
    """Closed form for the number of blocks with all rows of size one."""
    r = shape.r
    num = prod(factorial(r * d) for d in shape.delta)
    return num // (prod(factorial(d) for d in shape.delta) ** r * factorial(r))


def _unordered_partitions(labels: tuple[int, ...], size: int) -> Iterator[list[Cell]]:
    """Partitions of ``labels`` into unordered cells of equal ``size``."""
    if not labels:
        yield []
        return
    first, rest = labels[0], labels[1:]
    for others in combinations(rest, size - 1):
        cell = (first,) + others
        remaining = tuple(x for x in rest if x not in others)
        for tail in _unordered_partitions(remaining, size):
            yield [cell] + tail


def _ordered_partitions(labels: tuple[int, ...], sizes: Sequence[int]) -> Iterator[list[Cell]]:
    if not sizes:
        yield []
        return
    for cell in combinations(labels, sizes[0]):
        chosen = set(cell)
        remaining = tuple(x for x in labels if x not in chosen)
        for tail in _ordered_partitions(remaining, sizes[1:]):
            yield [cell] + tail


def _grouped_first_column(labels: tuple[int, ...], groups: Sequence[tuple[int, int]]) -> Iterator[list[Cell]]:
    """Cells for the first factor, unordered within each group of equal row size."""
    if not groups:
        yield []
        return
    size, count = groups[0]
    for union in combinations(labels, size * count):
        chosen = set(union)
        remaining = tuple(x for x in labels if x not in chosen)
        for cells in _unordered_partitions(union, size):
            for tail in _grouped_first_column(remaining, groups[1:]):
                yield sorted(cells) + tail


@lru_cache(maxsize=64)
def _basis(delta: tuple[int, ...], r: int, mu: Partition) -> tuple[Block, ...]:
    groups = []
    for s in sorted(set(mu), reverse=True):
        groups.append((s * delta[0], mu.count(s)))
    blocks = []
    others = [tuple(range(1, r * d + 1)) for d in delta[1:]]
    for first in _grouped_first_column(tuple(range(1, r * delta[0] + 1)), groups):
        rest = [_ordered_partitions(labels, [s * d for s in mu]) for labels, d in zip(others, delta[1:])]
        for cols in product(*[list(x) for x in rest]):
            rows = tuple(
                tuple([first[i]] + [col[i] for col in cols]) for i in range(len(mu))
            )
            blocks.append(rows)
    blocks.sort()
    return tuple(blocks)


def enumerate_basis(shape: Shape, mu: Partition | None = None) -> tuple[Block, ...]:
    """All canonical blocks of row profile ``mu`` (default all ones), sorted."""
    if mu is None:
        mu = (1,) * shape.r
    mu = check_partition(tuple(mu), shape.r)
    return _basis(shape.delta, shape.r, mu)


class BasisIndex:
    """Ordered basis of one block space with reverse lookup."""

    def __init__(self, shape: Shape, mu: Partition | None = None):
        self.shape = shape
        self.mu = tuple(mu) if mu is not None else (1,) * shape.r
        self.blocks = enumerate_basis(shape, self.mu)
        self._index = {b: i for i, b in enumerate(self.blocks)}

    def __len__(self) -> int:
        return len(self.blocks)

    def __getitem__(self, i: int) -> Block:
        return self.blocks[i]

    def __iter__(self):
        return iter(self.blocks)

    def index(self, block: Block) -> int:
        try:
            return self._index[block]
        except KeyError:
            raise KeyError(f"block not in basis (not canonical?): {format_block(block)}") from None

    def get(self, block: Block) -> int | None:
        return self._index.get(block)

    def vector(self, combination: dict[Block, int]) -> dict[int, int]:
        """Coordinates of a block combination in this basis."""
        out: dict[int, int] = {}
        for b, c in combination.items():
            if c:
                i = self.index(b)
                out[i] = out.get(i, 0) + c
        return {i: c for i, c in out.items() if c}

    def combination(self, vector: dict[int, int]) -> dict[Block, int]:
        return {self.blocks[i]: c for i, c in vector.items() if c}


@lru_cache(maxsize=64)
def basis_index(shape: Shape, mu: Partition | None = None) -> BasisIndex:
    return BasisIndex(shape, mu)


def index_of(block: Block, basis: Sequence[Block]) -> int:
    """Position of a canonical block in an ordered basis."""
    if isinstance(basis, BasisIndex):
        return basis.index(block)
    for i, b in enumerate(basis):
        if b == block:
            return i
    raise KeyError(f"block not in basis (not canonical?): {format_block(block)}")


@dataclass(frozen=True)
class GroupElement:
    """An element of the product of symmetric groups S_{r d_1} x ... x S_{r d_n}.

    ``perms[j][x]`` is the image of label x in factor j; index 0 is unused.
    """

    perms: tuple[tuple[int, ...], ...]

    @classmethod
    def identity(cls, profile: Sequence[int]) -> GroupElement:
        return cls(tuple(tuple(range(m + 1)) for m in profile))

    @classmethod
    def from_cycles(cls, profile: Sequence[int], cycles: Sequence[Sequence[Sequence[int]]]) -> GroupElement:
        """Build from cycle notation per factor; each cycle maps x_i to x_{i+1}."""
        perms = []
        for m, factor in zip(profile, cycles):
            p = list(range(m + 1))
            for cyc in factor:
                for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                    p[a] = b
            if sorted(p) != list(range(m + 1)):
                raise ValueError("cycles do not define a permutation")
            perms.append(tuple(p))
        return cls(tuple(perms))

    @classmethod
    def sample(cls, profile: Sequence[int], rng: random.Random) -> GroupElement:
        perms = []
        for m in profile:
            images = list(range(1, m + 1))
            rng.shuffle(images)
            perms.append((0, *images))
        return cls(tuple(perms))

    def __mul__(self, other: GroupElement) -> GroupElement:
        """Composition: (g * h)(x) = g(h(x))."""
        return GroupElement(tuple(
            tuple(g[h[x]] for x in range(len(h))) for g, h in zip(self.perms, other.perms)
        ))

    def inverse(self) -> GroupElement:
        out = []
        for p in self.perms:
            inv = [0] * len(p)
            for x, y in enumerate(p):
                inv[y] = x
            out.append(tuple(inv))
        return GroupElement(tuple(out))


def act(g: GroupElement, block: Block, delta: Sequence[int]) -> Block:
    """Relabel every cell by ``g`` and return the canonical result."""
    perms = g.perms
    return canonical(
        (tuple(tuple(perms[j][x] for x in cell) for j, cell in enumerate(row)) for row in block),
        delta,
    )


def act_vector(g: GroupElement, vector: dict[Block, int], delta: Sequence[int]) -> dict[Block, int]:
    out: dict[Block, int] = {}
    for b, c in vector.items():
        nb = act(g, b, delta)
        out[nb] = out.get(nb, 0) + c
    return {b: c for b, c in out.items() if c}


def adjacent_transpositions(profile: Sequence[int]) -> list[GroupElement]:
    """Generators (x, x+1) of each factor, as group elements."""
    gens = []
    for j, m in enumerate(profile):
        for x in range(1, m):
            perms = [tuple(range(mm + 1)) for mm in profile]
            p = list(perms[j])
            p[x], p[x + 1] = p[x + 1], p[x]
            perms[j] = tuple(p)
            gens.append(GroupElement(tuple(perms)))
    return gens


def format_block(block: Block) -> str:
    return " ; ".join("|".join(",".join(map(str, cell)) for cell in row) for row in block)


def parse_block(text: str, delta: Sequence[int]) -> Block:
    """Parse ``"1,6|1 ; 2,3|4"`` and return the canonical block."""
    text = text.strip()
    if not text:
        return ()
    rows = []
    for row_text in text.split(";"):
        cells = []
        for cell_text in row_text.split("|"):
            cell_text = cell_text.strip()
            cells.append(tuple(int(x) for x in cell_text.split(",")) if cell_text else ())
        if len(cells) != len(delta):
            raise ValueError(f"row {row_text!r} does not have {len(delta)} cells")
        rows.append(cells)
    return canonical(rows, delta)
