"""Generic multiplication (row-collapse) maps and the generic prolongation spaces."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, Sequence

from .combinatorics import Partition, Shape, check_partition, partitions
from .exactlinalg import ExactMatrix, Subspace, kernel, rank
from .zeroweight import BasisIndex, Block, basis_index, canonical

log = logging.getLogger(__name__)


def set_partitions(items: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    """All set partitions of ``items``; each block keeps the input order."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [(first,)] + part
        for i, blk in enumerate(part):
            yield part[:i] + [(first,) + blk] + part[i + 1:]


@lru_cache(maxsize=None)
def row_groupings(source_mu: Partition, mu: Partition) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Unordered groupings of the rows of a ``source_mu`` block that collapse to ``mu``.

    Rows are addressed by position.  For ``source_mu = (1,)*r`` these are the set
    partitions of {0..r-1} of shape ``mu``.
    """
    out = []
    for part in set_partitions(tuple(range(len(source_mu)))):
        sizes = tuple(sorted((sum(source_mu[i] for i in blk) for blk in part), reverse=True))
        if sizes == mu:
            out.append(tuple(part))
    return tuple(out)


def grouping_count(mu: Partition) -> int:
    """Number of set partitions of {1..|mu|} with block sizes ``mu``."""
    mults = [mu.count(s) for s in set(mu)]
    return factorial(sum(mu)) // (prod(factorial(s) for s in mu) * prod(factorial(m) for m in mults))


def collapse(block: Block, grouping, delta: Sequence[int]) -> Block:
    """Merge the rows of each group by taking unions of cells factor by factor."""
    n = len(delta)
    rows = []
    for grp in grouping:
        rows.append(tuple(tuple(sorted(x for i in grp for x in block[i][j])) for j in range(n)))
    return canonical(rows, delta)


def pi_image(block: Block, mu: Partition, delta: Sequence[int]) -> dict[Block, int]:
    """Image of a single block: the sum of its collapses of shape ``mu``."""
    source_mu = tuple(len(row[0]) // delta[0] for row in block)
    out: dict[Block, int] = {}
    for grouping in row_groupings(source_mu, tuple(mu)):
        b = collapse(block, grouping, delta)
        out[b] = out.get(b, 0) + 1
    return out


@dataclass(frozen=True)
class PiMatrix:
    """The collapse map from one block space to another as an exact matrix."""

    shape: Shape
    mu: Partition
    source_mu: Partition
    source: BasisIndex
    target: BasisIndex
    matrix: ExactMatrix

    def image(self, vector: dict[int, int]) -> dict[int, int]:
        return self.matrix.apply(vector)


def build_pi(shape: Shape, mu: Partition, source_mu: Partition | None = None) -> PiMatrix:
    """Matrix of the collapse map onto blocks of row profile ``mu``.

    By default the source is the space with all rows of size one, which gives
    the generic multiplication map.  The matrix is assembled column by column.
    """
    mu = check_partition(tuple(mu), shape.r)
    source_mu = (1,) * shape.r if source_mu is None else check_partition(tuple(source_mu), shape.r)
    source = basis_index(shape, source_mu)
    target = basis_index(shape, mu)
    groupings = row_groupings(source_mu, mu)
    delta = shape.delta
    entries: dict[tuple[int, int], int] = {}
    for j, block in enumerate(source.blocks):
        for grouping in groupings:
            i = target.index(collapse(block, grouping, delta))
            entries[(i, j)] = entries.get((i, j), 0) + 1
    return PiMatrix(shape, mu, source_mu, source, target, ExactMatrix(len(target), len(source), entries))


def secant_mus(shape: Shape) -> tuple[Partition, ...]:
    """Row profiles with exactly k parts, in reverse-lexicographic order."""
    return tuple(mu for mu in partitions(shape.r, shape.k) if len(mu) == shape.k)


def generic_ideal_part(shape: Shape, flattening: Subspace | None = None) -> Subspace:
    """Intersection of the kernels of the collapse maps with exactly k rows.

    Kernels are intersected incrementally: each new map is restricted to the
    current intersection and only its kernel there is kept.  When ``flattening``
    is given (a subspace known to lie inside the answer), the loop stops once
    the running intersection has the same dimension.
    """
    N = len(basis_index(shape))
    if shape.r <= shape.k:
        return Subspace.zero(N)
    current: Subspace | None = None
    for mu in secant_mus(shape):
        pi = build_pi(shape, mu)
        if current is None:
            current = kernel(pi.matrix)
        else:
            basis = current.basis
            images = [pi.matrix.apply(v) for v in basis]
            rel = kernel(ExactMatrix.from_columns(images, pi.matrix.rows))
            vectors = []
            for y in rel.basis:
                combo: dict[int, Fraction] = {}
                for i, c in y.items():
                    for j, x in basis[i].items():
                        combo[j] = combo.get(j, 0) + c * x
                vectors.append(combo)
            current = Subspace.span(vectors, N)
        log.debug("after mu=%s: dim %d", mu, current.dim)
        if flattening is not None and current.dim == flattening.dim:
            break
    return current


def stacked_pi(shape: Shape) -> list[dict[int, int]]:
    """Rows of all collapse maps with exactly k rows, stacked."""
    rows: list[dict[int, int]] = []
    for mu in secant_mus(shape):
        rows.extend(build_pi(shape, mu).matrix.row_vectors())
    return rows


def ideal_dim(shape: Shape) -> int:
    """dim I_r = dim U - rank of the stacked collapse maps (rank-nullity)."""
    N = len(basis_index(shape))
    if shape.r <= shape.k:
        return 0
    return N - rank(stacked_pi(shape))
