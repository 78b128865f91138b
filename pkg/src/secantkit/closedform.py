"""Closed-form multiplicities in the coordinate ring of the secant line variety.

For an n-partition lam of (r d_1, ..., r d_n) whose components have at most
two rows, write e = sum of the second rows and f = max ceil(second row / d_i).
The multiplicity of S_lam V in degree r is then a short case analysis on e, f
and r, implemented in ``m_lambda``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

from .combinatorics import NPartition, Partition, Shape, dim_schur, partitions, two_row_npartitions

DecompositionTable = dict[NPartition, int]


@dataclass(frozen=True)
class LambdaStats:
    f: int
    e: int


def second_row(part: Partition) -> int:
    return part[1] if len(part) > 1 else 0


def lambda_stats(delta: Sequence[int], lam: NPartition) -> LambdaStats:
    seconds = [second_row(part) for part in lam]
    f = max((-(-s // d) for s, d in zip(seconds, delta)), default=0)
    return LambdaStats(f=f, e=sum(seconds))


def _check(shape: Shape, lam: NPartition) -> None:
    if shape.k != 2:
        raise ValueError("the closed form covers the secant line variety only (k = 2)")
    if len(lam) != shape.n or tuple(sum(p) for p in lam) != shape.profile:
        raise ValueError(f"{lam} is not an n-partition of {shape.profile}")


def m_lambda(shape: Shape, lam: NPartition) -> int:
    """Multiplicity of S_lam V in degree r of the coordinate ring of the secant line variety."""
    _check(shape, lam)
    r = shape.r
    if any(len(part) > 2 for part in lam):
        return 0
    st = lambda_stats(shape.delta, lam)
    e, f = st.e, st.f
    if e < 2 * f:
        return 0
    if e >= r - 1:
        m = r // 2 - f + 1
        if e % 2 == 1 and r % 2 == 0:
            m -= 1
    else:
        m = (e + 1) // 2 - f + 1
        if e % 2 == 1:
            m -= 1
    assert m >= 0, f"negative multiplicity for {lam} at r={r}"
    return m


def coordinate_ring_table(shape: Shape) -> DecompositionTable:
    """All nonzero m_lambda in degree ``shape.r``."""
    table = {}
    for lam in two_row_npartitions(shape):
        m = m_lambda(shape, lam)
        if m:
            table[lam] = m
    return table


def table_dimension(table: DecompositionTable, dims: Sequence[int]) -> int:
    return sum(m * prod(dim_schur(part, d) for part, d in zip(lam, dims)) for lam, m in table.items())


def hilbert(shape: Shape, dims: Sequence[int], r: int | None = None) -> int:
    """Hilbert function of the secant line variety in degree r for the given dimensions."""
    if any(d < 2 for d in dims) or len(dims) != shape.n:
        raise ValueError("every factor needs dimension at least 2")
    if r is not None:
        shape = shape.with_r(r)
    return table_dimension(coordinate_ring_table(shape), dims)


def sym_of_triple_tensor(r: int) -> DecompositionTable:
    """Decomposition of Sym^r(V1 (x) V2 (x) V3) for two-dimensional factors."""
    return coordinate_ring_table(Shape((1, 1, 1), r))


def schur_of_pair_tensor(mu: Partition) -> dict[tuple[Partition, Partition], int]:
    """Decomposition of S_mu(V1 (x) V2) for two-dimensional factors, mu with at most two rows."""
    mu = tuple(mu)
    if len(mu) > 2:
        raise ValueError("mu must have at most two parts")
    r = sum(mu)
    shape = Shape((1, 1, 1), r)
    table = {}
    for lam1 in partitions(r, 2):
        for lam2 in partitions(r, 2):
            m = m_lambda(shape, (lam1, lam2, mu))
            if m:
                table[(lam1, lam2)] = m
    return table


def sym_of_sym3(r: int) -> dict[Partition, int]:
    """Decomposition of Sym^r(Sym^3 K^2), keyed by partitions of 3r."""
    return {lam[0]: m for lam, m in coordinate_ring_table(Shape((3,), r)).items()}

