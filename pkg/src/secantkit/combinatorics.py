"""Partitions, n-partitions and the dimension formulas built on them.

A partition is a plain tuple of positive integers in nonincreasing order; the
empty tuple is the partition of 0.  An n-partition is a tuple of n partitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import factorial, prod

Partition = tuple[int, ...]
NPartition = tuple[Partition, ...]


@dataclass(frozen=True)
class Shape:
    """Parameters of a secant problem.

    Attributes:
        delta: Multidegree (d_1, ..., d_n) of the Segre-Veronese embedding.
        r: Polynomial degree.
        k: Secant order; k = 2 is the secant line variety.
    """

    delta: tuple[int, ...]
    r: int
    k: int = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "delta", tuple(int(d) for d in self.delta))
        if not self.delta or any(d < 1 for d in self.delta):
            raise ValueError(f"delta entries must be positive: {self.delta}")
        if self.r < 0 or self.k < 1:
            raise ValueError(f"need r >= 0 and k >= 1, got r={self.r}, k={self.k}")

    @property
    def n(self) -> int:
        return len(self.delta)

    @property
    def profile(self) -> tuple[int, ...]:
        """Sizes r*d_j of the label sets, one per factor."""
        return tuple(self.r * d for d in self.delta)

    def with_r(self, r: int) -> Shape:
        return Shape(self.delta, r, self.k)


def is_partition(parts: tuple[int, ...]) -> bool:
    return all(p > 0 for p in parts) and all(
        a >= b for a, b in zip(parts, parts[1:])
    )


def check_partition(parts: tuple[int, ...], size: int | None = None) -> Partition:
    parts = tuple(int(p) for p in parts)
    if not is_partition(parts):
        raise ValueError(f"not a partition: {parts}")
    if size is not None and sum(parts) != size:
        raise ValueError(f"{parts} does not partition {size}")
    return parts


@lru_cache(maxsize=None)
def partitions(m: int, max_parts: int | None = None, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``m`` with bounded length, in reverse-lexicographic order.

    >>> partitions(6, 2)
    ((6,), (5, 1), (4, 2), (3, 3))
    """
    if max_parts is None:
        max_parts = m
    if max_part is None:
        max_part = m
    if m == 0:
        return ((),)
    if max_parts == 0:
        return ()
    out = []
    for first in range(min(m, max_part), 0, -1):
        for rest in partitions(m - first, max_parts - 1, first):
            out.append((first,) + rest)
    return tuple(out)


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part > i) for i in range(lam[0]))


def hooks(lam: Partition):
    """Yield (row, col, hook length) for every box of ``lam``."""
    conj = conjugate(lam)
    for i, row in enumerate(lam):
        for j in range(row):
            yield i, j, (row - j) + (conj[j] - i) - 1


def dim_schur(lam: Partition, m: int) -> int:
    """Dimension of the Schur functor S_lam applied to an m-dimensional space."""
    if len(lam) > m:
        return 0
    num = 1
    den = 1
    for i, j, h in hooks(lam):
        num *= m + j - i
        den *= h
    return num // den


def dim_specht(lam: Partition) -> int:
    """Dimension of the Specht module [lam] via the hook length formula."""
    den = prod(h for _, _, h in hooks(lam))
    return factorial(sum(lam)) // den


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not text:
        return ()
    return check_partition(tuple(int(p) for p in text.split(",")))


def format_partition(lam: Partition) -> str:
    return ",".join(map(str, lam))


def parse_npartition(text: str) -> NPartition:
    """Parse the ``"5,3|2,1,1"`` form."""
    return tuple(parse_partition(part) for part in text.split("|"))


def format_npartition(lam: NPartition) -> str:
    return "|".join(format_partition(part) for part in lam)


def n_partitions(shape: Shape, max_parts: int | None = None) -> list[NPartition]:
    """All n-partitions of the profile (r*d_1, ..., r*d_n), components bounded in length.

    The order is the product order of the per-factor reverse-lexicographic lists,
    which is itself reverse-lexicographic on the tuple of components.
    """
    per_factor = [partitions(m, max_parts) for m in shape.profile]
    return list(product(*per_factor))


def two_row_npartitions(shape: Shape) -> list[NPartition]:
    return n_partitions(shape, 2)


def multinomial(counts) -> int:
    counts = list(counts)
    return factorial(sum(counts)) // prod(factorial(c) for c in counts)


@lru_cache(maxsize=None)
def kostka(lam: Partition, content: tuple[int, ...]) -> int:
    """Number of semistandard tableaux of shape ``lam`` with the given content.

    Strips the largest letter as a horizontal strip, recursively.
    """
    if sum(lam) != sum(content):
        return 0
    content = tuple(c for c in content)
    while content and content[-1] == 0:
        content = content[:-1]
    if not content:
        return 1 if not lam else 0
    if len(lam) > len(content):
        return 0
    last = content[-1]
    total = 0
    for inner in _horizontal_strip_removals(lam, last):
        total += kostka(inner, content[:-1])
    return total


def _horizontal_strip_removals(lam: Partition, size: int):
    """Partitions nu inside lam with lam/nu a horizontal strip of ``size`` boxes."""
    rows = len(lam)

    def rec(i: int, remaining: int, acc: list[int]):
        if i == rows:
            if remaining == 0:
                yield tuple(p for p in acc if p > 0)
            return
        lower = lam[i + 1] if i + 1 < rows else 0
        for take in range(min(remaining, lam[i] - lower), -1, -1):
            acc.append(lam[i] - take)
            yield from rec(i + 1, remaining - take, acc)
            acc.pop()

    yield from rec(0, size, [])


def tableau_rows(lam: Partition) -> list[list[int]]:
    """Box labels of the canonical tableau, row by row (boxes numbered 1, 2, ... across rows)."""
    rows, start = [], 1
    for part in lam:
        rows.append(list(range(start, start + part)))
        start += part
    return rows


def tableau_columns(lam: Partition) -> list[list[int]]:
    """Box labels of the canonical tableau, column by column, top to bottom."""
    rows = tableau_rows(lam)
    return [[row[c] for row in rows if len(row) > c] for c in range(lam[0] if lam else 0)]


@lru_cache(maxsize=None)
def box_rows(lam: Partition) -> tuple[int, ...]:
    """``box_rows(lam)[x]`` is the (1-based) row of box x; index 0 is unused."""
    out = [0]
    for i, part in enumerate(lam, start=1):
        out.extend([i] * part)
    return tuple(out)


@lru_cache(maxsize=None)
def box_columns(lam: Partition) -> tuple[int, ...]:
    """``box_columns(lam)[x]`` is the (1-based) column of box x; index 0 is unused."""
    out = [0]
    for part in lam:
        out.extend(range(1, part + 1))
    return tuple(out)
