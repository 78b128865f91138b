"""Spans of minors of generic flattenings inside the generic zero-weight space."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial
from typing import Iterator, Sequence

from .combinatorics import Shape
from .exactlinalg import Subspace, _ReducedEchelon
from .zeroweight import Block, Cell, adjacent_transpositions, act, basis_index, canonical

log = logging.getLogger(__name__)

FULL_ENUMERATION_LIMIT = 200_000


@dataclass(frozen=True)
class FlatteningSplit:
    A: tuple[int, ...]
    B: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.A) != len(self.B) or any(a < 0 or b < 0 for a, b in zip(self.A, self.B)):
            raise ValueError(f"invalid split {self.A} + {self.B}")
        if sum(self.A) < 1 or sum(self.B) < 1:
            raise ValueError("both sides of a split must be nonempty")

    @property
    def delta(self) -> tuple[int, ...]:
        return tuple(a + b for a, b in zip(self.A, self.B))

    def transpose(self) -> FlatteningSplit:
        return FlatteningSplit(self.B, self.A)


def splits(delta: Sequence[int], one_sided: bool = False, up_to_transpose: bool = True) -> list[FlatteningSplit]:
    """Valid splits A + B = delta.

    With ``up_to_transpose`` only one of (A, B) and (B, A) is kept, since a
    matrix and its transpose have the same minors.  ``one_sided`` keeps the
    splits with a side of total size one.
    """
    out = []
    for A in product(*[range(d + 1) for d in delta]):
        B = tuple(d - a for d, a in zip(delta, A))
        if sum(A) < 1 or sum(B) < 1:
            continue
        if one_sided and sum(A) != 1:
            continue
        split = FlatteningSplit(tuple(A), B)
        if up_to_transpose:
            if one_sided:
                if split.transpose() in out:
                    continue
            elif B < tuple(A):
                continue
        out.append(split)
    return out


@dataclass(frozen=True)
class MinorGenerator:
    """The minor [alpha^1..alpha^s | beta^1..beta^s] times the monomial of the gammas.

    Each alpha, beta and gamma is an n-tuple of cells.
    """

    alphas: tuple[tuple[Cell, ...], ...]
    betas: tuple[tuple[Cell, ...], ...]
    gammas: tuple[tuple[Cell, ...], ...]

    def check(self, delta: Sequence[int]) -> None:
        s = len(self.alphas)
        if len(self.betas) != s:
            raise ValueError("a minor needs as many alphas as betas")
        r = s + len(self.gammas)
        for j, d in enumerate(delta):
            labels = sorted(x for part in self.alphas + self.betas + self.gammas for x in part[j])
            if labels != list(range(1, r * d + 1)):
                raise ValueError(f"factor {j + 1} labels do not partition 1..{r * d}")
            sizes = {len(a[j]) + len(b[j]) for a in self.alphas for b in self.betas}
            if sizes != {d} or any(len(g[j]) != d for g in self.gammas):
                raise ValueError("cell sizes do not match delta")


@lru_cache(maxsize=None)
def signed_permutations(s: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    out = []
    for perm in permutations(range(s)):
        inversions = sum(1 for i in range(s) for j in range(i + 1, s) if perm[i] > perm[j])
        out.append((perm, -1 if inversions % 2 else 1))
    return tuple(out)


def expand_minor(g: MinorGenerator, delta: Sequence[int]) -> dict[Block, int]:
    """Determinant expansion as a signed combination of canonical blocks."""
    n = len(delta)
    out: dict[Block, int] = {}
    for perm, sign in signed_permutations(len(g.alphas)):
        rows = [
            tuple(a[j] + g.betas[perm[i]][j] for j in range(n))
            for i, a in enumerate(g.alphas)
        ]
        block = canonical(rows + list(g.gammas), delta)
        out[block] = out.get(block, 0) + sign
    return {b: c for b, c in out.items() if c}


def _unordered(labels: tuple[int, ...], size: int, count: int) -> Iterator[list[Cell]]:
    """``count`` disjoint cells of ``size`` from ``labels``, as an unordered family."""
    if count == 0:
        yield []
        return
    for union in combinations(labels, size * count):
        for cells in _split_equal(union, size):
            yield cells


def _split_equal(labels: tuple[int, ...], size: int) -> Iterator[list[Cell]]:
    if not labels:
        yield []
        return
    first, rest = labels[0], labels[1:]
    for others in combinations(rest, size - 1):
        remaining = tuple(x for x in rest if x not in others)
        for tail in _split_equal(remaining, size):
            yield [(first,) + others] + tail


def _ordered(labels: tuple[int, ...], size: int, count: int) -> Iterator[list[Cell]]:
    if count == 0:
        yield []
        return
    for cell in combinations(labels, size):
        chosen = set(cell)
        remaining = tuple(x for x in labels if x not in chosen)
        for tail in _ordered(remaining, size, count - 1):
            yield [cell] + tail


def _column_fillings(labels: tuple[int, ...], kinds: Sequence[tuple[int, int, bool]]) -> Iterator[list[list[Cell]]]:
    """Fill consecutive slot kinds (count, size, unordered) from ``labels``."""
    if not kinds:
        yield []
        return
    count, size, unordered = kinds[0]
    if size == 0:
        for tail in _column_fillings(labels, kinds[1:]):
            yield [[()] * count] + tail
        return
    source = _unordered(labels, size, count) if unordered else _ordered(labels, size, count)
    for cells in source:
        used = {x for c in cells for x in c}
        remaining = tuple(x for x in labels if x not in used)
        for tail in _column_fillings(remaining, kinds[1:]):
            yield [cells] + tail


def _anchors(split: FlatteningSplit) -> tuple[int, int]:
    a_anchor = next(j for j, a in enumerate(split.A) if a > 0)
    b_anchor = next(j for j, b in enumerate(split.B) if b > 0)
    return a_anchor, b_anchor


def minor_generators(split: FlatteningSplit, r: int, size: int) -> Iterator[MinorGenerator]:
    """All minors of one split up to reordering alphas, betas and gammas.

    Reordering alphas or betas only changes the sign of a minor, so one
    representative per unordered family spans the same space.  Each kind of slot
    is made unordered in the first factor where its cells are nonempty.
    """
    if size > r:
        return
    delta = split.delta
    n = len(delta)
    a_anchor, b_anchor = _anchors(split)
    per_column = []
    for j in range(n):
        kinds = [
            (size, split.A[j], j == a_anchor),
            (size, split.B[j], j == b_anchor),
            (r - size, delta[j], j == 0),
        ]
        per_column.append(_column_fillings(tuple(range(1, r * delta[j] + 1)), kinds))
    # the product needs re-iterable factors
    columns = [list(c) for c in per_column]
    for choice in product(*columns):
        alphas = tuple(tuple(choice[j][0][i] for j in range(n)) for i in range(size))
        betas = tuple(tuple(choice[j][1][i] for j in range(n)) for i in range(size))
        gammas = tuple(tuple(choice[j][2][i] for j in range(n)) for i in range(r - size))
        yield MinorGenerator(alphas, betas, gammas)


def generator_count(split: FlatteningSplit, r: int, size: int) -> int:
    """Number of generators ``minor_generators`` yields, by counting label assignments."""
    if size > r:
        return 0
    ordered = 1
    for a, b, d in zip(split.A, split.B, split.delta):
        m = r * d
        ordered *= factorial(m) // (factorial(a) ** size * factorial(b) ** size * factorial(d) ** (r - size))
    return ordered // (factorial(size) ** 2 * factorial(r - size))


def first_generator(split: FlatteningSplit, r: int, size: int) -> MinorGenerator:
    return next(minor_generators(split, r, size))


def _default_size(shape: Shape, minor_size: int | None) -> int:
    return shape.k + 1 if minor_size is None else minor_size


def _split_list(shape: Shape, one_sided: bool) -> list[FlatteningSplit]:
    return splits(shape.delta, one_sided=one_sided)


def generator_vectors(shape: Shape, minor_size: int | None = None, one_sided: bool = False) -> Iterator[dict[int, int]]:
    """Coordinate vectors of every minor generator, split by split."""
    size = _default_size(shape, minor_size)
    index = basis_index(shape)
    for split in _split_list(shape, one_sided):
        for g in minor_generators(split, shape.r, size):
            vec = index.vector(expand_minor(g, shape.delta))
            if vec:
                yield vec


def flattening_space(shape: Shape, minor_size: int | None = None, one_sided: bool = False,
                     method: str = "auto") -> Subspace:
    """Span F of all (k+1)-minors of generic flattenings, as a subspace of U.

    ``method`` is ``"enumerate"`` (all generators), ``"saturate"`` (one seed per
    split closed under the group action) or ``"auto"``, which enumerates when
    the total generator count is below ``FULL_ENUMERATION_LIMIT``.
    """
    size = _default_size(shape, minor_size)
    N = len(basis_index(shape))
    if size > shape.r:
        return Subspace.zero(N)
    split_list = _split_list(shape, one_sided)
    if method == "auto":
        total = sum(generator_count(s, shape.r, size) for s in split_list)
        method = "enumerate" if total < FULL_ENUMERATION_LIMIT else "saturate"
    if method == "enumerate":
        return Subspace.span(generator_vectors(shape, size, one_sided), N)
    if method == "saturate":
        index = basis_index(shape)
        seeds = [index.vector(expand_minor(first_generator(s, shape.r, size), shape.delta)) for s in split_list]
        return saturate(shape, seeds)
    raise ValueError(f"unknown method {method!r}")


def one_flattening_space(shape: Shape, minor_size: int | None = None, method: str = "auto") -> Subspace:
    """Span of the minors of flattenings with a side of total size one."""
    return flattening_space(shape, minor_size, one_sided=True, method=method)


def basis_permutations(shape: Shape) -> list[list[int]]:
    """Adjacent transpositions of each factor as permutations of basis indices."""
    index = basis_index(shape)
    perms = []
    for g in adjacent_transpositions(shape.profile):
        perms.append([index.index(act(g, b, shape.delta)) for b in index.blocks])
    return perms


def saturate(shape: Shape, seeds: Sequence[dict[int, int]]) -> Subspace:
    """Smallest group-stable subspace containing ``seeds``.

    Every vector that enlarges the span is pushed through each adjacent
    transposition; the loop ends when no image enlarges it.
    """
    N = len(basis_index(shape))
    perms = basis_permutations(shape)
    ech = _ReducedEchelon()
    queue = deque()
    for v in seeds:
        if ech.add(v):
            queue.append(v)
    while queue:
        v = queue.popleft()
        for p in perms:
            w = {p[i]: c for i, c in v.items()}
            if ech.add(w):
                queue.append(w)
    log.debug("saturated span has dim %d", len(ech.rows))
    return Subspace(N, ech.normalized())
