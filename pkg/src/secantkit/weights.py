"""Nongeneric weight spaces of Sym^r(Sym^{d_1} V_1 (x) ... (x) Sym^{d_n} V_n).

A weight monomial uses the block layout with variable indices in place of
labels: row rho, cell j is the multiset of variables of V_j in the rho-th
factor z_alpha.  Its weight lists, for each factor, how often each variable
occurs.

Invariants of a Young subgroup S_nu acting on the generic space correspond to
weight-nu monomials (specialization is injective on invariants), so for any
invariant subspace W of the generic space

    dim W^{S_nu} = dim of its specialization in weight nu
                 = sum over lam of m_lam(W) * Kostka(lam, nu).

``isotypic_table`` inverts this unitriangular system.  It gives multiplicity
tables, and hence dimensions, of U, I and F without building the generic
spaces, which is what keeps large shapes within reach.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from math import prod
from typing import Iterator, Sequence

from .combinatorics import NPartition, Partition, Shape, dim_specht, kostka, n_partitions
from .exactlinalg import rank
from .flattening import FlatteningSplit, signed_permutations, splits
from .prolongation import secant_mus, set_partitions
from .zeroweight import Block, canonical

Monomial = Block
Weight = tuple[tuple[int, ...], ...]


def weight_of(mono: Monomial, n: int) -> Weight:
    out = []
    for j in range(n):
        counts: dict[int, int] = {}
        for row in mono:
            for x in row[j]:
                counts[x] = counts.get(x, 0) + 1
        top = max(counts, default=0)
        out.append(tuple(counts.get(i, 0) for i in range(1, top + 1)))
    return tuple(out)


@lru_cache(maxsize=None)
def _multisets(size: int, m: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations_with_replacement(range(1, m + 1), size))


def _row_weight(row, dims: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    out = []
    for cell, m in zip(row, dims):
        w = [0] * m
        for x in cell:
            w[x - 1] += 1
        out.append(tuple(w))
    return tuple(out)


def _fits(w, remaining) -> bool:
    return all(a <= b for wj, rj in zip(w, remaining) for a, b in zip(wj, rj))


def _subtract(remaining, w):
    return tuple(tuple(b - a for a, b in zip(wj, rj)) for wj, rj in zip(w, remaining))


def rows_basis(sizes: Sequence[int], dims: Sequence[int]) -> list[tuple[tuple[int, ...], ...]]:
    """All n-tuples of multisets with the given sizes: a basis of the tensor product of symmetric powers."""
    return [tuple(row) for row in product(*[_multisets(s, m) for s, m in zip(sizes, dims)])]


def weight_monomials(delta: Sequence[int], r: int, weight: Weight) -> list[Monomial]:
    """Degree-r monomials (rows of size one) with the given weight, in sorted order."""
    dims = [len(w) for w in weight]
    if any(sum(w) != r * d for w, d in zip(weight, delta)):
        return []
    candidates = [(row, _row_weight(row, dims)) for row in rows_basis(delta, dims)]
    out: list[Monomial] = []

    def rec(start: int, remaining, acc: list) -> None:
        if len(acc) == r:
            out.append(tuple(acc))
            return
        for i in range(start, len(candidates)):
            row, w = candidates[i]
            if _fits(w, remaining):
                acc.append(row)
                rec(i, _subtract(remaining, w), acc)
                acc.pop()

    rec(0, tuple(tuple(w) for w in weight), [])
    assert all(canonical(m, delta) == m for m in out)
    return out


def _exponents(cell: Sequence[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for x in cell:
        out[x] = out.get(x, 0) + 1
    return out


def _from_exponents(exps: dict[int, int]) -> tuple[int, ...]:
    return tuple(x for x in sorted(exps) for _ in range(exps[x]))


def pi_V(mono: Monomial, mu: Partition, delta: Sequence[int]) -> dict[Monomial, int]:
    """Multiplication map onto products of mu-sized factors.

    The r factors of a monomial are distinct positions even when equal, and the
    sum runs over unordered set partitions of the positions of shape mu.  Each
    group of factors is multiplied by adding exponent vectors factor by factor.
    """
    n = len(delta)
    mu = tuple(mu)
    out: dict[Monomial, int] = {}
    for part in set_partitions(tuple(range(len(mono)))):
        if tuple(sorted((len(g) for g in part), reverse=True)) != mu:
            continue
        rows = []
        for grp in part:
            row = []
            for j in range(n):
                exps: dict[int, int] = {}
                for pos in grp:
                    for x, e in _exponents(mono[pos][j]).items():
                        exps[x] = exps.get(x, 0) + e
                row.append(_from_exponents(exps))
            rows.append(tuple(row))
        target = canonical(rows, delta)
        out[target] = out.get(target, 0) + 1
    return out


def raise_monomial(mono: Monomial, j: int, i: int, delta: Sequence[int]) -> dict[Monomial, int]:
    """Raising operator x_{i+1} -> x_i on factor j, acting as a derivation."""
    out: dict[Monomial, int] = {}
    for pos, row in enumerate(mono):
        count = row[j].count(i + 1)
        if not count:
            continue
        cell = list(row[j])
        cell.remove(i + 1)
        cell.append(i)
        new_row = row[:j] + (tuple(sorted(cell)),) + row[j + 1:]
        target = canonical(mono[:pos] + (new_row,) + mono[pos + 1:], delta)
        out[target] = out.get(target, 0) + count
    return out


def raise_vector(vec: dict[Monomial, int], weight: Weight, delta: Sequence[int]) -> dict:
    """All raising operators at once, keyed by (factor, index, monomial)."""
    out: dict = {}
    for j, w in enumerate(weight):
        for i in range(1, len(w)):
            for mono, c in vec.items():
                for t, x in raise_monomial(mono, j, i, delta).items():
                    key = (j, i, t)
                    out[key] = out.get(key, 0) + c * x
    return {k: v for k, v in out.items() if v}


def _det_expand(rows_a, rows_b, gamma: Sequence, delta: Sequence[int]) -> dict[Monomial, int]:
    n = len(delta)
    out: dict[Monomial, int] = {}
    for perm, sign in signed_permutations(len(rows_a)):
        rows = [
            tuple(tuple(sorted(a[j] + rows_b[perm[i]][j])) for j in range(n))
            for i, a in enumerate(rows_a)
        ]
        mono = canonical(rows + list(gamma), delta)
        out[mono] = out.get(mono, 0) + sign
    return {m: c for m, c in out.items() if c}


def minors_of_weight(delta: Sequence[int], r: int, weight: Weight, size: int = 3,
                     split_list: Sequence[FlatteningSplit] | None = None) -> Iterator[dict[Monomial, int]]:
    """Products of a size x size flattening minor with degree r - size monomials, of the given weight.

    Rows of the minor are distinct basis elements of Sym^A, columns distinct basis
    elements of Sym^B; repeated rows or columns give zero and are skipped.
    """
    if size > r:
        return
    dims = [len(w) for w in weight]
    target = tuple(tuple(w) for w in weight)
    for split in (split_list if split_list is not None else splits(delta)):
        basis_a = [(row, _row_weight(row, dims)) for row in rows_basis(split.A, dims)]
        basis_b = [(row, _row_weight(row, dims)) for row in rows_basis(split.B, dims)]
        basis_a = [x for x in basis_a if _fits(x[1], target)]
        basis_b = [x for x in basis_b if _fits(x[1], target)]
        for sel_a in combinations(basis_a, size):
            rem_a = target
            ok = True
            for _, w in sel_a:
                if not _fits(w, rem_a):
                    ok = False
                    break
                rem_a = _subtract(rem_a, w)
            if not ok:
                continue
            for sel_b in combinations(basis_b, size):
                rem = rem_a
                for _, w in sel_b:
                    if not _fits(w, rem):
                        ok = False
                        break
                    rem = _subtract(rem, w)
                if not ok:
                    ok = True
                    continue
                rows_a = [x[0] for x in sel_a]
                rows_b = [x[0] for x in sel_b]
                for gamma in weight_monomials(delta, r - size, rem):
                    vec = _det_expand(rows_a, rows_b, gamma, delta)
                    if vec:
                        yield vec


def _rank_keyed(vectors) -> int:
    keys: dict = {}
    rows = []
    for v in vectors:
        row = {keys.setdefault(m, len(keys)): c for m, c in v.items()}
        if row:
            rows.append(row)
    return rank(rows)


@dataclass(frozen=True)
class WeightDims:
    """Dimensions of one weight space of U, I and F."""

    total: int
    ideal: int
    flattening: int


def weight_space_dims(shape: Shape, weight: Weight, minor_size: int | None = None) -> WeightDims:
    delta = shape.delta
    r = shape.r
    monos = weight_monomials(delta, r, weight)
    if r <= shape.k:
        ideal = 0
    else:
        images = [
            {(mu, t): c for mu in secant_mus(shape) for t, c in pi_V(m, mu, delta).items()}
            for m in monos
        ]
        ideal = len(monos) - _rank_keyed(images)
    size = shape.k + 1 if minor_size is None else minor_size
    flat = _rank_keyed(minors_of_weight(delta, r, weight, size)) if monos else 0
    return WeightDims(len(monos), ideal, flat)


def _weight_of_npartition(lam: NPartition) -> Weight:
    return tuple(tuple(part) for part in lam)


@dataclass(frozen=True)
class IsotypicTables:
    """Multiplicity tables of U, I and F recovered from weight-space dimensions."""

    total: dict[NPartition, int]
    ideal: dict[NPartition, int]
    flattening: dict[NPartition, int]

    @staticmethod
    def dimension(table: dict[NPartition, int]) -> int:
        return sum(m * prod(dim_specht(p) for p in lam) for lam, m in table.items())

    @property
    def dims(self) -> WeightDims:
        return WeightDims(self.dimension(self.total), self.dimension(self.ideal), self.dimension(self.flattening))


def multi_kostka(lam: NPartition, nu: NPartition) -> int:
    return prod(kostka(a, b) for a, b in zip(lam, nu))


def isotypic_tables(shape: Shape, minor_size: int | None = None) -> IsotypicTables:
    """Multiplicity tables of U, I and F via weight spaces and Kostka inversion.

    Every irreducible in U has components with at most r rows, and weights nu
    with at most r parts only see such lam, so the system closes on that set.
    """
    lams = n_partitions(shape, max(shape.r, 1))
    dims = {nu: weight_space_dims(shape, _weight_of_npartition(nu), minor_size) for nu in lams}
    tables: list[dict[NPartition, int]] = [{}, {}, {}]
    for which, table in enumerate(tables):
        # lams is in decreasing lexicographic order, which refines dominance
        for nu in lams:
            d = dims[nu]
            w = (d.total, d.ideal, d.flattening)[which]
            m = w - sum(c * multi_kostka(rho, nu) for rho, c in table.items())
            if m < 0:
                raise ArithmeticError(f"negative multiplicity for {nu}")
            if m:
                table[nu] = m
    return IsotypicTables(*tables)
