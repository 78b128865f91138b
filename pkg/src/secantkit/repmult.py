"""Multiplicities of irreducible S_{r d_1} x ... x S_{r d_n} modules in block spaces.

Two independent routes:

* Young symmetrizers.  ``apply_symmetrizer`` evaluates c = a * b literally in
  block coordinates.  For rank computations we use the row-index specialization
  Q, which is injective on vectors invariant under the row group and satisfies
  Q(a * x) = |row group| * Q(x); so the rank of {c * w} equals the rank of
  {Q(b * w)}, and b * w only needs the column group.
* Characters.  The permutation character of a block basis (fixed-block counts)
  paired with Murnaghan-Nakayama character values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial, prod
from typing import Iterable, Mapping, Sequence

from .combinatorics import (
    NPartition,
    Partition,
    Shape,
    box_columns,
    box_rows,
    dim_specht,
    n_partitions,
    partitions,
    tableau_columns,
    tableau_rows,
)
from .exactlinalg import rank
from .flattening import signed_permutations
from .zeroweight import Block, GroupElement, act, basis_index, canonical

Monomial = Block


def check_profile(lam: NPartition, profile: Sequence[int]) -> None:
    if tuple(sum(part) for part in lam) != tuple(profile):
        raise ValueError(f"{lam} does not match the profile {tuple(profile)}")


def specialize(block: Block, maps: Sequence[Sequence[int]], delta: Sequence[int]) -> Monomial:
    """Replace label x of factor j by ``maps[j][x]`` and return the sorted monomial."""
    return canonical(
        (tuple(tuple(sorted(maps[j][x] for x in cell)) for j, cell in enumerate(row)) for row in block),
        delta,
    )


def row_specialize(lam: NPartition, block: Block, delta: Sequence[int]) -> Monomial:
    return specialize(block, [box_rows(part) for part in lam], delta)


def column_specialize(lam: NPartition, block: Block, delta: Sequence[int]) -> Monomial:
    """Specialization by tableau column; constant exactly on column-group orbits."""
    return specialize(block, [box_columns(part) for part in lam], delta)


@dataclass(frozen=True)
class YoungSymmetrizer:
    """Row and column groups of the canonical n-tableau of ``lam``."""

    lam: NPartition

    @property
    def row_group_order(self) -> int:
        return prod(factorial(p) for part in self.lam for p in part)

    @property
    def column_group_order(self) -> int:
        return prod(factorial(len(col)) for part in self.lam for col in tableau_columns(part))

    def _elements(self, lines_per_factor: list[list[list[int]]], signed: bool):
        profile = [sum(part) for part in self.lam]
        choices = []
        for j, lines in enumerate(lines_per_factor):
            for line in lines:
                choices.append([(j, line, perm, sign) for perm, sign in signed_permutations(len(line))])
        for combo in product(*choices):
            perms = [list(range(m + 1)) for m in profile]
            sign = 1
            for j, line, perm, s in combo:
                for i, x in enumerate(line):
                    perms[j][x] = line[perm[i]]
                sign *= s
            yield GroupElement(tuple(tuple(p) for p in perms)), (sign if signed else 1)

    def row_elements(self):
        return self._elements([tableau_rows(part) for part in self.lam], signed=False)

    def column_elements(self):
        return self._elements([tableau_columns(part) for part in self.lam], signed=True)

    def quasi_idempotence_constant(self) -> int:
        """kappa with c * c = kappa * c."""
        return prod(factorial(sum(part)) // dim_specht(part) for part in self.lam)


def _combine(terms: Iterable[tuple[Block, int]]) -> dict[Block, int]:
    out: dict[Block, int] = {}
    for b, c in terms:
        out[b] = out.get(b, 0) + c
    return {b: c for b, c in out.items() if c}


def apply_symmetrizer(lam: NPartition, vector: Mapping[Block, int], delta: Sequence[int]) -> dict[Block, int]:
    """c * v = a * (b * v) in block coordinates, merging terms after each stage."""
    ys = YoungSymmetrizer(tuple(lam))
    col_elems = list(ys.column_elements())
    after_b = _combine(
        (act(g, blk, delta), sign * coef) for blk, coef in vector.items() for g, sign in col_elems
    )
    row_elems = [g for g, _ in ys.row_elements()]
    return _combine((act(g, blk, delta), coef) for blk, coef in after_b.items() for g in row_elems)


def hwt_coordinates(lam: NPartition, block: Block, delta: Sequence[int]) -> dict[Monomial, int]:
    """Q(b * block): the specialized image of the column antisymmetrizer.

    Boxes of one tableau column whose labels sit in the same block row cancel
    in pairs, giving zero.  Otherwise the sum runs over all ways to permute the
    row indices inside each column, with the sign of the permutation; partial
    assignments are merged column by column.
    """
    n = len(delta)
    R = len(block)
    owners = []
    for j in range(n):
        owner = {}
        for rho, row in enumerate(block):
            for x in row[j]:
                owner[x] = rho
        owners.append(owner)
    base: list[list[int]] = [[] for _ in range(R * n)]
    moves = []
    for j, part in enumerate(lam):
        for col in tableau_columns(part):
            rows_here = [owners[j][x] for x in col]
            if len(set(rows_here)) < len(rows_here):
                return {}
            if len(col) == 1:
                base[rows_here[0] * n + j].append(1)
            else:
                moves.append((j, rows_here))
    states: dict[tuple[tuple[int, ...], ...], int] = {tuple(tuple(sorted(c)) for c in base): 1}
    for j, rows_here in moves:
        new: dict[tuple[tuple[int, ...], ...], int] = {}
        for perm, sign in signed_permutations(len(rows_here)):
            for state, coef in states.items():
                st = list(state)
                for t, i in enumerate(perm):
                    idx = rows_here[i] * n + j
                    st[idx] = tuple(sorted(st[idx] + (t + 1,)))
                key = tuple(st)
                new[key] = new.get(key, 0) + sign * coef
        states = {k: v for k, v in new.items() if v}
    out: dict[Monomial, int] = {}
    for state, coef in states.items():
        mono = canonical((tuple(state[rho * n + j] for j in range(n)) for rho in range(R)), delta)
        out[mono] = out.get(mono, 0) + coef
    return {m: c for m, c in out.items() if c}


class HwtEvaluator:
    """Caches per-block specialized symmetrizer images for one ``lam``."""

    def __init__(self, lam: NPartition, delta: Sequence[int]):
        self.lam = tuple(lam)
        self.delta = tuple(delta)
        self._cache: dict[Block, dict[Monomial, int]] = {}

    def block(self, b: Block) -> dict[Monomial, int]:
        hit = self._cache.get(b)
        if hit is None:
            hit = self._cache[b] = hwt_coordinates(self.lam, b, self.delta)
        return hit

    def vector(self, combination: Mapping[Block, int]) -> dict[Monomial, int]:
        out: dict[Monomial, int] = {}
        for b, c in combination.items():
            for m, x in self.block(b).items():
                out[m] = out.get(m, 0) + c * x
        return {m: x for m, x in out.items() if x}


def _rank_keyed(vectors: Iterable[Mapping]) -> int:
    keys: dict = {}
    rows = []
    for v in vectors:
        row = {}
        for m, x in v.items():
            row[keys.setdefault(m, len(keys))] = x
        if row:
            rows.append(row)
    return rank(rows)


def multiplicity_sym(lam: NPartition, spanning: Iterable[Mapping[Block, int]], delta: Sequence[int]) -> int:
    """dim span{c * w} for ``w`` in a spanning set of an invariant subspace."""
    ev = HwtEvaluator(lam, delta)
    return _rank_keyed(ev.vector(w) for w in spanning)


def _too_long(lam: NPartition, rows: int) -> bool:
    """A column longer than the number of block rows always repeats a row."""
    return any(len(part) > rows for part in lam)


def full_hwt_vectors(lam: NPartition, shape: Shape, mu: Partition | None = None) -> list[dict[Monomial, int]]:
    """Specialized images Q(b * block) spanning Q(c * U_mu), one per column-group orbit.

    Blocks in one orbit of the column group have images equal up to sign, and
    the orbits are exactly the fibres of the column specialization.
    """
    index = basis_index(shape, mu)
    check_profile(lam, shape.profile)
    if _too_long(lam, len(index.mu)):
        return []
    delta = shape.delta
    col_maps = [box_columns(part) for part in lam]
    reps: dict[Monomial, Block] = {}
    for b in index.blocks:
        key = specialize(b, col_maps, delta)
        if key not in reps:
            reps[key] = b
    out = []
    for b in reps.values():
        v = hwt_coordinates(lam, b, delta)
        if v:
            out.append(v)
    return out


def multiplicity_sym_full(lam: NPartition, shape: Shape, mu: Partition | None = None) -> int:
    """Symmetrizer multiplicity of ``lam`` in the whole block space U_mu."""
    return _rank_keyed(full_hwt_vectors(lam, shape, mu))


def decomposition_sym(shape: Shape, mu: Partition | None = None) -> dict[NPartition, int]:
    table = {}
    for lam in n_partitions(shape):
        m = multiplicity_sym_full(lam, shape, mu)
        if m:
            table[lam] = m
    return table


@lru_cache(maxsize=None)
def character_value(lam: Partition, ct: Partition) -> int:
    """chi_lam on the class of cycle type ``ct`` by Murnaghan-Nakayama.

    Uses beta-numbers: removing a rim hook of length L moves one bead from
    position x to a free position x - L, with sign (-1)^(beads jumped).
    """
    if sum(lam) != sum(ct):
        raise ValueError(f"size mismatch: {lam} vs {ct}")
    if not ct:
        return 1
    length = ct[0]
    rest = ct[1:]
    ell = len(lam)
    beads = [lam[i] + (ell - 1 - i) for i in range(ell)]
    bead_set = set(beads)
    total = 0
    for x in beads:
        y = x - length
        if y < 0 or y in bead_set:
            continue
        jumped = sum(1 for z in beads if y < z < x)
        new_beads = sorted((bead_set - {x}) | {y}, reverse=True)
        new_lam = tuple(b - (ell - 1 - i) for i, b in enumerate(new_beads))
        new_lam = tuple(p for p in new_lam if p > 0)
        total += (-1) ** jumped * character_value(new_lam, rest)
    return total


def centralizer_order(ct: Partition) -> int:
    out = 1
    for part in set(ct):
        m = ct.count(part)
        out *= part ** m * factorial(m)
    return out


def cycle_type_representative(profile: Sequence[int], ct: Sequence[Partition]) -> GroupElement:
    cycles = []
    for m, parts in zip(profile, ct):
        factor, start = [], 1
        for p in parts:
            factor.append(tuple(range(start, start + p)))
            start += p
        cycles.append(factor)
    return GroupElement.from_cycles(profile, cycles)


@lru_cache(maxsize=64)
def fixed_block_counts(shape: Shape, mu: Partition) -> dict[tuple[Partition, ...], int]:
    """Number of basis blocks fixed by a representative of each cycle type."""
    index = basis_index(shape, mu)
    out = {}
    for ct in product(*[partitions(m) for m in shape.profile]):
        g = cycle_type_representative(shape.profile, ct)
        perms = g.perms
        count = 0
        for b in index.blocks:
            rows = set(b)
            if all(
                tuple(tuple(sorted(perms[j][x] for x in cell)) for j, cell in enumerate(row)) in rows
                for row in b
            ):
                count += 1
        out[ct] = count
    return out


def multiplicity_char(lam: NPartition, shape: Shape, mu: Partition | None = None) -> int:
    """<permutation character of U_mu, chi_lam> summed over cycle types."""
    mu = (1,) * shape.r if mu is None else tuple(mu)
    check_profile(lam, shape.profile)
    total = Fraction(0)
    for ct, fixed in fixed_block_counts(shape, mu).items():
        if not fixed:
            continue
        # class size / group order = 1 / centralizer order
        weight = 1
        den = 1
        for part, c in zip(lam, ct):
            weight *= character_value(part, c)
            den *= centralizer_order(c)
        total += Fraction(fixed * weight, den)
    if total.denominator != 1:
        raise ArithmeticError(f"non-integral multiplicity {total} for {lam}")
    return int(total)


def decomposition_char(shape: Shape, mu: Partition | None = None) -> dict[NPartition, int]:
    table = {}
    for lam in n_partitions(shape):
        m = multiplicity_char(lam, shape, mu)
        if m:
            table[lam] = m
    return table


def schur_weyl_dimension(table: Mapping[NPartition, int]) -> int:
    """Sum of multiplicity times the product of Specht dimensions."""
    return sum(m * prod(dim_specht(part) for part in lam) for lam, m in table.items())
