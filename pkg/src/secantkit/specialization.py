"""Polarization and specialization between blocks and weight monomials.

For an n-partition lam of the profile, Q_lam replaces each label of factor j by
the row of lam^j holding that box; it lands in the lam-weight space of the
concrete ring where dim V_j is the number of rows.  P_lam goes back by
averaging over every block with the given specialization, so Q_lam(P_lam(w)) = w.

The nongeneric side (raising operators, weight-space flattening minors) only
serves to cross-check the generic engine, and is gated by a size cap.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import factorial, prod
from typing import Iterator, Mapping, Sequence

from .combinatorics import NPartition, Partition, Shape, n_partitions, tableau_rows
from .exactlinalg import ExactMatrix, SizeCapExceeded, kernel
from .flattening import expand_minor, minor_generators, splits
from .prolongation import pi_image, secant_mus
from .repmult import check_profile, multiplicity_sym, row_specialize
from .weights import (
    Weight,
    minors_of_weight,
    pi_V,
    raise_vector,
    weight_monomials,
    weight_of,
    _rank_keyed,
)
from .zeroweight import Block, canonical

WeightMonomial = Block

NONGENERIC_CAP = 20_000


def lam_weight(lam: NPartition) -> Weight:
    return tuple(tuple(part) for part in lam)


def specialize_Q(lam: NPartition, block: Block, delta: Sequence[int]) -> WeightMonomial:
    """Replace every label by the row of its box in the matching component of lam."""
    check_profile(lam, [sum(len(row[j]) for row in block) for j in range(len(delta))])
    return row_specialize(lam, block, delta)


def specialize_combination(lam: NPartition, combination: Mapping[Block, Fraction | int],
                           delta: Sequence[int]) -> dict[WeightMonomial, Fraction]:
    out: dict[WeightMonomial, Fraction] = {}
    for block, c in combination.items():
        m = specialize_Q(lam, block, delta)
        out[m] = out.get(m, 0) + c
    return {m: Fraction(c) for m, c in out.items() if c}


def _occurrences(w: WeightMonomial, j: int, i: int) -> list[int]:
    """How often row index i appears in cell j of each factor of w."""
    return [row[j].count(i) for row in w]


def _label_sets(lam: NPartition) -> list[list[list[int]]]:
    return [tableau_rows(part) for part in lam]


def _distributions(labels: Sequence[int], counts: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    """Ordered splits of ``labels`` into consecutive slots of the given sizes, as sorted tuples."""
    if not counts:
        yield []
        return
    first, rest = counts[0], counts[1:]
    for chosen in combinations(labels, first):
        left = [x for x in labels if x not in chosen]
        for tail in _distributions(left, rest):
            yield [chosen] + tail


def _assemble(w: WeightMonomial, choice: Mapping[tuple[int, int], Sequence[tuple[int, ...]]],
              delta: Sequence[int]) -> Block:
    """Lift w by giving factor rho the labels ``choice[(j, i)][rho]`` for each row index i of cell j."""
    rows = []
    for rho, row in enumerate(w):
        cells = []
        for j, cell in enumerate(row):
            labels: list[int] = []
            for i in sorted(set(cell)):
                labels.extend(choice[(j, i)][rho])
            cells.append(tuple(sorted(labels)))
        rows.append(tuple(cells))
    return canonical(rows, delta)


@dataclass(frozen=True)
class Polarization:
    """The uniform average of all blocks specializing to ``monomial``.

    Stored lazily: one representative lift plus the orbit size, which is also
    the reciprocal of every coefficient.
    """

    lam: NPartition
    delta: tuple[int, ...]
    monomial: WeightMonomial
    representative: Block
    orbit_size: int

    @property
    def coefficient(self) -> Fraction:
        return Fraction(1, self.orbit_size)

    def _assemble(self, choice: Mapping[tuple[int, int], list[tuple[int, ...]]]) -> Block:
        return _assemble(self.monomial, choice, self.delta)

    def blocks(self) -> Iterator[Block]:
        """Every block in the average, each exactly once."""
        keys, options = [], []
        for j, rows in enumerate(_label_sets(self.lam)):
            for i, labels in enumerate(rows, start=1):
                keys.append((j, i))
                options.append(list(_distributions(labels, _occurrences(self.monomial, j, i))))
        seen: set[Block] = set()
        for pick in product(*options):
            b = self._assemble(dict(zip(keys, pick)))
            if b not in seen:
                seen.add(b)
                yield b

    def expand(self) -> dict[Block, Fraction]:
        terms = list(self.blocks())
        if len(terms) != self.orbit_size:
            raise AssertionError(f"orbit has {len(terms)} blocks, expected {self.orbit_size}")
        return {b: self.coefficient for b in terms}

    def sample(self, rng: random.Random) -> Block:
        """A uniformly random block of the average."""
        choice = {}
        for j, rows in enumerate(_label_sets(self.lam)):
            for i, labels in enumerate(rows, start=1):
                shuffled = list(labels)
                rng.shuffle(shuffled)
                slots, pos = [], 0
                for c in _occurrences(self.monomial, j, i):
                    slots.append(tuple(sorted(shuffled[pos:pos + c])))
                    pos += c
                choice[(j, i)] = slots
        return self._assemble(choice)


def polarize_P(lam: NPartition, w: WeightMonomial, delta: Sequence[int]) -> Polarization:
    delta = tuple(delta)
    if weight_of(w, len(delta)) != lam_weight(lam):
        raise ValueError(f"monomial is not of weight {lam}")
    choice = {}
    for j, rows in enumerate(_label_sets(lam)):
        for i, labels in enumerate(rows, start=1):
            slots, pos = [], 0
            for c in _occurrences(w, j, i):
                slots.append(tuple(labels[pos:pos + c]))
                pos += c
            choice[(j, i)] = slots
    size = prod(factorial(p) for part in lam for p in part)
    for j, part in enumerate(lam):
        for i in range(1, len(part) + 1):
            size //= prod(factorial(c) for c in _occurrences(w, j, i))
    for row in set(w):
        size //= factorial(w.count(row))
    return Polarization(tuple(lam), delta, w, _assemble(w, choice, delta), size)


def section_holds(lam: NPartition, w: WeightMonomial, delta: Sequence[int]) -> bool:
    """Q(P(w)) == w, with P expanded in full."""
    image = specialize_combination(lam, polarize_P(lam, w, delta).expand(), delta)
    return image == {w: Fraction(1)}


def pi_commutes(lam: NPartition, block: Block, mu: Partition, delta: Sequence[int]) -> bool:
    """Q_lam(pi_mu(block)) == pi_mu(V)(Q_lam(block)).

    The generic side collapses label sets; the nongeneric side multiplies
    monomials by adding exponents.
    """
    left = specialize_combination(lam, pi_image(block, mu, delta), delta)
    right = {m: Fraction(c) for m, c in pi_V(specialize_Q(lam, block, delta), mu, delta).items()}
    return left == right


def _check_cap(size: int, cap: int) -> None:
    if size > cap:
        raise SizeCapExceeded(f"weight space of size {size} exceeds the cap {cap}")


def hwt_dimension(vectors: Sequence[Mapping[WeightMonomial, int]], weight: Weight, delta: Sequence[int]) -> int:
    """Dimension of the highest weight vectors inside the span of ``vectors``."""
    return _rank_keyed(vectors) - _rank_keyed(raise_vector(dict(v), weight, delta) for v in vectors)


def _fits_dims(lam: NPartition, dims: Sequence[int]) -> bool:
    return all(len(part) <= m for part, m in zip(lam, dims))


@dataclass(frozen=True)
class FlatteningComparison:
    lam: NPartition
    nongeneric: int
    generic: int
    skipped: bool = False

    @property
    def passed(self) -> bool:
        return self.skipped or self.nongeneric == self.generic


def compare_flattening_hwt(shape: Shape, dims: Sequence[int], lam: NPartition,
                           cap: int = NONGENERIC_CAP) -> FlatteningComparison:
    """Highest weight dimension of lam in F computed on both sides.

    Nongeneric: weight-lam span of products of (k+1)-minors with monomials,
    minus the rank of the raising operators on it.  Generic: symmetrizer rank
    on the generic minor generators.
    """
    check_profile(lam, shape.profile)
    if not _fits_dims(lam, dims):
        return FlatteningComparison(tuple(lam), 0, 0, skipped=True)
    size = shape.k + 1
    if shape.r < size:
        return FlatteningComparison(tuple(lam), 0, 0)
    weight = lam_weight(lam)
    _check_cap(len(weight_monomials(shape.delta, shape.r, weight)), cap)
    nongeneric = hwt_dimension(list(minors_of_weight(shape.delta, shape.r, weight, size)), weight, shape.delta)
    generators = (
        expand_minor(g, shape.delta) for split in splits(shape.delta) for g in minor_generators(split, shape.r, size)
    )
    generic = multiplicity_sym(lam, generators, shape.delta)
    return FlatteningComparison(tuple(lam), nongeneric, generic)


def nongeneric_flattening_rank_check(shape: Shape, dims: Sequence[int], lam: NPartition,
                                     cap: int = NONGENERIC_CAP) -> bool:
    """True when both sides agree; lam too tall for ``dims`` counts as skipped (True)."""
    return compare_flattening_hwt(shape, dims, lam, cap).passed


def _hwt_basis(weight: Weight, monos: Sequence[WeightMonomial], delta: Sequence[int]) -> list[dict[WeightMonomial, Fraction]]:
    keys: dict = {}
    columns = []
    for m in monos:
        col = {keys.setdefault(k, len(keys)): c for k, c in raise_vector({m: 1}, weight, delta).items()}
        columns.append(col)
    M = ExactMatrix.from_columns(columns, len(keys))
    return [{monos[i]: c for i, c in v.items()} for v in kernel(M).basis]


@dataclass(frozen=True)
class NongenericMultiplicity:
    total: int
    coordinate_ring: int

    @property
    def ideal(self) -> int:
        return self.total - self.coordinate_ring


def nongeneric_multiplicity(shape: Shape, lam: NPartition, cap: int = NONGENERIC_CAP) -> NongenericMultiplicity:
    """Multiplicity of S_lam V in degree r of the polynomial ring and of the secant coordinate ring.

    Highest weight vectors are the kernel of the raising operators on the
    weight-lam monomials; the coordinate-ring part is the rank of the stacked
    multiplication maps on them.
    """
    check_profile(lam, shape.profile)
    weight = lam_weight(lam)
    monos = weight_monomials(shape.delta, shape.r, weight)
    _check_cap(len(monos), cap)
    basis = _hwt_basis(weight, monos, shape.delta)
    if shape.r <= shape.k:
        return NongenericMultiplicity(len(basis), len(basis))
    images = []
    for v in basis:
        img: dict = {}
        for m, c in v.items():
            for mu in secant_mus(shape):
                for t, x in pi_V(m, mu, shape.delta).items():
                    img[(mu, t)] = img.get((mu, t), 0) + c * x
        images.append({k: c for k, c in img.items() if c})
    scale = [prod(c.denominator for c in img.values()) or 1 for img in images]
    return NongenericMultiplicity(len(basis), _rank_keyed(
        {k: int(c * s) for k, c in img.items()} for img, s in zip(images, scale)
    ))


def nongeneric_tables(shape: Shape, dims: Sequence[int], cap: int = NONGENERIC_CAP) -> dict[NPartition, NongenericMultiplicity]:
    """Nonzero multiplicities for every lam whose components fit in ``dims`` rows."""
    out = {}
    for lam in n_partitions(shape, max(dims)):
        if not _fits_dims(lam, dims):
            continue
        m = nongeneric_multiplicity(shape, lam, cap)
        if m.total:
            out[lam] = m
    return out
