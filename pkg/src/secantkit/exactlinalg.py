"""Exact sparse linear algebra over the rationals.

Vectors are sparse dicts ``{index: value}`` with no stored zeros.  Elimination
works on primitive integer rows (fraction-free, content divided out after each
update) and only produces ``Fraction`` values when a canonical reduced basis is
read out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, TextIO

Scalar = int | Fraction
Vector = dict[int, Scalar]

DEFAULT_COLUMN_CAP = 200_000


class SizeCapExceeded(ValueError):
    """Raised when an ambient dimension is above the configured cap."""


def check_cap(ncols: int, cap: int = DEFAULT_COLUMN_CAP) -> None:
    if ncols > cap:
        raise SizeCapExceeded(f"ambient dimension {ncols} exceeds the cap of {cap} columns")


def _as_vector(v: Mapping[int, Scalar] | Sequence[Scalar]) -> Vector:
    if isinstance(v, Mapping):
        return {i: x for i, x in v.items() if x}
    return {i: x for i, x in enumerate(v) if x}


def _primitive(row: Mapping[int, Scalar]) -> dict[int, int]:
    """Scale a rational row to a primitive integer row (content 1)."""
    den = 1
    for x in row.values():
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    ints = {i: int(x * den) for i, x in row.items() if x}
    g = 0
    for x in ints.values():
        g = gcd(g, x)
        if g == 1:
            break
    if g > 1:
        ints = {i: x // g for i, x in ints.items()}
    return ints


def _eliminate(v: dict[int, int], piv_row: dict[int, int], col: int) -> dict[int, int]:
    """Return a primitive multiple of ``a*v - v[col]*piv_row`` with ``col`` cleared."""
    a = piv_row[col]
    b = v[col]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {i: a * x for i, x in v.items()} if a != 1 else dict(v)
    for i, x in piv_row.items():
        y = out.get(i, 0) - b * x
        if y:
            out[i] = y
        else:
            out.pop(i, None)
    c = 0
    for x in out.values():
        c = gcd(c, x)
        if c == 1:
            return out
    if c > 1:
        out = {i: x // c for i, x in out.items()}
    return out


class _ReducedEchelon:
    """Incremental fully reduced echelon form on primitive integer rows.

    ``last=False`` picks the smallest column of each new row as its pivot, which
    yields the canonical reduced row echelon form.  ``last=True`` picks the
    largest column; that variant reads off kernels in canonical form.
    """

    def __init__(self, last: bool = False):
        self.last = last
        self.rows: dict[int, dict[int, int]] = {}

    def reduce(self, v: dict[int, int]) -> dict[int, int]:
        rows = self.rows
        for col in [c for c in v if c in rows]:
            if col in v:
                v = _eliminate(v, rows[col], col)
        return v

    def add(self, row: Mapping[int, Scalar]) -> bool:
        v = self.reduce(_primitive(row))
        if not v:
            return False
        col = max(v) if self.last else min(v)
        if v[col] < 0:
            v = {i: -x for i, x in v.items()}
        for pc, other in list(self.rows.items()):
            if col in other:
                reduced = _eliminate(other, v, col)
                if reduced[pc] < 0:
                    reduced = {i: -x for i, x in reduced.items()}
                self.rows[pc] = reduced
        self.rows[col] = v
        return True

    def normalized(self) -> dict[int, dict[int, Fraction]]:
        out = {}
        for col, row in self.rows.items():
            p = row[col]
            out[col] = {i: Fraction(x, p) for i, x in row.items()}
        return out


@dataclass(frozen=True)
class ExactMatrix:
    """Sparse rational matrix; ``entries`` maps (row, col) to a nonzero scalar."""

    rows: int
    cols: int
    entries: dict[tuple[int, int], Scalar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for (i, j), x in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            if not x:
                raise ValueError("stored zero entry")

    @classmethod
    def from_rows(cls, rows: Iterable[Mapping[int, Scalar] | Sequence[Scalar]], cols: int) -> ExactMatrix:
        entries = {}
        n = 0
        for i, row in enumerate(rows):
            n = i + 1
            for j, x in _as_vector(row).items():
                entries[(i, j)] = x
        return cls(n, cols, entries)

    @classmethod
    def from_columns(cls, columns: Iterable[Mapping[int, Scalar]], rows: int) -> ExactMatrix:
        entries = {}
        n = 0
        for j, col in enumerate(columns):
            n = j + 1
            for i, x in col.items():
                if x:
                    entries[(i, j)] = x
        return cls(rows, n, entries)

    def row_vectors(self) -> list[Vector]:
        out: list[Vector] = [{} for _ in range(self.rows)]
        for (i, j), x in self.entries.items():
            out[i][j] = x
        return out

    def column_vectors(self) -> list[Vector]:
        out: list[Vector] = [{} for _ in range(self.cols)]
        for (i, j), x in self.entries.items():
            out[j][i] = x
        return out

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(self.cols, self.rows, {(j, i): x for (i, j), x in self.entries.items()})

    def apply(self, v: Mapping[int, Scalar]) -> Vector:
        """Matrix times column vector."""
        out: dict[int, Scalar] = {}
        cols = self.column_vectors() if len(v) * 4 < self.cols else None
        if cols is None:
            for (i, j), x in self.entries.items():
                if j in v:
                    out[i] = out.get(i, 0) + x * v[j]
        else:
            for j, y in v.items():
                for i, x in cols[j].items():
                    out[i] = out.get(i, 0) + x * y
        return {i: x for i, x in out.items() if x}

    def nnz(self) -> int:
        return len(self.entries)

    def dump(self, stream: TextIO) -> None:
        stream.write(f"{self.rows} {self.cols} {self.nnz()}\n")
        for (i, j) in sorted(self.entries):
            x = Fraction(self.entries[(i, j)])
            stream.write(f"{i} {j} {x.numerator}/{x.denominator}\n")

    @classmethod
    def load(cls, stream: TextIO) -> ExactMatrix:
        rows, cols, nnz = map(int, stream.readline().split())
        entries = {}
        for _ in range(nnz):
            i, j, x = stream.readline().split()
            entries[(int(i), int(j))] = Fraction(x)
        return cls(rows, cols, entries)


class Subspace:
    """A subspace of Q^n stored by its canonical reduced row echelon basis."""

    __slots__ = ("ambient_dim", "_rows")

    def __init__(self, ambient_dim: int, rows: Mapping[int, Mapping[int, Fraction]]):
        self.ambient_dim = ambient_dim
        self._rows = {p: dict(rows[p]) for p in sorted(rows)}

    @classmethod
    def span(cls, vectors: Iterable[Mapping[int, Scalar] | Sequence[Scalar]], ambient_dim: int,
             cap: int = DEFAULT_COLUMN_CAP) -> Subspace:
        check_cap(ambient_dim, cap)
        ech = _ReducedEchelon()
        for v in vectors:
            vec = _as_vector(v)
            if vec and max(vec) >= ambient_dim:
                raise IndexError("vector index outside the ambient space")
            ech.add(vec)
        return cls(ambient_dim, ech.normalized())

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, {})

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, {i: {i: Fraction(1)} for i in range(ambient_dim)})

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(self._rows)

    @property
    def basis(self) -> list[dict[int, Fraction]]:
        return [dict(row) for row in self._rows.values()]

    def residual(self, v: Mapping[int, Scalar] | Sequence[Scalar]) -> Vector:
        """``v`` minus its projection along the basis onto the pivot coordinates."""
        vec: dict[int, Scalar] = dict(_as_vector(v))
        for p in [c for c in vec if c in self._rows]:
            coef = vec.get(p, 0)
            if not coef:
                continue
            for i, x in self._rows[p].items():
                y = vec.get(i, 0) - coef * x
                if y:
                    vec[i] = y
                else:
                    vec.pop(i, None)
        return vec

    def contains(self, v: Mapping[int, Scalar] | Sequence[Scalar]) -> bool:
        vec = _as_vector(v)
        if vec and max(vec) >= self.ambient_dim:
            raise ValueError("dimension mismatch")
        return not self.residual(vec)

    def issubspace(self, other: Subspace) -> bool:
        _check_same(self, other)
        return all(other.contains(row) for row in self._rows.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.ambient_dim, tuple(self._rows)))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"

    def as_matrix(self) -> ExactMatrix:
        return ExactMatrix.from_rows(self._rows.values(), self.ambient_dim)


def _check_same(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")


def row_space(M: ExactMatrix) -> Subspace:
    return Subspace.span(M.row_vectors(), M.cols)


def kernel(M: ExactMatrix, cap: int = DEFAULT_COLUMN_CAP) -> Subspace:
    """Right kernel of ``M`` in canonical reduced form.

    Reducing the rows with largest-column pivots expresses every pivot variable
    through smaller free variables, so the kernel vector attached to a free
    column has that column as its leading entry.
    """
    check_cap(M.cols, cap)
    ech = _ReducedEchelon(last=True)
    for row in M.row_vectors():
        ech.add(row)
    rows = ech.normalized()
    free = [j for j in range(M.cols) if j not in rows]
    kern: dict[int, dict[int, Fraction]] = {f: {f: Fraction(1)} for f in free}
    for p, row in rows.items():
        for f, c in row.items():
            if f != p:
                kern[f][p] = -c
    return Subspace(M.cols, kern)


def rank(M: ExactMatrix | Iterable[Mapping[int, Scalar]], cols: int | None = None) -> int:
    """Exact rank by fraction-free sparse elimination.

    Columns are ordered by ascending nonzero count (a static Markowitz criterion)
    and rows are taken sparsest first; ties break by lowest index.
    """
    rows = M.row_vectors() if isinstance(M, ExactMatrix) else [_as_vector(v) for v in M]
    return _sparse_rank([_primitive(r) for r in rows if r], modulus=None)


def rank_mod_p(rows: Iterable[Mapping[int, int]], p: int) -> int:
    """Rank of an integer matrix reduced modulo the prime ``p``.

    This never exceeds the rational rank, so it is a certified lower bound.
    """
    reduced = []
    for r in rows:
        v = {i: x % p for i, x in r.items() if x % p}
        if v:
            reduced.append(v)
    return _sparse_rank(reduced, modulus=p)


def _sparse_rank(rows: list[dict[int, int]], modulus: int | None) -> int:
    colcount: dict[int, int] = {}
    for r in rows:
        for j in r:
            colcount[j] = colcount.get(j, 0) + 1
    priority = {j: (c, j) for j, c in colcount.items()}
    order = sorted(range(len(rows)), key=lambda i: (len(rows[i]), i))
    pivots: dict[int, dict[int, int]] = {}
    for i in order:
        v = rows[i]
        while v:
            hits = [j for j in v if j in pivots]
            if not hits:
                break
            j = min(hits, key=priority.__getitem__)
            if modulus is None:
                v = _eliminate(v, pivots[j], j)
            else:
                v = _eliminate_mod(v, pivots[j], j, modulus)
        if v:
            j = min(v, key=priority.__getitem__)
            if modulus is not None:
                inv = pow(v[j], -1, modulus)
                v = {c: x * inv % modulus for c, x in v.items()}
            pivots[j] = v
    return len(pivots)


def _eliminate_mod(v: dict[int, int], piv_row: dict[int, int], col: int, p: int) -> dict[int, int]:
    # piv_row is monic at col
    b = v[col]
    out = dict(v)
    for i, x in piv_row.items():
        y = (out.get(i, 0) - b * x) % p
        if y:
            out[i] = y
        else:
            out.pop(i, None)
    return out


def intersect(A: Subspace, B: Subspace) -> Subspace:
    """A ∩ B: combinations of A's basis whose residual modulo B vanishes."""
    _check_same(A, B)
    basis = A.basis
    residuals = [B.residual(a) for a in basis]
    relations = kernel(ExactMatrix.from_columns(residuals, A.ambient_dim))
    vectors = []
    for y in relations.basis:
        combo: dict[int, Fraction] = {}
        for i, c in y.items():
            for j, x in basis[i].items():
                combo[j] = combo.get(j, 0) + c * x
        vectors.append(combo)
    return Subspace.span(vectors, A.ambient_dim)


def subspace_sum(A: Subspace, B: Subspace) -> Subspace:
    _check_same(A, B)
    return Subspace.span(A.basis + B.basis, A.ambient_dim)


def contains(A: Subspace, v: Mapping[int, Scalar] | Sequence[Scalar]) -> bool:
    return A.contains(v)


def image_rank(M: ExactMatrix, W: Subspace) -> int:
    """Rank of ``M`` restricted to the subspace ``W``."""
    return rank([M.apply(w) for w in W.basis])
