"""End-to-end checks shared by the command line and the acceptance tests.

Dimensions of F and I_r come from one of two routes:

* ``direct``: exact ranks in the generic block space (the flattening generators,
  and the stacked prolongation maps);
* ``weights``: weight-space dimensions of the concrete ring, turned into
  multiplicity tables by Kostka inversion.

``auto`` picks ``direct`` while the block space has at most ``DIRECT_LIMIT``
elements.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, TypeVar

from .closedform import m_lambda
from .combinatorics import NPartition, Shape, format_npartition, two_row_npartitions
from .exactlinalg import rank
from .flattening import generator_vectors
from .graphmodel import count_types
from .prolongation import ideal_dim as stacked_ideal_dim
from .prolongation import pi_image, secant_mus
from .repmult import full_hwt_vectors
from .weights import _rank_keyed, isotypic_tables, pi_V
from .zeroweight import basis_index, basis_size

log = logging.getLogger(__name__)

DIRECT_LIMIT = 3000
METHODS = ("auto", "direct", "weights")

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> list[R]:
    """``map`` over a process pool; results keep the input order, so output never depends on ``threads``."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def resolve_method(shape: Shape, method: str) -> str:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if method != "auto":
        return method
    return "direct" if basis_size(shape) <= DIRECT_LIMIT else "weights"


def flattening_dim(shape: Shape, method: str = "auto", minor_size: int | None = None) -> int:
    if resolve_method(shape, method) == "direct":
        return rank(list(generator_vectors(shape, minor_size)), basis_size(shape))
    return isotypic_tables(shape, minor_size).dims.flattening


def ideal_dim(shape: Shape, method: str = "auto") -> int:
    if resolve_method(shape, method) == "direct":
        return stacked_ideal_dim(shape)
    return isotypic_tables(shape).dims.ideal


def flattening_in_ideal(shape: Shape, minor_size: int | None = None) -> bool:
    """Every flattening generator is killed by every prolongation map with k parts."""
    index = basis_index(shape)
    mus = secant_mus(shape)
    for vec in generator_vectors(shape, minor_size):
        for mu in mus:
            image: dict = {}
            for i, c in vec.items():
                for t, x in pi_image(index[i], mu, shape.delta).items():
                    image[t] = image.get(t, 0) + c * x
            if any(image.values()):
                return False
    return True


@dataclass(frozen=True)
class LambdaTriple:
    """Three computations of one multiplicity in the coordinate ring."""

    lam: NPartition
    closed_form: int
    sym_total: int
    sym_ideal: int
    types: int

    @property
    def sym(self) -> int:
        return self.sym_total - self.sym_ideal

    @property
    def agree(self) -> bool:
        return self.closed_form == self.sym == self.types

    def as_dict(self) -> dict:
        return {
            "lambda": format_npartition(self.lam),
            "closed_form": self.closed_form,
            "sym_U": self.sym_total,
            "sym_I": self.sym_ideal,
            "types": self.types,
            "agree": self.agree,
        }


def symmetrizer_multiplicities(lam: NPartition, shape: Shape) -> tuple[int, int]:
    """(multiplicity in U, multiplicity in I_r) by Young symmetrizers.

    c * I_r is the part of c * U killed by the prolongation maps, so the
    multiplicity in I_r is the corank of those maps on the highest weight
    vectors of U.  The maps are applied in specialized coordinates, where they
    are the multiplication maps of the concrete ring.
    """
    vecs = full_hwt_vectors(lam, shape)
    total = _rank_keyed(vecs)
    if shape.r <= shape.k or not total:
        return total, 0
    images = []
    for v in vecs:
        img: dict = {}
        for m, c in v.items():
            for mu in secant_mus(shape):
                for t, x in pi_V(m, mu, shape.delta).items():
                    img[(mu, t)] = img.get((mu, t), 0) + c * x
        images.append(img)
    return total, total - _rank_keyed(images)


def lambda_triple(shape: Shape, lam: NPartition) -> LambdaTriple:
    total, ideal = symmetrizer_multiplicities(lam, shape)
    return LambdaTriple(tuple(lam), m_lambda(shape, lam), total, ideal, count_types(shape, lam))


def _triple_job(args: tuple[Shape, NPartition]) -> LambdaTriple:
    return lambda_triple(*args)


def lambda_triples(shape: Shape, threads: int = 1) -> list[LambdaTriple]:
    return ordered_map(_triple_job, [(shape, lam) for lam in two_row_npartitions(shape)], threads)


@dataclass
class TheoremReport:
    shape: Shape
    route: str
    dim_U: int
    dim_F: int
    dim_I: int
    containment: bool | None
    triples: list[LambdaTriple] = field(default_factory=list)

    @property
    def violations(self) -> list[str]:
        out = []
        if self.dim_F != self.dim_I:
            out.append(f"dim F = {self.dim_F} but dim I = {self.dim_I}")
        if self.containment is False:
            out.append("a flattening generator is not in the ideal")
        for t in self.triples:
            if not t.agree:
                out.append(
                    f"lambda {format_npartition(t.lam)}: closed form {t.closed_form}, "
                    f"symmetrizer {t.sym}, types {t.types}"
                )
        return out

    @property
    def passed(self) -> bool:
        return not self.violations

    def results(self) -> dict:
        return {
            "route": self.route,
            "dim_U": self.dim_U,
            "dim_F": self.dim_F,
            "dim_I": self.dim_I,
            "flattening_in_ideal": self.containment,
            "lambdas": [t.as_dict() for t in self.triples if t.closed_form or t.sym or t.types],
            "lambdas_checked": len(self.triples),
        }


def verify_theorem(shape: Shape, threads: int = 1, method: str = "auto", triples: bool = True) -> TheoremReport:
    """dim F == dim I_r, F inside I_r (direct route), and the per-lambda triples."""
    route = resolve_method(shape, method)
    log.info("verifying delta=%s r=%d by the %s route", shape.delta, shape.r, route)
    if route == "direct":
        dim_f = flattening_dim(shape, "direct")
        dim_i = ideal_dim(shape, "direct")
        containment: bool | None = flattening_in_ideal(shape)
    else:
        dims = isotypic_tables(shape).dims
        if dims.total != basis_size(shape):
            raise ArithmeticError("weight-space tables do not add up to the block count")
        dim_f, dim_i, containment = dims.flattening, dims.ideal, None
    report = TheoremReport(shape, route, basis_size(shape), dim_f, dim_i, containment)
    if triples and shape.k == 2:
        report.triples = lambda_triples(shape, threads)
    return report


def parse_delta(values: Sequence[int] | str) -> tuple[int, ...]:
    if isinstance(values, str):
        values = [int(x) for x in values.split(",") if x.strip()]
    return tuple(int(x) for x in values)
