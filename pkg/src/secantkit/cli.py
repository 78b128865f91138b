"""Command line entry point.

Every subcommand prints one JSON report on stdout and logs on stderr; the exit
status is 0 exactly when the report says ``pass``.  Reports contain no
timings unless ``--timing`` is given, so identical parameters give identical
bytes whatever ``--threads`` is.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from math import comb, prod
from typing import Any, Callable, Sequence

from .closedform import (
    coordinate_ring_table,
    hilbert,
    lambda_stats,
    m_lambda,
    schur_of_pair_tensor,
    sym_of_sym3,
    sym_of_triple_tensor,
)
from .combinatorics import (
    Shape,
    dim_schur,
    format_npartition,
    format_partition,
    parse_npartition,
    parse_partition,
)
from .exactlinalg import DEFAULT_COLUMN_CAP, SizeCapExceeded, rank
from .flattening import one_flattening_space
from .graphmodel import admissible_types, count_types
from .pipeline import (
    METHODS,
    flattening_dim,
    parse_delta,
    resolve_method,
    symmetrizer_multiplicities,
    verify_theorem,
)
from .prolongation import build_pi
from .repmult import check_profile, multiplicity_char
from .zeroweight import basis_size

log = logging.getLogger("secantkit")

THREADS_ENV = "SECANTKIT_THREADS"


@dataclass
class RunReport:
    command: str
    parameters: dict[str, Any]
    results: dict[str, Any] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)
    elapsed_ms: int | None = None

    @property
    def status(self) -> str:
        return "fail" if self.violations else "pass"

    def as_dict(self) -> dict[str, Any]:
        out = {
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "status": self.status,
            "violations": self.violations,
        }
        if self.elapsed_ms is not None:
            out["elapsed_ms"] = self.elapsed_ms
        return out

    def to_json(self, pretty: bool = False) -> str:
        if pretty:
            return json.dumps(self.as_dict(), indent=2, ensure_ascii=False)
        return json.dumps(self.as_dict(), ensure_ascii=False, separators=(",", ":"))


def _check_cap(shape: Shape, cap: int) -> None:
    size = basis_size(shape)
    if size > cap:
        raise SizeCapExceeded(f"block space of dimension {size} exceeds the cap {cap}")


def _shape(args: argparse.Namespace) -> Shape:
    return Shape(parse_delta(args.delta), args.r)


def _lam(text: str, shape: Shape):
    lam = parse_npartition(text)
    if len(lam) != shape.n:
        raise ValueError(f"lambda {text!r} needs {shape.n} components")
    check_profile(lam, shape.profile)
    return lam


def cmd_verify_theorem(args: argparse.Namespace) -> RunReport:
    shape = _shape(args)
    report = RunReport("verify-theorem", {"delta": list(shape.delta), "r": shape.r, "method": args.method})
    _check_cap(shape, args.cap)
    outcome = verify_theorem(shape, threads=args.threads, method=args.method, triples=not args.no_triples)
    report.results = outcome.results()
    report.violations = outcome.violations
    return report


def cmd_verify_gss(args: argparse.Namespace) -> RunReport:
    args.delta = ",".join(["1"] * args.n)
    report = cmd_verify_theorem(args)
    report.command = "verify-gss"
    return report


def cmd_hilbert(args: argparse.Namespace) -> RunReport:
    delta = parse_delta(args.delta)
    dims = parse_delta(args.dims)
    params: dict[str, Any] = {"delta": list(delta), "dims": list(dims)}
    if args.r is not None:
        params["r"] = args.r
        degrees = [args.r]
    else:
        params["r_max"] = args.r_max
        degrees = list(range(args.r_max + 1))
    report = RunReport("hilbert", params)
    ambient = prod(comb(m + d - 1, d) for m, d in zip(dims, delta))
    values = {}
    for r in degrees:
        v = hilbert(Shape(delta, r), dims)
        values[str(r)] = v
        if v > comb(ambient + r - 1, r):
            report.violations.append(f"degree {r}: {v} exceeds the dimension of the polynomial ring")
    if args.r is not None:
        report.results = {
            "r": args.r,
            "value": values[str(args.r)],
            "table": _table_json(coordinate_ring_table(Shape(delta, args.r))),
        }
    else:
        report.results = {"values": values}
    report.results["ambient_dim"] = ambient
    return report


def _table_json(table: dict) -> dict[str, int]:
    return {format_npartition(lam): m for lam, m in table.items()}


def cmd_plethysm(args: argparse.Namespace) -> RunReport:
    report = RunReport("plethysm", {"kind": args.kind})
    if args.kind == "pair":
        mu = parse_partition(args.mu)
        report.parameters["mu"] = format_partition(mu)
        table = schur_of_pair_tensor(mu)
        total = sum(m * dim_schur(a, 2) * dim_schur(b, 2) for (a, b), m in table.items())
        expected = dim_schur(mu, 4)
        report.results = {"table": {f"{format_partition(a)}|{format_partition(b)}": m for (a, b), m in table.items()}}
    else:
        report.parameters["r"] = args.r
        if args.kind == "triple":
            table = sym_of_triple_tensor(args.r)
            total = sum(m * prod(dim_schur(p, 2) for p in lam) for lam, m in table.items())
            expected = comb(args.r + 7, 7)
            report.results = {"table": _table_json(table)}
        else:
            sym3 = sym_of_sym3(args.r)
            total = sum(m * dim_schur(lam, 2) for lam, m in sym3.items())
            expected = comb(args.r + 3, 3)
            report.results = {"table": {format_partition(lam): m for lam, m in sym3.items()}}
    report.results["dimension"] = total
    report.results["expected_dimension"] = expected
    if total != expected:
        report.violations.append(f"table dimension {total} differs from {expected}")
    return report


def cmd_mult(args: argparse.Namespace) -> RunReport:
    shape = _shape(args)
    lam = _lam(args.lam, shape)
    report = RunReport("mult", {"delta": list(shape.delta), "r": shape.r, "lambda": format_npartition(lam)})
    _check_cap(shape, args.cap)
    total, ideal = symmetrizer_multiplicities(lam, shape)
    char = multiplicity_char(lam, shape)
    closed = m_lambda(shape, lam) if all(len(p) <= 2 for p in lam) else 0
    report.results = {
        "U_sym": total,
        "U_char": char,
        "I_sym": ideal,
        "coordinate_ring_sym": total - ideal,
        "coordinate_ring_closed_form": closed,
    }
    if total != char:
        report.violations.append(f"symmetrizer {total} and character {char} disagree on U")
    if total - ideal != closed:
        report.violations.append(f"coordinate ring: symmetrizer {total - ideal}, closed form {closed}")
    return report


def cmd_types(args: argparse.Namespace) -> RunReport:
    shape = _shape(args)
    lam = _lam(args.lam, shape)
    report = RunReport("types", {"delta": list(shape.delta), "r": shape.r, "lambda": format_npartition(lam)})
    st = lambda_stats(shape.delta, lam)
    count = count_types(shape, lam)
    closed = m_lambda(shape, lam)
    report.results = {
        "e": st.e,
        "f": st.f,
        "types": [[t.a, t.b] for t in admissible_types(shape, lam)] if count else [],
        "count": count,
        "closed_form": closed,
    }
    if count != closed:
        report.violations.append(f"type count {count} differs from closed form {closed}")
    return report


def cmd_pi_matrix(args: argparse.Namespace) -> RunReport:
    shape = _shape(args)
    mu = parse_partition(args.mu)
    source = parse_partition(args.source_mu) if args.source_mu else None
    params = {"delta": list(shape.delta), "r": shape.r, "mu": format_partition(mu)}
    if source:
        params["source_mu"] = format_partition(source)
    report = RunReport("pi-matrix", params)
    _check_cap(shape, args.cap)
    pi = build_pi(shape, mu, source)
    M = pi.matrix
    report.results = {"rows": M.rows, "cols": M.cols, "nnz": M.nnz(), "rank": rank(M)}
    if args.entries:
        report.results["entries"] = [[i, j, int(v)] for (i, j), v in sorted(M.entries.items())]
    return report


def cmd_flatten_dim(args: argparse.Namespace) -> RunReport:
    shape = _shape(args)
    report = RunReport("flatten-dim", {
        "delta": list(shape.delta), "r": shape.r, "minor_size": args.minor_size,
        "one_sided": args.one_sided, "method": args.method,
    })
    _check_cap(shape, args.cap)
    if args.one_sided:
        dim = one_flattening_space(shape, args.minor_size).dim
        route = "direct"
    else:
        route = resolve_method(shape, args.method)
        dim = flattening_dim(shape, route, args.minor_size)
    report.results = {"dim_U": basis_size(shape), "dim_F": dim, "route": route}
    return report


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive_int, default=os.cpu_count() or 1,
                        help=f"worker processes (overridden by ${THREADS_ENV})")
    common.add_argument("--pretty", action="store_true", help="indented JSON")
    common.add_argument("--timing", action="store_true", help="add elapsed_ms to the report")
    common.add_argument("--cap", type=_positive_int, default=DEFAULT_COLUMN_CAP,
                        help="refuse block spaces larger than this")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress on stderr")

    parser = argparse.ArgumentParser(prog="secantkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(fn=fn)
        return p

    def shape_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--delta", required=True, help="multidegree, e.g. 1,1,1")
        p.add_argument("--r", type=int, required=True, help="degree")

    p = add("verify-theorem", cmd_verify_theorem, "dim F == dim I_r and per-lambda multiplicity triples")
    shape_args(p)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--no-triples", action="store_true", help="skip the per-lambda checks")

    p = add("verify-gss", cmd_verify_gss, "verify-theorem for the Segre case delta = (1, ..., 1)")
    p.add_argument("--n", type=_positive_int, required=True, help="number of factors")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--no-triples", action="store_true")

    p = add("hilbert", cmd_hilbert, "Hilbert function of the secant line variety")
    p.add_argument("--delta", required=True)
    p.add_argument("--dims", required=True, help="dimensions of the factors, each at least 2")
    degree = p.add_mutually_exclusive_group(required=True)
    degree.add_argument("--r", type=int, help="one degree, with its multiplicity table")
    degree.add_argument("--r-max", type=int, help="all degrees 0..r_max")

    p = add("plethysm", cmd_plethysm, "plethysm tables for two-dimensional factors")
    p.add_argument("--kind", choices=("triple", "sym3", "pair"), required=True,
                   help="Sym^r(V1 x V2 x V3), Sym^r(Sym^3 V) or S_mu(V1 x V2)")
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--mu", default=None, help="partition for --kind pair, e.g. 2,1")

    p = add("mult", cmd_mult, "multiplicity of one lambda by symmetrizers, characters and the closed form")
    shape_args(p)
    p.add_argument("--lambda", dest="lam", required=True, help='n-partition, e.g. "2,1|2,1|2,1"')

    p = add("types", cmd_types, "admissible MCB types for one lambda")
    shape_args(p)
    p.add_argument("--lambda", dest="lam", required=True)

    p = add("pi-matrix", cmd_pi_matrix, "prolongation matrix pi_mu")
    shape_args(p)
    p.add_argument("--mu", required=True)
    p.add_argument("--source-mu", default=None)
    p.add_argument("--entries", action="store_true", help="include the nonzero entries")

    p = add("flatten-dim", cmd_flatten_dim, "dimension of the generic flattening space")
    shape_args(p)
    p.add_argument("--minor-size", type=_positive_int, default=None)
    p.add_argument("--one-sided", action="store_true", help="only splits with |A| = 1")
    p.add_argument("--method", choices=METHODS, default="auto")
    return parser


_RUNTIME_OPTIONS = {"fn", "command", "threads", "pretty", "timing", "verbose", "cap"}


def _fail(args: argparse.Namespace, message: str) -> RunReport:
    params = {}
    for k, v in vars(args).items():
        if k in _RUNTIME_OPTIONS:
            continue
        if k in ("delta", "dims") and isinstance(v, str):
            try:
                v = list(parse_delta(v))
            except ValueError:
                pass
        params["lambda" if k == "lam" else k] = v
    return RunReport(args.command, params, {}, [message])


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    env = os.environ.get(THREADS_ENV)
    if env:
        args.threads = _positive_int(env)
    if args.command == "plethysm":
        if args.kind == "pair" and args.mu is None or args.kind != "pair" and args.r is None:
            parser.error("--kind pair needs --mu; the other kinds need --r")
    start = time.perf_counter()
    try:
        report = args.fn(args)
    except SizeCapExceeded as exc:
        log.error("refused: %s", exc)
        report = _fail(args, f"refused: {exc}")
    except ValueError as exc:
        log.error("%s", exc)
        report = _fail(args, f"invalid input: {exc}")
    if args.timing:
        report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    sys.stdout.write(report.to_json(args.pretty) + "\n")
    return 0 if report.status == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
