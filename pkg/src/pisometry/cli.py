"""Command line interface.

Exit codes: 0 success, 1 property failure, 2 parse error, 3 shape or
composability mismatch, 4 precondition violation, 64 usage error.

The ``PISO_TOL`` environment variable overrides the equality tolerance.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys

from . import io as formats
from .errors import ParseError, PreconditionError, ShapeMismatch
from .linalg import DEFAULT_TOL, Tolerance
from .modules import (
    contained_partial_isometry_mod,
    is_partial_isometry_mod,
    product_invariance_criterion,
)
from .operators import classify, contained_partial_isometry, dot_compose, product_criterion
from .partial_functions import classify_pdf, compose_pdf, to_partial_isometry
from .pdi import compose_pdi, contained_pdi
from .suites import SUITE_NAMES, SuiteConfig, run

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_PARSE = 2
EXIT_SHAPE = 3
EXIT_PRECONDITION = 4
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="pisometry")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_classify = sub.add_parser("classify", help="classify an operator or map")
    p_classify.add_argument("file")

    p_compose = sub.add_parser("compose", help="compose two objects")
    p_compose.add_argument("left")
    p_compose.add_argument("right")
    p_compose.add_argument(
        "--mode",
        choices=("product", "dot", "pdi"),
        default="dot",
        help="plain product, contained-partial-isometry composition, or "
        "partially defined isometry composition",
    )
    p_compose.add_argument("--out", help="write the result as JSON to this path")

    p_contained = sub.add_parser(
        "contained", help="partial isometry contained in a contraction"
    )
    p_contained.add_argument("file")
    p_contained.add_argument("--out", help="write the result as JSON to this path")

    p_verify = sub.add_parser("verify", help="run a property-verification suite")
    p_verify.add_argument("--suite", choices=SUITE_NAMES, default="all")
    p_verify.add_argument("--trials", type=int, default=200)
    p_verify.add_argument("--dim", type=int, default=4)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--tol", type=float, default=None, help="equality tolerance")
    p_verify.add_argument("--report", help="write a machine-readable JSON report here")
    return parser


def _tolerance(explicit: float | None = None) -> Tolerance:
    value = explicit
    if value is None:
        env = os.environ.get("PISO_TOL")
        if env is not None:
            try:
                value = float(env)
            except ValueError as exc:
                raise ParseError(f"PISO_TOL is not a number: {env!r}") from exc
    if value is None:
        return DEFAULT_TOL
    return dataclasses.replace(DEFAULT_TOL, eq=value)


def _cmd_classify(args, tol: Tolerance) -> int:
    kind, value = formats.sniff_and_parse(args.file)
    if kind == "matrix":
        print(classify(value, tol).describe())
    elif kind == "partial_fn":
        print(classify_pdf(value).describe())
    elif kind == "module_map":
        is_pi, _ = is_partial_isometry_mod(value, tol)
        parts = []
        if is_pi:
            parts.append("partial isometry")
        elif value.is_contraction(tol):
            parts.append("contraction; not a partial isometry")
        else:
            parts.append("not a contraction")
        print("module map: " + "; ".join(parts))
    elif kind == "pdi":
        print(f"partially defined isometry; domain rank {value.domain.dim}")
    else:
        print(f"{kind}: nothing to classify")
    return EXIT_OK


def _cmd_compose(args, tol: Tolerance) -> int:
    kind_l, left = formats.sniff_and_parse(args.left)
    kind_r, right = formats.sniff_and_parse(args.right)
    if kind_l != kind_r:
        raise ShapeMismatch(f"cannot compose a {kind_l} with a {kind_r}")

    if kind_l == "matrix":
        if args.mode == "product":
            crit = product_criterion(left, right, tol)
            result = left @ right
            print(f"product is a partial isometry: {crit.product_is_pi}")
            print(f"four-way criterion agrees: {crit.agree()}")
        else:
            result = dot_compose(left, right, tol)
            print("dot composition computed; result is a partial isometry")
        out_obj = formats.matrix_to_obj(result)
    elif kind_l == "partial_fn":
        composed = compose_pdf(left, right)
        print(f"composed on domain of size {len(composed.mapping)}")
        out_obj = formats.partial_fn_to_obj(composed)
        if args.mode != "product":
            matrix = to_partial_isometry(left) @ to_partial_isometry(right)
            assert (to_partial_isometry(composed) == matrix).all()
    elif kind_l == "module_map":
        if args.mode == "product":
            is_pi, invariant = product_invariance_criterion(left, right, tol)
            result = left.compose(right)
            print(f"product is a partial isometry: {is_pi}")
            print(f"initial projection leaves the image invariant: {invariant}")
        else:
            result = contained_partial_isometry_mod(left.compose(right), tol)
            print("dot composition computed; result is a module partial isometry")
        out_obj = formats.module_map_to_obj(result)
    elif kind_l == "pdi":
        composed = compose_pdi(left, right, tol)
        print(f"composed partially defined isometry; domain rank {composed.domain.dim}")
        out_obj = formats.pdi_to_obj(composed)
    else:
        raise ShapeMismatch(f"objects of kind {kind_l!r} cannot be composed")

    if args.out:
        formats.dump_json(out_obj, args.out)
        print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_contained(args, tol: Tolerance) -> int:
    kind, value = formats.sniff_and_parse(args.file)
    if kind == "matrix":
        data = contained_partial_isometry(value, tol)
        print(f"isometric subspace dimension: {data.subspace.dim}")
        out_obj = formats.matrix_to_obj(data.v)
    elif kind == "module_map":
        pdi = contained_pdi(value, tol)
        v = contained_partial_isometry_mod(value, tol)
        print(f"isometric submodule rank: {pdi.domain.dim}")
        out_obj = formats.module_map_to_obj(v)
    else:
        raise ShapeMismatch(f"no contained partial isometry for kind {kind!r}")
    if args.out:
        formats.dump_json(out_obj, args.out)
        print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_verify(args, tol: Tolerance) -> int:
    cfg = SuiteConfig(
        suite=args.suite, trials=args.trials, dim=args.dim, seed=args.seed, tol=tol
    )
    report = run(cfg)
    for suite in report.suites:
        status = "pass" if suite.passed else "FAIL"
        print(
            f"{suite.name:12s} {status}  trials={suite.trials}"
            f"  worst_residual={suite.worst_residual:.3e}"
            f"  duration={suite.duration:.2f}s"
        )
        for failure in suite.failures[:5]:
            print(f"  trial {failure['trial']} (seed {failure['seed']}): {failure['reason']}")
    if args.report:
        formats.dump_json(report.to_obj(), args.report)
        print(f"wrote {args.report}")
    return EXIT_OK if report.passed else EXIT_PROPERTY


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        tol = _tolerance(getattr(args, "tol", None))
        if args.command == "classify":
            return _cmd_classify(args, tol)
        if args.command == "compose":
            return _cmd_compose(args, tol)
        if args.command == "contained":
            return _cmd_contained(args, tol)
        if args.command == "verify":
            return _cmd_verify(args, tol)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ShapeMismatch as exc:
        print(f"shape error: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except (PreconditionError, ValueError) as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
