"""Command-line front end and the on-disk tensor format.

Tensors travel as JSON documents::

    {"row_dims": [2, 2], "col_dims": [2], "entries": [[re, im], ...]}

with entries in the package-wide row-major order (row tuple before column
tuple, last index varying fastest) and numbers written with 17 significant
digits so a write-then-read round trip is value-exact.

Exit codes: 0 success, 1 I/O or input error, 2 usage error, 3 a checked
law does not hold (``rol``) or a fuzz run saw an equivalence violation,
4 SVD non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from .core import DEFAULT_POLICY, DenseTensor, ModeShape, NumericPolicy, trace
from .mpinv import identity_suite, min_norm_solve, pinv, tsvd
from .rol import fuzz_search, rol_report
from .unfold import SvdConvergenceError

__all__ = [
    "TensorFormatError",
    "parse_tensor_file",
    "format_tensor",
    "write_tensor_file",
    "run_command",
    "main",
]


class TensorFormatError(ValueError):
    """A tensor document failed to parse.

    ``code`` is one of ``malformed-json``, ``bad-shape``, ``bad-entry``,
    ``length-mismatch`` or ``non-finite``; ``index`` locates the
    offending entry (or dimension) when one exists.
    """

    def __init__(self, code: str, index: int | None, message: str):
        self.code = code
        self.index = index
        where = "" if index is None else f" at index {index}"
        super().__init__(f"{code}{where}: {message}")


def _fmt17(x: float) -> str:
    """17-significant-digit decimal form; parses back to the same double."""
    s = format(float(x), ".17g")
    # "-0" would come back through JSON as the integer 0, dropping the sign.
    return "-0.0" if s == "-0" else s


def _dims_from(doc: dict, key: str) -> tuple[int, ...]:
    value = doc.get(key)
    if not isinstance(value, list):
        raise TensorFormatError("bad-shape", None, f"{key} must be a list of positive integers")
    for i, d in enumerate(value):
        if not isinstance(d, int) or isinstance(d, bool) or d < 1:
            raise TensorFormatError("bad-shape", i, f"{key}[{i}] must be a positive integer")
    return tuple(value)


def parse_tensor_file(source: str | os.PathLike) -> DenseTensor:
    """Parse a tensor document from a file path or raw JSON text.

    Raises
    ------
    TensorFormatError
        With a distinct ``code`` and offending ``index`` for malformed
        JSON, bad shape fields, malformed entry pairs, an entry-count
        mismatch, or non-finite numbers.
    OSError
        If ``source`` is a path that cannot be read.
    """
    if isinstance(source, os.PathLike) or os.path.exists(source):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = str(source)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TensorFormatError("malformed-json", exc.pos, exc.msg) from exc
    if not isinstance(doc, dict):
        raise TensorFormatError("malformed-json", None, "top level must be an object")
    shape = ModeShape(_dims_from(doc, "row_dims"), _dims_from(doc, "col_dims"))
    entries = doc.get("entries")
    if not isinstance(entries, list):
        raise TensorFormatError("bad-entry", None, "entries must be a list of [re, im] pairs")
    expected = shape.row_count * shape.col_count
    if len(entries) != expected:
        raise TensorFormatError(
            "length-mismatch",
            len(entries),
            f"shape {shape} needs {expected} entries, got {len(entries)}",
        )
    values = np.empty(expected, dtype=np.complex128)
    for i, pair in enumerate(entries):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise TensorFormatError("bad-entry", i, f"entry must be a [re, im] number pair, got {pair!r}")
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise TensorFormatError("non-finite", i, f"entry [{re!r}, {im!r}] is not finite")
        values[i] = complex(re, im)
    return DenseTensor(shape, values)


def format_tensor(t: DenseTensor) -> str:
    """Serialize ``t`` as a tensor document with 17-significant-digit numbers."""
    body = ",".join(f"[{_fmt17(z.real)},{_fmt17(z.imag)}]" for z in t.entries)
    return (
        '{"row_dims":' + json.dumps(list(t.shape.row_dims))
        + ',"col_dims":' + json.dumps(list(t.shape.col_dims))
        + ',"entries":[' + body + "]}"
    )


def write_tensor_file(path: str | os.PathLike, t: DenseTensor) -> None:
    """Write ``t`` to ``path`` in the tensor document format."""
    Path(path).write_text(format_tensor(t) + "\n", encoding="utf-8")


def _parse_shape(text: str) -> ModeShape:
    # "2x2:3" -> row dims (2, 2), col dims (3,); ValueError lets argparse
    # report it as a usage error
    parts = text.split(":")
    if len(parts) != 2 or not parts[0] or not parts[1]:
        raise ValueError(f"shape must look like ROWSxROWS:COLSxCOLS, got {text!r}")
    return ModeShape(
        tuple(int(d) for d in parts[0].split("x")),
        tuple(int(d) for d in parts[1].split("x")),
    )


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise ValueError("must be >= 1")
    return value


def _cmd_product(args: argparse.Namespace) -> int:
    a = parse_tensor_file(args.a)
    b = parse_tensor_file(args.b)
    write_tensor_file(args.out, a @ b)
    return 0


def _cmd_pinv(args: argparse.Namespace) -> int:
    policy = DEFAULT_POLICY if args.rank_tol is None else NumericPolicy(rank_tol=args.rank_tol)
    write_tensor_file(args.out, pinv(parse_tensor_file(args.infile), policy))
    return 0


def _cmd_svd(args: argparse.Namespace) -> int:
    factors = tsvd(parse_tensor_file(args.infile))
    write_tensor_file(args.out_u, factors.u)
    write_tensor_file(args.out_d, factors.d)
    write_tensor_file(args.out_v, factors.v)
    return 0


def _cmd_trace(args: argparse.Namespace) -> int:
    value = trace(parse_tensor_file(args.infile))
    print(f"{_fmt17(value.real)} {_fmt17(value.imag)}")
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    a = parse_tensor_file(args.a)
    b = parse_tensor_file(args.b)
    write_tensor_file(args.out, min_norm_solve(a, b))
    return 0


def _cmd_rol(args: argparse.Namespace) -> int:
    policy = DEFAULT_POLICY if args.tol is None else NumericPolicy(eq_tol=args.tol)
    report = rol_report(parse_tensor_file(args.a), parse_tensor_file(args.b), policy)
    if args.report:
        Path(args.report).write_text(json.dumps(report.as_dict(), indent=2) + "\n", encoding="utf-8")
    booleans = report.booleans
    for name, residual in report.residuals.items():
        print(f"{name:<16} {residual:12.5e}  {'ok' if booleans[name] else 'fail'}")
    verdict = "holds" if report.holds else "does not hold"
    print(f"reverse-order law {verdict} (tol {policy.eq_tol:g})")
    return 0 if report.holds else 3


def _cmd_fuzz(args: argparse.Namespace) -> int:
    summary = fuzz_search(args.shape, args.trials, args.seed)
    print(
        f"trials {summary.trials}  direct-true {summary.direct_true}  "
        f"direct-false {summary.direct_false}"
    )
    print("families " + " ".join(f"{k}={v}" for k, v in summary.family_counts.items()))
    if summary.violations:
        first = summary.first_violation
        print(f"equivalence violations: {summary.violations} (first at trial {first['trial']})")
        return 3
    print("no equivalence violations")
    return 0


def _cmd_identities(args: argparse.Namespace) -> int:
    report = identity_suite(parse_tensor_file(args.infile))
    for name, residual in report.residuals.items():
        print(f"{name:<22} {residual:12.5e}")
    for flag, value, residual in (
        ("normal", report.normal, report.normal_residual),
        ("ep", report.ep, report.ep_residual),
    ):
        shown = "n/a" if residual is None else f"{residual:12.5e}"
        print(f"{flag:<22} {shown}  {value}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tenrol",
        description="Einstein-product tensor algebra: pseudoinverses, SVD, "
        "and reverse-order-law diagnostics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("product", help="Einstein product of two tensor files")
    p.add_argument("--a", required=True, help="left operand file")
    p.add_argument("--b", required=True, help="right operand file")
    p.add_argument("--out", required=True, help="output file")
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("pinv", help="Moore-Penrose inverse of a tensor file")
    p.add_argument("--in", dest="infile", required=True, help="input file")
    p.add_argument("--out", required=True, help="output file")
    p.add_argument(
        "--rank-tol",
        type=float,
        default=None,
        help=f"relative singular-value cutoff (default {DEFAULT_POLICY.rank_tol:g})",
    )
    p.set_defaults(func=_cmd_pinv)

    p = sub.add_parser("svd", help="tensor SVD factors U, D, V")
    p.add_argument("--in", dest="infile", required=True, help="input file")
    p.add_argument("--out-u", required=True, help="output file for U")
    p.add_argument("--out-d", required=True, help="output file for D")
    p.add_argument("--out-v", required=True, help="output file for V")
    p.set_defaults(func=_cmd_svd)

    p = sub.add_parser("trace", help="print the trace as 're im'")
    p.add_argument("--in", dest="infile", required=True, help="input file")
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("solve", help="minimum-norm least-squares solve of A @ X = B")
    p.add_argument("--a", required=True, help="system tensor file")
    p.add_argument("--b", required=True, help="right-hand side file")
    p.add_argument("--out", required=True, help="output file for X")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("rol", help="reverse-order-law report for a pair")
    p.add_argument("--a", required=True, help="left factor file")
    p.add_argument("--b", required=True, help="right factor file")
    p.add_argument(
        "--tol",
        type=float,
        default=None,
        help=f"boolean threshold (default {DEFAULT_POLICY.eq_tol:g})",
    )
    p.add_argument("--report", default=None, help="also write the full report as JSON here")
    p.set_defaults(func=_cmd_rol)

    p = sub.add_parser("fuzz", help="randomized equivalence cross-validation")
    p.add_argument(
        "--shape",
        type=_parse_shape,
        required=True,
        help="mode split of the left factor, e.g. 2x2:2x2",
    )
    p.add_argument("--trials", type=_positive_int, default=500, help="number of pairs (default 500)")
    p.add_argument("--seed", type=int, default=42, help="stream seed (default 42)")
    p.set_defaults(func=_cmd_fuzz)

    p = sub.add_parser("identities", help="pseudoinverse identity residuals for one tensor")
    p.add_argument("--in", dest="infile", required=True, help="input file")
    p.set_defaults(func=_cmd_identities)

    return parser


def run_command(argv: Sequence[str] | None = None) -> int:
    """Run one CLI invocation and return its exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SvdConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (TensorFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv: Sequence[str] | None = None) -> int:
    return run_command(argv)


if __name__ == "__main__":
    sys.exit(main())
