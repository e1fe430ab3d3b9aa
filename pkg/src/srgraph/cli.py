"""Command line front end.

Exit codes: 0 analysis completed (whatever the verdict), 1 oracle anomalies,
2 parse or validation error, 3 budget exceeded or cycle enumeration truncated.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .exact import DEFAULT_SUBMATRIX_BUDGET
from .matrix import MatrixFormatError, parse_matrix
from .network import N1CViolationError, NetworkParseError, parse_network, serialize_network, stoichiometric_matrix
from .oracle import run_oracle
from .report import CHECKS, analyze, input_digest

EXIT_OK = 0
EXIT_ANOMALY = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="srgraph", description=(
        "Decide from network structure whether a reaction system can have multiple equilibria."))
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", help="analyse a reaction network or stoichiometric matrix")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", type=Path, help="reaction network file")
    src.add_argument("--matrix", type=Path, help="matrix file: rows of integers or p/q")
    src.add_argument("--oracle", action="store_true", help="run the random cross-validation harness")
    p.add_argument("--check", action="append", choices=(*CHECKS, "all"),
                   help="analysis to run; repeatable (default: all)")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.add_argument("--output", type=Path, help="write the report here instead of stdout")
    p.add_argument("--dot", type=Path, help="write the SR graph in DOT format, witnesses highlighted")
    p.add_argument("--max-cycle-len", type=_positive_int, help="longest cycle to enumerate (edges)")
    p.add_argument("--submatrix-budget", type=_positive_int, default=DEFAULT_SUBMATRIX_BUDGET,
                   help="refuse SSD checks over this many square submatrices (default: %(default)s)")
    p.add_argument("--seed", type=int, default=1, help="oracle seed (default: %(default)s)")
    p.add_argument("--count-4x4", type=int, default=10_000, help="oracle: number of 4x4 matrices")
    p.add_argument("--count-5x5", type=int, default=1_000, help="oracle: number of 5x5 matrices")
    return parser


def _emit(text: str, dest: Path | None) -> None:
    if dest is None:
        sys.stdout.write(text)
    else:
        dest.write_text(text, encoding="utf-8")


def _run_oracle(args) -> int:
    summary = run_oracle(args.seed, args.count_4x4, args.count_5x5,
                         term_checks=min(1_000, args.count_4x4), budget=args.submatrix_budget)
    _emit(json.dumps(summary.to_dict(), indent=2) + "\n", args.output)
    return EXIT_OK if summary.clean else EXIT_ANOMALY


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.oracle:
        return _run_oracle(args)
    if args.input is None and args.matrix is None:
        print("srgraph: error: one of --input, --matrix or --oracle is required", file=sys.stderr)
        return EXIT_INPUT
    checks = CHECKS if not args.check or "all" in args.check else tuple(args.check)

    try:
        if args.input is not None:
            net = parse_network(args.input.read_text(encoding="utf-8"))
            S = stoichiometric_matrix(net)
            kind, canonical = "network", serialize_network(net)
        else:
            S = parse_matrix(args.matrix.read_text(encoding="utf-8"))
            kind, canonical = "matrix", S.to_text()
    except (OSError, UnicodeDecodeError, NetworkParseError, MatrixFormatError, N1CViolationError) as exc:
        print(f"srgraph: error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    report = analyze(S, checks, input_kind=kind, digest=input_digest(canonical),
                     max_cycle_len=args.max_cycle_len, budget=args.submatrix_budget)
    _emit(report.to_json() if args.report == "json" else report.to_text(), args.output)
    if args.dot is not None:
        args.dot.write_text(report.to_dot(), encoding="utf-8")
    if report.error is not None:
        print(f"srgraph: {report.error}", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
