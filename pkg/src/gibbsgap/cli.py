"""Command-line entry point.

Two subcommands:

``gibbsgap verify <file> [--tolerance R] [--format text|json]``
    Run every check in a scenario file and print the report.  Exit code 0
    when all checks pass (expected-failure checks pass by raising their
    declared error), 1 when any check fails, 2 when the input cannot be
    parsed or validated.

``gibbsgap generate --seed N --nx N --ny N --count N --out DIR``
    Write ``count`` random scenario files.  Output is a pure function of
    the arguments: the same seed reproduces the same bytes.

No network access, no environment variables: exit codes and stdout/stderr
are the only side channels.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ScenarioError
from .scenario import generate_scenarios, render_json, render_text, run_scenario_file


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gibbsgap",
        description="verify exact divergence decompositions of expectation gaps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run the checks in a scenario file")
    verify.add_argument("file", help="path to a scenario JSON file")
    verify.add_argument(
        "--tolerance", type=float, default=None, metavar="R",
        help="override the default discrepancy tolerance "
        "(1e-10 finite support, 1e-6 grid)",
    )
    verify.add_argument(
        "--format", choices=("text", "json"), default="text",
        help="report format (default: text)",
    )

    gen = sub.add_parser("generate", help="write random scenario files")
    gen.add_argument("--seed", type=int, required=True, help="RNG seed")
    gen.add_argument("--nx", type=int, required=True, help="number of conditioning points")
    gen.add_argument("--ny", type=int, required=True, help="number of outcome points")
    gen.add_argument("--count", type=int, required=True, help="number of files to write")
    gen.add_argument("--out", required=True, metavar="DIR", help="output directory")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "verify":
        if args.tolerance is not None and not args.tolerance > 0:
            print("error: --tolerance must be positive", file=sys.stderr)
            return 2
        try:
            report, code = run_scenario_file(args.file, tolerance=args.tolerance)
        except ScenarioError as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
        render = render_json if args.format == "json" else render_text
        sys.stdout.write(render(report))
        return code
    if args.command == "generate":
        try:
            paths = generate_scenarios(args.seed, args.nx, args.ny, args.count, args.out)
        except ValueError as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
        for p in paths:
            print(p)
        return 0
    return 2  # unreachable: argparse enforces a command


if __name__ == "__main__":
    raise SystemExit(main())
