"""Command-line front end.

Exit codes: 0 on success, 1 on a usage error, 2 when a bound is violated, a
printed value is not reproduced or an internal invariant breaks.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Optional

from pydantic import BaseModel

from . import __version__
from .config import configure, load_config
from .errors import FitlenError, UsageError
from .models import ReportDocument
from .report import document_kv, dump_kv, flatten, format_document
from .tools import (
    compute_fitting,
    compute_hall,
    compute_max_hall,
    list_covers,
    reproduce_example,
    resolve_group,
    run_check,
    run_conjecture,
    summarize_group,
)
from .tools.build_group import format_summary
from .tools.conjecture import format_conjecture
from .tools.invariants import format_invariant
from .tools.list_covers import format_covers
from .tools.reproduce_example import list_examples

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--action", choices=["natural", "regular"], help="wreath action for iterated powers")
    common.add_argument("--max-degree", type=int, help="largest permutation degree to construct")
    common.add_argument("--oracle-cap", type=int, help="largest group order the brute-force oracle enumerates")
    common.add_argument("--parallel", type=int, help="worker threads for Hall profiles")
    common.add_argument("--seed", type=int, help="seed of the randomized Schreier-Sims phase")
    common.add_argument("--extended", action="store_true", help="permit extended-budget group-level runs")
    common.add_argument("--format", choices=["table", "kv"], default="table", help="output format")
    common.add_argument("--timings", action="store_true", help="include phase timings in reports")
    common.add_argument("--config", type=Path, help="YAML configuration file")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="fitlen",
        description="Fitting lengths, Hall subgroups and Fitting-length bounds of finite soluble groups",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="build a group and verify its Sylow system")
    p.add_argument("group", help="expression such as W(C(2,1),C(3,1)) or generators <(1 2),(1 2 3)>")

    p = sub.add_parser("fitting", parents=[common], help="Fitting length h(G)")
    p.add_argument("group")
    p.add_argument("--derived", action="store_true", help="also report the derived length")

    p = sub.add_parser("hall", parents=[common], help="Fitting length of a Hall subgroup")
    p.add_argument("group")
    p.add_argument("sigma", help="prime set such as {2,3}")

    p = sub.add_parser("frak", aliases=["hall-max"], parents=[common], help="largest Hall Fitting length for a subset size")
    p.add_argument("group")
    p.add_argument("size", type=int)

    p = sub.add_parser("covers", parents=[common], help="covers of a prime set")
    p.add_argument("group", nargs="?", help="weight the covers with this group's Hall profile")
    p.add_argument("--ground", help="prime set such as {2,3,5}")
    p.add_argument("--t-max", type=int, help="largest cover order")
    p.add_argument("--cover", help="a single cover such as {2,3};{3,5};{2,5}")

    p = sub.add_parser("check", parents=[common], help="evaluate every applicable bound")
    p.add_argument("group")
    p.add_argument("--t-max", type=int, help="largest cover order")
    p.add_argument("--sweep", action="store_true", help="three-halls bound on every admissible triple")
    p.add_argument("--no-cjs", action="store_true", help="skip the factorized bound")

    p = sub.add_parser("example", parents=[common], help="reproduce a catalogued example")
    p.add_argument("example_id", nargs="?", help="catalog id; omit with --list")
    p.add_argument("--ell", type=int, default=1, help="iteration count (default 1)")
    p.add_argument("--list", action="store_true", help="list the catalogued examples")

    p = sub.add_parser("conjecture", parents=[common], help="factorization harness on a small group")
    p.add_argument("group")
    p.add_argument("subgroups", nargs=3, metavar="GENS", help="three generator lists such as <(1 2)>")
    p.add_argument(
        "--kind",
        choices=["trifactorized", "permutable-nilpotent"],
        default="trifactorized",
    )
    return parser


def _setup_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _configure(args: argparse.Namespace) -> None:
    configure(
        load_config(
            path=args.config,
            action=args.action,
            max_degree=args.max_degree,
            oracle_cap=args.oracle_cap,
            parallel=args.parallel,
            seed=args.seed,
            extended=True if args.extended else None,
        )
    )


def _emit(args: argparse.Namespace, model: BaseModel, text: Callable[[], str]) -> None:
    if args.format == "kv":
        sys.stdout.write(dump_kv(flatten(model)))
    else:
        sys.stdout.write(text().rstrip("\n") + "\n")


def _emit_document(args: argparse.Namespace, doc: ReportDocument) -> int:
    if args.format == "kv":
        sys.stdout.write(document_kv(doc, timings=args.timings))
    else:
        sys.stdout.write(format_document(doc, timings=args.timings))
    return doc.exit_code


def _run(args: argparse.Namespace) -> int:
    command = args.command
    if command == "build":
        summary = summarize_group(resolve_group(args.group, verify=False))
        _emit(args, summary, lambda: format_summary(summary))
        return EXIT_OK if summary.sylow is None or summary.sylow.passed else EXIT_FAILURE

    if command == "fitting":
        result = compute_fitting(resolve_group(args.group), with_derived=args.derived)
    elif command == "hall":
        result = compute_hall(resolve_group(args.group), args.sigma)
    elif command in ("frak", "hall-max"):
        result = compute_max_hall(resolve_group(args.group), args.size)
    elif command == "covers":
        group = resolve_group(args.group) if args.group else None
        if group is None and args.ground is None:
            raise UsageError("covers needs a group or --ground")
        listing = list_covers(ground=args.ground, group=group, t_max=args.t_max, cover_text=args.cover)
        _emit(args, listing, lambda: format_covers(listing))
        return EXIT_OK
    elif command == "check":
        doc = run_check(
            resolve_group(args.group),
            t_max=args.t_max,
            sweep=args.sweep,
            include_cjs=False if args.no_cjs else None,
        )
        return _emit_document(args, doc)
    elif command == "example":
        if args.list:
            sys.stdout.write(list_examples() + "\n")
            return EXIT_OK
        if args.example_id is None:
            raise UsageError("example needs an id (see --list)")
        return _emit_document(args, reproduce_example(args.example_id, args.ell))
    elif command == "conjecture":
        report = run_conjecture(resolve_group(args.group), args.subgroups, kind=args.kind)
        _emit(args, report, lambda: format_conjecture(report))
        return EXIT_FAILURE if report.kegel_holds is False else EXIT_OK
    else:
        raise UsageError(f"unknown command {command}")

    _emit(args, result, lambda: format_invariant(result))
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    """Entry point for the ``fitlen`` command."""
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.verbose)
    try:
        _configure(args)
        return _run(args)
    except (UsageError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FitlenError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE if isinstance(e, RuntimeError) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
