"""Entry point for the Freudenthal workbench CLI."""

import argparse
import contextlib
import io
import logging
import sys
from typing import List, Optional

from config.settings import FreudenthalConfig
from features.census import CSV_HEADERS, census_to_json, census_to_rows, cmd_census, show_census
from features.evaluate import cmd_classify, cmd_eval, show_classify, show_eval
from features.selftest import SUITES, cmd_selftest, show_selftest
from features.transform import cmd_canonical, cmd_convert, cmd_reduce, cmd_snf, show_transform
from models.jordan import JordanKind
from utils.display import Display
from utils.errors import FreudenthalError, InvariantError
from utils.serialization import decode_element, dumps, parse_domain, read_input, write_csv

logger = logging.getLogger(__name__)

KIND_CHOICES = [k.value for k in JordanKind]


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kind", choices=KIND_CHOICES, help="Jordan kind when the input omits it")
    common.add_argument("--scalars", choices=["int", "rat"], default=None, help="scalar domain (default int)")
    common.add_argument("--format", choices=["json", "csv", "text"], default="json", dest="output_format")
    common.add_argument("--out", default=None, help="write the result to PATH instead of stdout")
    common.add_argument("--seed", type=int, default=None, help="random seed (falls back to FMZ_SEED)")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    common.add_argument("-v", "--verbose", action="store_true", help="same as --log-level DEBUG")
    common.add_argument("--no-color", action="store_true")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="fmz", description="Integral Freudenthal module workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("eval", "forms, rank and invariants of an element"),
        ("classify", "orbit label of an element"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input", help="JSON file, '-' for stdin, or inline JSON")

    for name, help_text in (
        ("reduce", "diagonal reduced form"),
        ("canonical", "projective canonical form (int) or field canonical form (rat)"),
        ("snf", "Smith normal form of a Jordan element"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input", help="JSON file, '-' for stdin, or inline JSON")
        p.add_argument("--witness", action="store_true", help="print the generator word")
        p.add_argument("--verify", action="store_true", help="replay the witness before printing")

    p = sub.add_parser("convert", parents=[common], help="element <-> cube / wedge")
    p.add_argument("input", help="JSON file, '-' for stdin, or inline JSON")
    p.add_argument("--to", choices=["cube", "wedge", "element"], default="element", dest="target")

    p = sub.add_parser("census", parents=[common], help="bucket many elements by q' and orbit label")
    p.add_argument("--height", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--verify", action="store_true", help="replay projective witnesses")

    p = sub.add_parser("selftest", parents=[common], help="run the identity suites")
    p.add_argument("--suite", action="append", choices=list(SUITES), default=[])
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level_name = "DEBUG" if args.verbose else (args.log_level or FreudenthalConfig.LOG_LEVEL)
    level = getattr(logging, str(level_name).upper(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _emit_json(payload, out) -> None:
    out.write(dumps(payload) + "\n")


def _dispatch(args: argparse.Namespace, out) -> int:
    kind = JordanKind.parse(args.kind) if args.kind else None
    domain = parse_domain(args.scalars) if args.scalars else None
    seed = FreudenthalConfig.SEED if args.seed is None else args.seed
    text = args.output_format == "text"

    if args.command == "selftest":
        report = cmd_selftest(args.suite, seed)
        show_selftest(report) if text else _emit_json(report, out)
        return 0 if report["passed"] else 1

    if args.command == "census":
        result = cmd_census(kind, args.height, args.samples, seed, args.jobs, args.verify)
        if text:
            show_census(result)
        elif args.output_format == "csv":
            write_csv(CSV_HEADERS, census_to_rows(result), out)
        else:
            _emit_json(census_to_json(result), out)
        return 0

    data = read_input(args.input)
    if args.command == "snf":
        result = cmd_snf(data, kind, domain or parse_domain("int"), args.witness, args.verify)
        show_transform(result) if text else _emit_json(result, out)
        return 0
    if args.command == "convert":
        result = cmd_convert(data, args.target, kind, domain or parse_domain("int"))
        show_transform(result) if text else _emit_json(result, out)
        return 0

    x = decode_element(data, kind, domain)
    if args.command == "eval":
        report = cmd_eval(x)
        show_eval(report) if text else _emit_json(report, out)
    elif args.command == "classify":
        report = cmd_classify(x)
        show_classify(report) if text else _emit_json(report, out)
    elif args.command == "reduce":
        result = cmd_reduce(x, args.witness, args.verify)
        show_transform(result) if text else _emit_json(result, out)
    elif args.command == "canonical":
        result = cmd_canonical(x, args.witness, args.verify)
        show_transform(result) if text else _emit_json(result, out)
    return 0


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and return the process exit code."""
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    if args.no_color or args.out:
        Display.set_color(False)

    buffer = io.StringIO()
    try:
        if args.output_format == "text" and not args.out:
            code = _dispatch(args, sys.stdout)
        else:
            with contextlib.redirect_stdout(buffer) if args.output_format == "text" else contextlib.nullcontext():
                code = _dispatch(args, buffer)
    except FreudenthalError as exc:
        logger.debug("command failed", exc_info=True)
        Display.print_error(exc.message)
        sys.stdout.write(dumps(exc.to_dict()) + "\n")
        return exc.exit_code
    except Exception as exc:
        logger.exception("unexpected failure in %s", args.command)
        Display.print_error(f"Internal error: {exc}")
        error = {"error": type(exc).__name__, "message": str(exc), "exit_code": InvariantError.exit_code}
        sys.stdout.write(dumps(error) + "\n")
        return InvariantError.exit_code

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(buffer.getvalue())
        logger.info("wrote %s", args.out)
    elif args.output_format != "text":
        sys.stdout.write(buffer.getvalue())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
