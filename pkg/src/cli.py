"""
Command-line front end

    nilring info RING
    nilring ideals RING
    nilring classify RING --ideal 0,4
    nilring verify [RING]
    nilring search [--require-all]

Exit codes: 0 success (all theorems pass), 1 theorem failure or a required
separator not found, 2 usage, parse or construction error.
"""

import argparse
import json
import sys
from typing import IO, Any, Iterable, List, Optional, Sequence

from pydantic import BaseModel

from src.core.config import Settings, get_settings
from src.core.exceptions import InvalidDescriptor, ParseError, RingLabError
from src.models.schemas import CatalogReport, ClassificationReport, IdealsReport, RingInfo, SearchReport
from src.services.lab_service import RingLabService
from src.utils.logging_utils import setup_logging

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(f"{self.prog}: {message}")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} is not a positive integer")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text} is negative")
    return value


def _generators(text: str) -> List[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated list of element indices")
    if not values or any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated list of element indices")
    return values


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit the report as JSON")
    common.add_argument("--catalog", default=None, help="Catalog file, one ring expression per line")
    common.add_argument("--size-cap", type=_positive_int, default=None, dest="size_cap", help="Largest ring size")
    common.add_argument(
        "--witness-limit", type=_non_negative_int, default=None, dest="witness_limit",
        help="Cap on witness set length in reports",
    )
    common.add_argument("--workers", type=_positive_int, default=None, help="Processes for verify")
    common.add_argument("--log-level", default=None, dest="log_level", help="DEBUG, INFO, WARNING or ERROR")

    parser = _ArgumentParser(prog="nilring", description="Finite commutative ring laboratory")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_ArgumentParser)
    commands.required = True

    info = commands.add_parser("info", parents=[common], help="Size, units, nilradical and ideal count")
    info.add_argument("ring", help="Ring expression, e.g. 'Z8 x Z3'")

    ideals = commands.add_parser("ideals", parents=[common], help="Ideal lattice with verdict summary")
    ideals.add_argument("ring")

    classify = commands.add_parser("classify", parents=[common], help="Full classification of one ideal")
    classify.add_argument("ring")
    classify.add_argument(
        "--ideal", type=_generators, required=True,
        help="Comma-separated generators as element indices",
    )

    verify = commands.add_parser("verify", parents=[common], help="Theorem suite on one ring or the catalog")
    verify.add_argument("ring", nargs="?", default=None)

    search = commands.add_parser("search", parents=[common], help="Separator search over the catalog")
    search.add_argument(
        "--require-all", action="store_true", dest="require_all",
        help="Exit 1 when any separator is not found",
    )
    return parser


def _settings(args: argparse.Namespace) -> Settings:
    updates = {
        key: getattr(args, key)
        for key in ("size_cap", "witness_limit", "workers", "log_level")
        if getattr(args, key) is not None
    }
    if args.catalog is not None:
        updates["catalog_path"] = args.catalog
    return get_settings().model_copy(update=updates)


def _short(values: Optional[Sequence[Any]], limit: int) -> str:
    if values is None:
        return "-"
    values = list(values)
    shown = ", ".join(str(v) for v in values[:limit])
    if len(values) > limit:
        shown += f", +{len(values) - limit} more"
    return "{" + shown + "}"


def _flag(value: Optional[bool]) -> str:
    if value is None:
        return "-"
    return "yes" if value else "no"


def _render_info(report: RingInfo, limit: int) -> Iterable[str]:
    yield f"ring               {report.ring}"
    yield f"size               {report.size}"
    yield f"zero / one         {report.zero} / {report.one}"
    yield f"units              {report.units_count}"
    yield f"Nil(R)             {_short(report.nilradical, limit)}"
    yield f"ideals             {report.ideal_count}"
    yield f"reduced            {_flag(report.reduced)}"
    yield f"N-integral domain  {_flag(report.n_integral_domain)}"


def _render_ideals(report: IdealsReport, limit: int) -> Iterable[str]:
    yield f"ideals of {report.ring}"
    yield f"{'ideal':<16} {'size':>5}  prime max  nilP  NP   nilM  NM   members"
    for row in report.ideals:
        label = "<" + ",".join(str(g) for g in row.generators) + ">"
        flags = "  ".join(
            f"{_flag(v):<3}"
            for v in (row.prime, row.maximal, row.nil_prime, row.n_prime, row.nil_maximal, row.n_maximal)
        )
        yield f"{label:<16} {len(row.members):>5}  {flags}  {_short(row.members, limit)}"


def _render_classification(report: ClassificationReport, limit: int) -> Iterable[str]:
    w = report.witnesses
    yield f"ideal <{','.join(str(g) for g in report.generators)}> of {report.ring}"
    yield f"  members        {_short(report.members, limit)}"
    yield f"  proper         {_flag(report.proper)}"
    yield f"  prime          {_flag(report.prime)}"
    yield f"  maximal        {_flag(report.maximal)}"
    yield f"  nil-prime      {_flag(report.nil_prime)}  witnesses {_short(w.nil_prime, limit)}"
    yield f"  N-prime        {_flag(report.n_prime)}"
    yield f"  nil-maximal    {_flag(report.nil_maximal)}  witnesses {_short(w.nil_maximal, limit)}"
    yield f"  N-maximal      {_flag(report.n_maximal)}"
    yield f"  nil-minimal    {_flag(report.nil_minimal)}  witnesses {_short(w.nil_minimal, limit)}"
    pair = "-" if w.nil_principal is None else f"r={w.nil_principal[0]}, x={w.nil_principal[1]}"
    yield f"  nil-principal  {_flag(report.nil_principal)}  {pair}"
    r = "-" if w.n_principal is None else f"r={w.n_principal}"
    yield f"  N-principal    {_flag(report.n_principal)}  {r}"
    if not report.witnesses_complete:
        yield "  (witness sets truncated)"
    if report.fallbacks:
        yield "  no single nilpotent serves every pair; per-pair rescuers:"
        for fallback in report.fallbacks[:limit]:
            yield f"    {fallback.a} * {fallback.b}: {_short(fallback.rescuers, limit)}"
        if len(report.fallbacks) > limit:
            yield f"    +{len(report.fallbacks) - limit} more"


def _render_catalog(report: CatalogReport, limit: int) -> Iterable[str]:
    for ring_report in report.reports:
        for entry in ring_report.theorems:
            yield f"{ring_report.ring:<20} {entry.id:<6} {entry.status:<8} {entry.instances:>6}"
            if entry.counterexample is not None:
                yield f"    counterexample {json.dumps(entry.counterexample)}"
    yield (
        f"rings {report.rings}  pass {report.passed}  fail {report.failed}  vacuous {report.vacuous}"
    )


def _render_search(report: SearchReport, limit: int) -> Iterable[str]:
    for result in report.separators:
        first, second = result.pair
        title = f"{first} and not {second}"
        if result.found:
            label = "<" + ",".join(str(g) for g in result.generators) + ">"
            yield f"{title:<32} {result.ring} {label} members {_short(result.ideal, limit)}"
        else:
            yield f"{title:<32} not found"
    yield f"rings searched {report.rings_searched}"


def _emit(report: BaseModel, as_json: bool, render, limit: int, stdout: IO[str]) -> None:
    if as_json:
        stdout.write(json.dumps(report.model_dump(mode="json"), indent=2) + "\n")
    else:
        for line in render(report, limit):
            stdout.write(line + "\n")


def _describe_error(error: RingLabError, text: Optional[str]) -> str:
    message = f"error: {error}"
    offset = getattr(error, "offset", None)
    if text is not None and offset is not None and isinstance(error, (ParseError, InvalidDescriptor)):
        column = len(text.encode("utf-8", errors="surrogatepass")[:offset].decode("utf-8", errors="ignore"))
        message += f"\n  {text}\n  {' ' * column}^"
    return message


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[IO[str]] = None, stderr: Optional[IO[str]] = None) -> int:
    """
    Run one command

    Args:
        argv: Arguments without the program name, sys.argv[1:] by default
        stdout: Report stream
        stderr: Diagnostics and log stream

    Returns:
        Process exit code
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        stderr.write(f"{e}\n{parser.format_usage()}")
        return EXIT_USAGE
    except SystemExit as e:
        return int(e.code or 0)

    settings = _settings(args)
    setup_logging(settings.log_level, settings.log_file, stream=stderr)
    service = RingLabService(settings)
    limit = settings.display_witness_limit
    text = getattr(args, "ring", None)

    try:
        if args.command == "info":
            _emit(service.info(text), args.json, _render_info, limit, stdout)
        elif args.command == "ideals":
            _emit(service.ideals(text), args.json, _render_ideals, limit, stdout)
        elif args.command == "classify":
            _emit(service.classify(text, args.ideal), args.json, _render_classification, limit, stdout)
        elif args.command == "verify":
            report = service.verify(text)
            _emit(report, args.json, _render_catalog, limit, stdout)
            return EXIT_FAILURE if report.failed else EXIT_OK
        elif args.command == "search":
            report = service.search()
            _emit(report, args.json, _render_search, limit, stdout)
            if args.require_all and not all(result.found for result in report.separators):
                return EXIT_FAILURE
    except RingLabError as e:
        stderr.write(_describe_error(e, text) + "\n")
        return EXIT_USAGE
    except OSError as e:
        stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
