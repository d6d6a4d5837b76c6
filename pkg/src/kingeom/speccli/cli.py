"""Command-line driver: ``verify``, ``show`` and ``dump-catalog``.

Exit status is 0 when every check passes, 1 when a check fails and 2 for
usage or spec-file errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from ..catalog.algebras import StaticExcluded, UnknownAlgebra
from ..catalog.geometries import UnknownGeometry
from ..exactnum import DEFAULT_SEED
from ..suites import SUITES, Catalog, run_verification
from .dump import dump_catalog, show
from .loader import merge_into_catalog
from .parser import SpecError, parse_spec
from .report import emit_report

__all__ = ["main", "build_parser", "load_specs"]

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _hex_seed(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be hexadecimal, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    # argparse already exits with status 2 on usage errors
    parser = argparse.ArgumentParser(prog="kingeom", description="Exact checks of kinematical algebras and their geometries.")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="run verification suites")
    verify.add_argument("--suite", action="append", choices=("all",) + SUITES, help="suite to run (repeatable, default all)")
    verify.add_argument("--only", metavar="NAME", help="restrict checks to one algebra or geometry name")
    verify.add_argument("--spec", action="append", default=[], metavar="FILE", help="extra declarations (repeatable)")
    verify.add_argument("--seed", type=_hex_seed, default=DEFAULT_SEED, help="sample-point seed in hex (default 4b494e)")
    verify.add_argument("--format", choices=("text", "json"), default="text")
    verify.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")
    verify.add_argument("--timings", action="store_true", help="include wall time per check (not byte-stable)")

    show_command = commands.add_parser("show", help="print one catalog entry")
    show_command.add_argument("kind", choices=("algebra", "geometry"))
    show_command.add_argument("name")
    show_command.add_argument("--spec", action="append", default=[], metavar="FILE")
    show_command.add_argument("--format", choices=("text", "json"), default="text")

    dump = commands.add_parser("dump-catalog", help="serialize every built-in algebra and geometry")
    dump.add_argument("--format", choices=("text", "json"), default="json")
    dump.add_argument("--out", metavar="FILE")
    return parser


def load_specs(paths: Sequence[str], catalog: Catalog | None = None) -> Catalog:
    """Parse spec files in order; later files may refer to names from earlier ones."""
    catalog = catalog or Catalog()
    for path in paths:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
        try:
            document = parse_spec(text, catalog.algebra_names, catalog.geometry_names)
        except SpecError as error:
            error.path = path
            raise
        merge_into_catalog(document, catalog)
    return catalog


def _write(data: bytes, out: str | None) -> None:
    if out:
        with open(out, "wb") as handle:
            handle.write(data)
    else:
        sys.stdout.flush()
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def main(argv: Sequence[str] | None = None, catalog: Catalog | None = None) -> int:
    """Run the CLI; ``catalog`` lets callers substitute the built-in rows."""
    arguments = build_parser().parse_args(argv)
    try:
        catalog = load_specs(getattr(arguments, "spec", []), catalog)
    except (SpecError, OSError) as error:
        print(f"kingeom: {error}", file=sys.stderr)
        return EXIT_USAGE

    if arguments.command == "verify":
        report = run_verification(arguments.suite or ["all"], arguments.only, arguments.seed, catalog)
        _write(emit_report(report, arguments.format, arguments.timings), arguments.out)
        return EXIT_PASS if report.passed else EXIT_FAIL

    if arguments.command == "show":
        try:
            text = show(arguments.kind, arguments.name, catalog.algebra, catalog.geometry, arguments.format)
        except (UnknownAlgebra, UnknownGeometry, StaticExcluded) as error:
            print(f"kingeom: unknown {arguments.kind} {error}", file=sys.stderr)
            return EXIT_USAGE
        _write(text.encode("utf-8"), None)
        return EXIT_PASS

    _write(dump_catalog(arguments.format).encode("utf-8"), arguments.out)
    return EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
