"""Spec-file parser, verification reports and the ``kingeom`` command line."""

from .cli import main
from .dump import dump_catalog, show
from .loader import format_spec, merge_into_catalog
from .parser import DuplicateName, SpecDocument, SpecError, SpecSyntaxError, UnknownSymbol, parse_expression, parse_spec
from .report import SCHEMA_VERSION, emit_report, report_to_dict

__all__ = [
    "main",
    "dump_catalog",
    "show",
    "format_spec",
    "merge_into_catalog",
    "DuplicateName",
    "SpecDocument",
    "SpecError",
    "SpecSyntaxError",
    "UnknownSymbol",
    "parse_expression",
    "parse_spec",
    "SCHEMA_VERSION",
    "emit_report",
    "report_to_dict",
]
