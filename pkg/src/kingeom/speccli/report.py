"""Text and JSON renderings of a verification report.

Both renderings depend only on the report contents, so two runs with the
same seed and catalog produce identical bytes.  Wall times are left out
unless explicitly requested, because they differ from run to run.
"""

from __future__ import annotations

import json
from collections import Counter

from ..suites import FAIL, PASS, SKIPPED, VerificationReport

__all__ = ["SCHEMA_VERSION", "report_to_dict", "emit_report"]

SCHEMA_VERSION = 1

_SUMMARY_LINES = {
    "closure": (("closure", "algebras closed"), ("involutions", "involution checks passed")),
    "geometry": (
        ("compatibility killing curvature weyl signature", "geometries verified"),
        ("contrast", "contrast rows verified"),
        ("genuine", "genuine-kinematics rows verified"),
    ),
    "contraction": (("algebra geometry", "contraction edges verified"), ("combinatory", "combinatory bases verified")),
    "duality": (("pullback", "duality pairs verified"),),
    "additivity": (("h-sum", "additivity identities verified"),),
}


def report_to_dict(report: VerificationReport, include_timings: bool = False) -> dict:
    checks = []
    for check in report.checks:
        entry = {
            "suite": check.suite,
            "kind": check.kind,
            "subject": check.subject,
            "status": check.status,
            "diagnostic": check.diagnostic,
        }
        if include_timings:
            entry["seconds"] = round(check.seconds, 6)
        checks.append(entry)
    summary = {}
    for suite in report.suites:
        counts = Counter(check.status for check in report.checks if check.suite == suite)
        summary[suite] = {status: counts.get(status, 0) for status in (PASS, FAIL, SKIPPED)}
    return {
        "schema": SCHEMA_VERSION,
        "catalog_version": report.catalog_version,
        "seed": f"0x{report.seed:x}",
        "suites": list(report.suites),
        "status": "pass" if report.passed else "fail",
        "summary": summary,
        "warnings": list(report.warnings),
        "checks": checks,
    }


def _subjects_verified(report: VerificationReport, suite: str, kinds: str | None) -> tuple[int, int]:
    wanted = set(kinds.split()) if kinds else None
    outcome: dict[str, bool] = {}
    for check in report.checks:
        if check.suite != suite or (wanted is not None and check.kind not in wanted):
            continue
        outcome[check.subject] = outcome.get(check.subject, True) and not check.failed
    return sum(outcome.values()), len(outcome)


def _text(report: VerificationReport, include_timings: bool) -> str:
    lines = [f"kingeom verification (catalog {report.catalog_version}, seed 0x{report.seed:x})", ""]
    for suite in report.suites:
        lines.append(f"[{suite}]")
        width = max((len(check.subject) for check in report.checks if check.suite == suite), default=0)
        for check in report.checks:
            if check.suite != suite:
                continue
            line = f"  {check.status.upper():<7} {check.kind:<13} {check.subject:<{width}}"
            if check.diagnostic:
                line += f"  {check.diagnostic}"
            if include_timings:
                line += f"  ({check.seconds:.3f}s)"
            lines.append(line.rstrip())
        for kinds, caption in _SUMMARY_LINES[suite]:
            verified, total = _subjects_verified(report, suite, kinds)
            if total:
                lines.append(f"{caption}: {verified}/{total}")
        lines.append("")
    for warning in report.warnings:
        lines.append(f"warning: {warning}")
    failures = report.failures()
    if failures:
        lines.append(f"failures: {len(failures)}")
        for check in failures:
            lines.append(f"  {check.suite}/{check.kind} {check.subject}: {check.diagnostic}")
    lines.append(f"overall: {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


def emit_report(report: VerificationReport, format: str = "text", include_timings: bool = False) -> bytes:
    """Render ``report`` as UTF-8 bytes in ``text`` or ``json`` format."""
    if format == "json":
        payload = report_to_dict(report, include_timings)
        return (json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")
    if format == "text":
        return _text(report, include_timings).encode("utf-8")
    raise ValueError(f"unknown report format {format!r}")
