"""Verification suites over the catalog (and optional user declarations).

Each suite yields :class:`CheckResult` entries in a fixed order, so a report
is reproducible for a given seed and catalog.  ``run_verification`` collects
them into a :class:`VerificationReport`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from . import __version__
from .catalog.algebras import ALGEBRA_NAMES, KINEMATICAL_NAMES, build_algebra
from .catalog.geometries import GEOMETRY_NAMES, build_geometry
from .catalog.recipes import RECIPES
from .catalog import tables
from .contraction import verify_contraction_graph
from .exactnum import DEFAULT_SEED
from .geometry import (
    Geometry,
    KillingContext,
    compat_check,
    covariant_derivative_inverse_metric,
    covariant_derivative_metric,
    constant_curvature_tensor,
    ricci,
    riemann,
    signature_rank,
    weyl_projective,
)
from .liefields import PARITY, TIME_REVERSAL, closure, is_automorphism, jacobi_check, rotations_close

__all__ = [
    "SUITES",
    "CheckResult",
    "VerificationReport",
    "Catalog",
    "run_verification",
    "geometry_checks",
]

SUITES = ("closure", "geometry", "contraction", "duality", "additivity")

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass(frozen=True)
class CheckResult:
    suite: str
    kind: str
    subject: str
    status: str
    diagnostic: str = ""
    seconds: float = 0.0

    @property
    def failed(self) -> bool:
        return self.status == FAIL


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]
    seed: int
    suites: tuple[str, ...]
    catalog_version: str = __version__
    warnings: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not any(check.failed for check in self.checks)

    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if check.failed]

    def subjects(self, suite: str, kind: str | None = None) -> list[CheckResult]:
        return [c for c in self.checks if c.suite == suite and (kind is None or c.kind == kind)]


@dataclass
class Catalog:
    """Name lookups for algebras, geometries, recipes and duality pairs.

    Built-in rows come first; user declarations are appended and may never
    replace a built-in name.
    """

    algebra_names: list[str] = field(default_factory=lambda: list(ALGEBRA_NAMES))
    geometry_names: list[str] = field(default_factory=lambda: list(GEOMETRY_NAMES))
    recipes: list = field(default_factory=lambda: list(RECIPES))
    duality_pairs: list = field(default_factory=lambda: list(tables.DUALITY_PAIRS))
    additivity_triples: list = field(default_factory=lambda: list(tables.ADDITIVITY_TRIPLES))
    contrast_rows: list = field(default_factory=lambda: list(tables.CONTRAST_ROWS))
    genuine_rows: list = field(default_factory=lambda: list(tables.GENUINE_KINEMATICS))
    combinatory_bases: list = field(default_factory=lambda: list(tables.COMBINATORY_BASES))
    extra_algebras: dict = field(default_factory=dict)
    extra_geometries: dict = field(default_factory=dict)
    algebra_builder: Callable = build_algebra
    geometry_builder: Callable = build_geometry

    def algebra(self, name: str):
        if name in self.extra_algebras:
            return self.extra_algebras[name]
        return self.algebra_builder(name)

    def geometry(self, name: str) -> Geometry:
        if name in self.extra_geometries:
            return self.extra_geometries[name]
        return self.geometry_builder(name)

    def kinematical(self, name: str) -> bool:
        return name in KINEMATICAL_NAMES


def _timed(suite: str, kind: str, subject: str, body: Callable[[], str | None]) -> CheckResult:
    """Run ``body``; None means pass, a string is the failure diagnostic."""
    started = time.perf_counter()
    try:
        diagnostic = body()
    except (ArithmeticError, ValueError, KeyError, AssertionError) as error:
        diagnostic = f"{type(error).__name__}: {error}"
    seconds = time.perf_counter() - started
    if diagnostic is None:
        return CheckResult(suite, kind, subject, PASS, "", seconds)
    if isinstance(diagnostic, tuple):
        status, text = diagnostic
        return CheckResult(suite, kind, subject, status, text, seconds)
    return CheckResult(suite, kind, subject, FAIL, diagnostic, seconds)


# ---------------------------------------------------------------------------
# closure


def closure_checks(catalog: Catalog, names: Iterable[str]) -> Iterator[CheckResult]:
    for name in names:
        cache = {}

        def close(name=name, cache=cache):
            algebra = catalog.algebra(name)
            constants = closure(algebra)
            cache["algebra"], cache["constants"] = algebra, constants
            if constants.dimension != 10:
                return f"dimension {constants.dimension}"
            if not jacobi_check(constants):
                return "Jacobi identity fails"
            if not rotations_close(constants):
                return "rotations do not close into so(3)"
            return None

        result = _timed("closure", "closure", name, close)
        yield result

        def involutions(cache=cache):
            if "constants" not in cache:
                return (SKIPPED, "closure failed")
            failing = [
                involution.kind
                for involution in (PARITY, TIME_REVERSAL)
                if not is_automorphism(cache["algebra"], involution, cache["constants"])
            ]
            return f"not an automorphism: {', '.join(failing)}" if failing else None

        yield _timed("closure", "involutions", name, involutions)


# ---------------------------------------------------------------------------
# geometry


def _killing(catalog: Catalog, geometry: Geometry) -> str | None:
    algebra = catalog.algebra(geometry.algebra)
    context = KillingContext(geometry)
    broken = []
    for label, generator in zip(algebra.labels, algebra.basis):
        failed = context.failures(generator)
        if failed:
            broken.append(f"{label} moves {'/'.join(failed)}")
    return "; ".join(broken) or None


def _first_nonzero(tensor, label: str) -> str | None:
    indices = tensor.nonzero_indices()
    if not indices:
        return None
    return f"{label}{list(indices[0])} = {tensor[indices[0]]}"


def geometry_checks(catalog: Catalog, name: str, seed: int = DEFAULT_SEED) -> Iterator[CheckResult]:
    """compatibility, killing, curvature, weyl and signature checks of one geometry."""
    state = {}

    def load():
        return catalog.geometry(name)

    def compatibility():
        state["geometry"] = geometry = load()
        if compat_check(geometry):
            return None
        return _first_nonzero(covariant_derivative_metric(geometry.g, geometry.conn), "nabla g (lam, mu, nu)") or _first_nonzero(
            covariant_derivative_inverse_metric(geometry.h, geometry.conn), "nabla h (mu, nu, lam)"
        )

    yield _timed("geometry", "compatibility", name, compatibility)
    if "geometry" not in state:
        return
    geometry = state["geometry"]
    yield _timed("geometry", "killing", name, lambda: _killing(catalog, geometry))

    def curvature():
        tensor = riemann(geometry.conn)
        state["riemann"] = tensor
        if geometry.curvature_constant is None:
            return (SKIPPED, "no curvature constant declared")
        residual = tensor - constant_curvature_tensor(geometry.g, geometry.curvature_scalar())
        problem = _first_nonzero(residual, "R - k(d g - d g)")
        return f"k = {geometry.curvature_constant}/l^2: {problem}" if problem else None

    yield _timed("geometry", "curvature", name, curvature)

    def weyl():
        tensor = state.get("riemann") or riemann(geometry.conn)
        return _first_nonzero(weyl_projective(tensor, ricci(tensor)), "W")

    yield _timed("geometry", "weyl", name, weyl)

    def signature():
        ranks, descriptor = signature_rank(geometry, seed=seed)
        declared = geometry.declared_signature
        if geometry.declared_ranks is not None and ranks != tuple(geometry.declared_ranks):
            return f"ranks {ranks} != declared {tuple(geometry.declared_ranks)}"
        if declared is not None and not descriptor.matches(declared):
            return f"signature {descriptor} != declared {declared}"
        return (PASS, f"ranks {ranks} signature {descriptor}")

    yield _timed("geometry", "signature", name, signature)


def _genuine(catalog: Catalog, row) -> str | None:
    geometry = catalog.geometry(row.geometry)
    ranks, descriptor = signature_rank(geometry)
    expected_ranks = {"Relativistic": (4, 4), "AbsoluteTime": (1, 3), "AbsoluteSpace": (3, 1)}[row.kind]
    if ranks != expected_ranks:
        return f"{row.geometry}: ranks {ranks}, a {row.kind} geometry needs {expected_ranks}"
    # Curvature signs are quoted for g with time directions positive and
    # space directions negative.  R = k(d g - d g) is fixed by the
    # connection, so reversing the stored g reverses k.
    (positive, negative), _ = descriptor.counts()
    physical = (0, 3) if row.kind == "AbsoluteSpace" else (1, ranks[0] - 1)
    if (positive, negative) == physical:
        orientation = 1
    elif (negative, positive) == physical:
        orientation = -1
    else:
        return f"{row.geometry}: signature {descriptor} is neither {physical} nor its reverse"
    constant = geometry.curvature_constant * orientation
    sign = ">0" if constant > 0 else "<0" if constant < 0 else "=0"
    if sign != row.curvature:
        return f"{row.geometry}: curvature {sign}, listed as {row.curvature}"
    return None


def geometry_suite(catalog: Catalog, only: str | None, seed: int) -> Iterator[CheckResult]:
    for name in catalog.geometry_names:
        if only is None or only == name:
            yield from geometry_checks(catalog, name, seed)
    for row in catalog.contrast_rows:
        if only is None or only == row.geometry:
            yield _timed("geometry", "contrast", row.geometry, lambda row=row: tables.verify_contrast(row, catalog.geometry))
    for row in catalog.genuine_rows:
        if only is None or only == row.geometry:
            yield _timed("geometry", "genuine", row.geometry, lambda row=row: _genuine(catalog, row))


# ---------------------------------------------------------------------------
# contraction, duality, additivity


def contraction_suite(catalog: Catalog, only: str | None, seed: int) -> Iterator[CheckResult]:
    recipes = [r for r in catalog.recipes if only is None or only in (r.source, r.target)]
    report = verify_contraction_graph(recipes, catalog.algebra, catalog.geometry, seed=seed)
    for edge in report.edges:
        status = PASS if edge.passed else FAIL
        text = edge.outcome if edge.passed else f"{edge.outcome}: {edge.diagnostic}"
        yield CheckResult("contraction", edge.recipe.kind, edge.recipe.label, status, text, edge.seconds)
    algebra_recipes = [recipe for recipe in catalog.recipes if recipe.kind == "algebra"]
    for basis in catalog.combinatory_bases:
        if only is None or only == basis.algebra:
            yield _timed(
                "contraction", "combinatory", basis.algebra,
                lambda basis=basis: "; ".join(tables.verify_combinatory(basis, algebra_recipes, catalog.algebra)) or None,
            )


def duality_suite(catalog: Catalog, only: str | None, seed: int) -> Iterator[CheckResult]:
    for pair in catalog.duality_pairs:
        if only is not None and only not in (pair.left, pair.right):
            continue
        yield _timed(
            "duality", "pullback", f"{pair.left} <-> {pair.right}",
            lambda pair=pair: tables.verify_duality_pair(pair, catalog.geometry),
        )


def additivity_suite(catalog: Catalog, only: str | None, seed: int) -> Iterator[CheckResult]:
    for triple in catalog.additivity_triples:
        if only is not None and only not in (triple.first, triple.second, triple.total):
            continue
        sign = "" if triple.orientation > 0 else "-"
        subject = f"{sign}{triple.first} + {triple.second} = {triple.total}"
        yield _timed("additivity", "h-sum", subject, lambda triple=triple: tables.verify_additivity(triple, catalog.geometry))


def run_verification(
    suites: Iterable[str] = ("all",),
    only: str | None = None,
    seed: int = DEFAULT_SEED,
    catalog: Catalog | None = None,
) -> VerificationReport:
    """Run the selected suites in fixed order and collect their checks."""
    catalog = catalog or Catalog()
    chosen = []
    for suite in suites:
        names = SUITES if suite == "all" else (suite,)
        for name in names:
            if name not in SUITES:
                raise ValueError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
            if name not in chosen:
                chosen.append(name)
    chosen.sort(key=SUITES.index)
    checks: list[CheckResult] = []
    for suite in chosen:
        if suite == "closure":
            names = [n for n in catalog.algebra_names if only is None or only == n]
            checks.extend(closure_checks(catalog, names))
        else:
            runner = {
                "geometry": geometry_suite,
                "contraction": contraction_suite,
                "duality": duality_suite,
                "additivity": additivity_suite,
            }[suite]
            checks.extend(runner(catalog, only, seed))
    warnings = ()
    if only is not None and not checks:
        warnings = (f"no check matched --only {only}",)
    return VerificationReport(tuple(checks), seed, tuple(chosen), warnings=warnings)
