"""Relations between catalog rows: duality pairs, time/space contrast,
additivity of contravariant metrics, the genuine-kinematics grid and the
bases obtained by combining primitive generators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..exactnum import RationalFn, var
from ..geometry import CoordinateMap, Geometry, TensorField, pullback, sample_domain_points
from ..liefields import AlgebraPresentation, VectorField
from .algebras import build_algebra
from .generators import generator
from .geometries import build_geometry

__all__ = [
    "DualityPair",
    "DUALITY_PAIRS",
    "SELF_DUAL",
    "DualityMismatch",
    "duality_map",
    "verify_duality_pair",
    "verify_duality_table",
    "ContrastRow",
    "CONTRAST_ROWS",
    "verify_contrast",
    "AdditivityTriple",
    "ADDITIVITY_TRIPLES",
    "verify_additivity",
    "additivity_residual",
    "GenuineKinematicsRow",
    "GENUINE_KINEMATICS",
    "CombinatoryBasis",
    "COMBINATORY_BASES",
    "verify_combinatory",
]

DIM = 4
X = tuple(var(f"x{mu}") for mu in range(DIM))
L = var("l")
ZERO = RationalFn.zero()


# ---------------------------------------------------------------------------
# duality between the present and time infinity


class DualityMismatch(AssertionError):
    """The pullback of one partner is not the other partner."""


def duality_map() -> CoordinateMap:
    """``(x0, x^i) -> (l^2/x0, l x^i/x0)``, i.e. ``t -> 1/(nu^2 t)``, ``x^i -> x^i/(nu t)``; its own inverse."""
    components = (L**2 / X[0],) + tuple(L * X[i] / X[0] for i in (1, 2, 3))
    return CoordinateMap(components, components, "duality")


@dataclass(frozen=True)
class DualityPair:
    """Pullback of ``left`` equals ``(g_sign * g, h_sign * h, Gamma)`` of ``right``."""

    left: str
    right: str
    g_sign: int = 1
    h_sign: int = 1

    @property
    def self_dual(self) -> bool:
        return self.left == self.right


DUALITY_PAIRS = (
    DualityPair("Min", "P'"),
    DualityPair("Euc", "E'"),
    DualityPair("G", "G'", -1, -1),
    DualityPair("EG", "EG'"),
    DualityPair("C", "C_2"),
    DualityPair("EC", "EC_2"),
    DualityPair("G_2", "G_2'", -1, -1),
    DualityPair("EG_2", "EG_2'", -1, -1),
    DualityPair("HN_+", "E_2-", -1, -1),
    DualityPair("EHN_+", "E_2"),
    DualityPair("HN_-", "P_2-"),
    DualityPair("EHN_-", "EP_2-"),
    DualityPair("HN_-'", "P_2+", -1, -1),
    DualityPair("DTHN", "DTP_2+"),
    DualityPair("NH_+", "NH_+'", -1, -1),
    DualityPair("ENH_+", "ENH_+'"),
    DualityPair("NH_2", "NH_2'", -1, -1),
    DualityPair("NH_-", "NH_-"),
    DualityPair("ENH_-", "ENH_-"),
    DualityPair("ENH_2", "ENH_2"),
    DualityPair("DTNH_2", "DTNH_2"),
)

SELF_DUAL = tuple(pair.left for pair in DUALITY_PAIRS if pair.self_dual)


def _first_difference(label: str, mine: TensorField, theirs: TensorField) -> str | None:
    difference = mine - theirs
    if difference.is_zero():
        return None
    index = difference.nonzero_indices()[0]
    return f"{label}{list(index)}: {mine[index]} != {theirs[index]}"


def _domains_agree(first: Geometry, second: Geometry, count: int = 24) -> bool:
    for point in sample_domain_points((), count * 2):
        values = []
        for geometry in (first, second):
            try:
                signs = [condition.poly.evaluate(point) for condition in geometry.domain]
            except ArithmeticError:
                break
            if any(value == 0 for value in signs):
                break
            values.append(all((value > 0) == (c.sign > 0) for value, c in zip(signs, geometry.domain)))
        else:
            if values[0] != values[1]:
                return False
    return True


def verify_duality_pair(pair: DualityPair, lookup: Callable[[str], Geometry] = build_geometry) -> None:
    """Raise :class:`DualityMismatch` unless the pullback of ``left`` is ``right`` with the recorded signs."""
    mapping = duality_map()
    image = pullback(mapping, lookup(pair.left), name=f"dual({pair.left})")
    target = lookup(pair.right)
    problems = [
        _first_difference("g", image.g, target.g * pair.g_sign),
        _first_difference("h", image.h, target.h * pair.h_sign),
        _first_difference("Gamma", image.conn.as_tensor(), target.conn.as_tensor()),
    ]
    problems = [problem for problem in problems if problem]
    if problems:
        raise DualityMismatch(f"{pair.left} <-> {pair.right}: " + "; ".join(problems))
    if not _domains_agree(image, target):
        raise DualityMismatch(f"{pair.left} <-> {pair.right}: domains differ")


def verify_duality_table(only: str | None = None, lookup=build_geometry) -> list[tuple[DualityPair, str | None]]:
    """``(pair, None)`` for each verified pair, ``(pair, diagnostic)`` for each failure."""
    results = []
    for pair in DUALITY_PAIRS:
        if only is not None and only not in (pair.left, pair.right):
            continue
        try:
            verify_duality_pair(pair, lookup)
            results.append((pair, None))
        except (DualityMismatch, ArithmeticError, ValueError) as error:
            results.append((pair, str(error)))
    return results


# ---------------------------------------------------------------------------
# time geometry versus space geometry


@dataclass(frozen=True)
class ContrastRow:
    """A geometry whose nondegenerate block is a Beltrami model and whose
    other metric is ``factor`` times a flat one."""

    geometry: str
    dimension_of_g: int
    factor: RationalFn
    g_model: tuple
    h_flat: tuple


def _newton_hooke_row(name: str, branch: int, h_sign: int) -> ContrastRow:
    sigma = 1 - X[0] ** 2 * branch / L**2
    time_block = (1 / sigma) * (1 + X[0] ** 2 * branch / (L**2 * sigma))
    g_model = ((time_block, ZERO, ZERO, ZERO),) + ((ZERO,) * 4,) * 3
    h_flat = tuple(tuple(RationalFn.coerce(h_sign) if a == b and a > 0 else ZERO for b in range(DIM)) for a in range(DIM))
    return ContrastRow(name, 1, sigma, g_model, h_flat)


def _hooke_newton_row(name: str, branch: int, g_sign: int) -> ContrastRow:
    r2 = X[1] ** 2 + X[2] ** 2 + X[3] ** 2
    sigma = 1 + r2 * branch / L**2
    g_model = tuple(
        tuple(
            ZERO
            if a == 0 or b == 0
            else (g_sign / sigma) * ((1 if a == b else 0) - X[a] * X[b] * branch / (L**2 * sigma))
            for b in range(DIM)
        )
        for a in range(DIM)
    )
    h_flat = tuple(tuple(RationalFn.one() if a == b == 0 else ZERO for b in range(DIM)) for a in range(DIM))
    return ContrastRow(name, 3, sigma, g_model, h_flat)


def _flat_row(name: str, time_metric: bool, g_sign: int, h_sign: int) -> ContrastRow:
    def block(sign, on_time):
        return tuple(
            tuple(RationalFn.coerce(sign) if a == b and ((a == 0) == on_time) else ZERO for b in range(DIM))
            for a in range(DIM)
        )

    return ContrastRow(name, 1 if time_metric else 3, RationalFn.one(), block(g_sign, time_metric), block(h_sign, not time_metric))


CONTRAST_ROWS = (
    _newton_hooke_row("NH_+", 1, -1),
    _newton_hooke_row("NH_-", -1, -1),
    _newton_hooke_row("ENH_+", 1, 1),
    _newton_hooke_row("ENH_-", -1, 1),
    _hooke_newton_row("HN_+", 1, -1),
    _hooke_newton_row("HN_-", -1, -1),
    _hooke_newton_row("EHN_+", 1, 1),
    _hooke_newton_row("EHN_-", -1, 1),
    _flat_row("G", True, 1, -1),
    _flat_row("EG", True, 1, 1),
    _flat_row("C", False, -1, 1),
    _flat_row("EC", False, 1, 1),
)


def verify_contrast(row: ContrastRow, lookup=build_geometry) -> str | None:
    """None when ``g == g_model`` and ``h == factor * h_flat`` exactly, else a diagnostic."""
    geometry = lookup(row.geometry)
    g_model = TensorField.from_matrix((0, 2), row.g_model)
    h_model = TensorField.from_matrix((2, 0), row.h_flat) * row.factor
    for label, mine, theirs in (("g", geometry.g, g_model), ("h", geometry.h, h_model)):
        problem = _first_difference(label, mine, theirs)
        if problem:
            return f"{row.geometry}: {problem}"
    return None


# ---------------------------------------------------------------------------
# additivity of contravariant metrics


@dataclass(frozen=True)
class AdditivityTriple:
    """``orientation * h_first + h_second == h_total``.

    The orientation is +1 when the plain sum holds; a -1 records that the
    catalog's first summand enters the algebraic sum with a minus sign.
    """

    first: str
    second: str
    total: str
    orientation: int = 1


ADDITIVITY_TRIPLES = (
    AdditivityTriple("G_2", "G_2'", "NH_2", 1),
    AdditivityTriple("EG_2", "EG_2'", "ENH_2", -1),
)


def additivity_residual(triple: AdditivityTriple, orientation: int | None = None, lookup=build_geometry) -> TensorField:
    """``orientation * h_first + h_second - h_total`` (zero when the identity holds)."""
    sign = triple.orientation if orientation is None else orientation
    return lookup(triple.first).h * sign + lookup(triple.second).h - lookup(triple.total).h


def verify_additivity(triple: AdditivityTriple, lookup=build_geometry) -> str | None:
    residual = additivity_residual(triple, lookup=lookup)
    if residual.is_zero():
        return None
    index = residual.nonzero_indices()[0]
    return f"{triple.first} + {triple.second} - {triple.total}: h{list(index)} = {residual[index]}"


# ---------------------------------------------------------------------------
# genuine kinematics


@dataclass(frozen=True)
class GenuineKinematicsRow:
    kind: str
    curvature: str
    geometry: str


GENUINE_KINEMATICS = tuple(
    GenuineKinematicsRow(kind, curvature, geometry)
    for kind, row in (
        ("Relativistic", ("dS", "Min", "AdS")),
        ("AbsoluteTime", ("NH_+", "G", "NH_-")),
        ("AbsoluteSpace", ("E_2-", "C", "P_2-")),
    )
    for curvature, geometry in zip((">0", "=0", "<0"), row)
)


# ---------------------------------------------------------------------------
# bases built by summing and subtracting primitive generators

HALF = Fraction(1, 2)
_SUM_TIME = {"H+": HALF, "H-": HALF}
_DIFFERENCE_TIME = {"H+": HALF, "H-": -HALF}
_SUM_TRANSLATION = {"P+": HALF, "P-": HALF}
_GALILEI_BOOST = {"K": HALF, "N": HALF}
_CARROLL_BOOST = {"K": HALF, "N": -HALF}


@dataclass(frozen=True)
class CombinatoryBasis:
    """Time, translation and boost slots as rational combinations of primitive families."""

    algebra: str
    time: tuple
    translation: tuple
    boost: tuple

    def presentation(self) -> AlgebraPresentation:
        basis = [_combine(self.time, 0)]
        for combination in (self.translation, self.boost):
            basis.extend(_combine(combination, index) for index in (1, 2, 3))
        basis.extend(generator("J", index) for index in (1, 2, 3))
        labels = build_algebra(self.algebra).labels
        return AlgebraPresentation(f"combinatory {self.algebra}", labels, tuple(basis))


def _combine(combination, index: int) -> VectorField:
    total = VectorField.zero()
    for symbol, coefficient in combination:
        total = total + generator(symbol, index) * RationalFn.coerce(coefficient)
    return total


def _combination(name: str, time: dict, translation: dict, boost: dict) -> CombinatoryBasis:
    return CombinatoryBasis(name, tuple(time.items()), tuple(translation.items()), tuple(boost.items()))


COMBINATORY_BASES = (
    _combination("p", _SUM_TIME, _SUM_TRANSLATION, {"K": 1}),
    _combination("e", _SUM_TIME, _SUM_TRANSLATION, {"N": 1}),
    _combination("n_+", {"H+": 1}, _SUM_TRANSLATION, _GALILEI_BOOST),
    _combination("n_-", {"H-": 1}, _SUM_TRANSLATION, _GALILEI_BOOST),
    _combination("h_+", _SUM_TIME, {"P+": 1}, _CARROLL_BOOST),
    _combination("h_-", _SUM_TIME, {"P-": 1}, _CARROLL_BOOST),
    _combination("g", _SUM_TIME, _SUM_TRANSLATION, _GALILEI_BOOST),
    _combination("c", _SUM_TIME, _SUM_TRANSLATION, _CARROLL_BOOST),
    _combination("g'", _DIFFERENCE_TIME, _SUM_TRANSLATION, _GALILEI_BOOST),
)


def verify_combinatory(basis: CombinatoryBasis, recipes=None, lookup=build_algebra) -> list[str]:
    """Slot-by-slot differences between the combinatory basis and the catalog
    basis, and between it and every contraction limit landing on the same algebra."""
    from ..contraction import contract_algebra

    if recipes is None:
        from .recipes import ALGEBRA_RECIPES as recipes
    combined = basis.presentation()
    problems = []
    candidates = [("catalog", lookup(basis.algebra))]
    for recipe in recipes:
        if recipe.kind == "algebra" and recipe.target == basis.algebra and recipe.expected == "contracts":
            candidates.append((recipe.label, contract_algebra(recipe, lookup, check_target=False)))
    for origin, presentation in candidates:
        for label, mine, theirs in zip(combined.labels, combined.basis, presentation.basis):
            if mine != theirs:
                problems.append(f"{basis.algebra} slot {label}: combination {mine} != {origin} {theirs}")
    if len(candidates) < 2:
        problems.append(f"{basis.algebra}: no contraction recipe reaches it")
    return problems
