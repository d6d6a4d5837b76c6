"""Contractions driven by a formal parameter eps tending to zero.

A substitution rule lets the running radius and speed of light scale as
``l_r = l * eps**a`` and ``c_r = c * eps**b``.  The time coordinate
``x0 = c t`` is measured with the running speed of light, so ``x0`` scales as
``eps**b`` as well, and tensor components pick up one factor ``eps**b`` per
lower time index and ``eps**-b`` per upper time index.  A prefactor written
``(sign, c_order, l_order)`` stands for ``sign * (c_r/c)**c_order * (l_r/l)**l_order``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import product
from typing import Callable, Mapping, Sequence

from .exactnum import DEFAULT_SEED, PoleAtPoint, RationalFn, Verdict, laurent_limit
from .geometry import (
    Connection,
    DomainCondition,
    Geometry,
    TensorField,
    compat_check,
    sample_domain_points,
)
from .liefields import (
    COMPOSITE,
    IDENTITY,
    PARITY,
    TIME_REVERSAL,
    AlgebraPresentation,
    VectorField,
    apply_involution,
    closure,
)

__all__ = [
    "SubstitutionRule",
    "RULES",
    "Scale",
    "UNIT",
    "ContractionRecipe",
    "DomainSurvival",
    "EdgeResult",
    "ContractionReport",
    "DivergentGenerator",
    "DivergentTensor",
    "TargetMismatch",
    "UnexpectedContractibility",
    "NotContractible",
    "INVOLUTIONS",
    "contract_generator",
    "contract_algebra",
    "contract_geometry",
    "domain_survival",
    "verify_contraction_graph",
]

DIM = 4


class DivergentGenerator(ArithmeticError):
    """A scaled generator has no finite limit."""


class DivergentTensor(ArithmeticError):
    """A tensor component diverges although the domain survives."""


class TargetMismatch(AssertionError):
    """The limit exists but differs from the catalog target."""


class UnexpectedContractibility(AssertionError):
    """Domain survival disagrees with the recipe's expectation."""


@dataclass(frozen=True)
class NotContractible:
    """Outcome of a geometry recipe whose domain does not survive the limit."""

    source: str
    rule: str
    violated: tuple["DomainSurvival", ...]


@dataclass(frozen=True)
class SubstitutionRule:
    """``l_r = l * eps**l_power`` and ``c_r = c * eps**c_power``."""

    kind: str
    l_power: int
    c_power: int

    def apply(self, value) -> RationalFn:
        value = RationalFn.coerce(value)
        if self.l_power:
            value = value.subs_scale("l", self.l_power)
        if self.c_power:
            value = value.subs_scale("c", self.c_power).subs_scale("x0", self.c_power)
        return value

    def time_weight(self, lower_time: int, upper_time: int) -> int:
        """eps-order picked up by a component with these numbers of time indices."""
        return self.c_power * (lower_time - upper_time)


RULES: dict[str, SubstitutionRule] = {
    rule.kind: rule
    for rule in (
        SubstitutionRule("l_to_inf", -1, 0),
        SubstitutionRule("l_to_zero", 1, 0),
        SubstitutionRule("c_to_inf", 0, -1),
        SubstitutionRule("c_to_zero", 0, 1),
        SubstitutionRule("nu_fixed_inf", -1, -1),
        SubstitutionRule("nu_fixed_zero", 1, 1),
        SubstitutionRule("cc_over_l_fixed_inf", -2, -1),
        SubstitutionRule("cc_over_l_fixed_zero", 2, 1),
        SubstitutionRule("c_over_ll_fixed_inf", -1, -2),
        SubstitutionRule("c_over_ll_fixed_zero", 1, 2),
        SubstitutionRule("nu_zero_l_inf", -1, 1),
        SubstitutionRule("nu_inf_l_zero", 1, -1),
    )
}


@dataclass(frozen=True)
class Scale:
    """``sign * (c_r/c)**c_order * (l_r/l)**l_order``."""

    sign: int = 1
    c_order: int = 0
    l_order: int = 0

    def eps_order(self, rule: SubstitutionRule) -> int:
        return rule.c_power * self.c_order + rule.l_power * self.l_order

    def flipped(self) -> "Scale":
        return Scale(-self.sign, self.c_order, self.l_order)

    def __str__(self) -> str:
        parts = ["-" if self.sign < 0 else "+"]
        if self.c_order:
            parts.append(f"(c_r/c)^{self.c_order}")
        if self.l_order:
            parts.append(f"(l_r/l)^{self.l_order}")
        return "".join(parts) if len(parts) > 1 else parts[0] + "1"


UNIT = Scale()

INVOLUTIONS = {"pi": PARITY, "theta": TIME_REVERSAL, "thetapi": COMPOSITE, None: IDENTITY}


@dataclass(frozen=True)
class ContractionRecipe:
    """One edge of the contraction graph.

    Algebra recipes use ``time``, ``translation`` and ``boost`` scales;
    geometry recipes use ``g_scale``, ``h_scale`` and ``conn_scale``.
    ``expected`` is ``"contracts"`` or ``"blocked"``.
    """

    kind: str
    source: str
    rule: str
    target: str | None = None
    time: Scale = UNIT
    translation: Scale = UNIT
    boost: Scale = UNIT
    g_scale: Scale = UNIT
    h_scale: Scale = UNIT
    conn_scale: Scale = UNIT
    pre_involution: str | None = None
    expected: str = "contracts"
    implied: bool = False
    note: str = ""

    def __post_init__(self):
        if self.kind not in ("algebra", "geometry"):
            raise ValueError(f"recipe kind must be algebra or geometry, not {self.kind}")
        if self.rule not in RULES:
            raise ValueError(f"unknown substitution rule {self.rule}")
        if self.expected not in ("contracts", "blocked"):
            raise ValueError(f"expected must be contracts or blocked, not {self.expected}")
        if self.expected == "contracts" and self.target is None:
            raise ValueError("a contracting recipe needs a target")
        if self.pre_involution not in INVOLUTIONS:
            raise ValueError(f"unknown involution {self.pre_involution}")

    @property
    def substitution(self) -> SubstitutionRule:
        return RULES[self.rule]

    @property
    def label(self) -> str:
        pre = f"{self.pre_involution}*" if self.pre_involution else ""
        arrow = self.target if self.expected == "contracts" else "blocked"
        return f"{pre}{self.source} --{self.rule}--> {arrow}"


@dataclass(frozen=True)
class DomainSurvival:
    """Fate of one source inequality under the limit."""

    condition: DomainCondition
    leading: RationalFn
    verdict: str

    @property
    def survives(self) -> bool:
        return self.verdict == "Survives"


# ---------------------------------------------------------------------------
# generators and algebras


def _limit(value: RationalFn, order: int, error, where: str) -> RationalFn:
    limit = laurent_limit(value, order)
    if limit.verdict == Verdict.DIVERGENT:
        raise error(f"{where} diverges at eps-order {limit.order}")
    return limit.value()


def contract_generator(field_value: VectorField, rule: SubstitutionRule, scale: Scale = UNIT) -> VectorField:
    """Limit of ``scale * field`` with the running parameters substituted."""
    order = scale.eps_order(rule)
    components = []
    for mu in range(DIM):
        running = rule.apply(field_value[mu])
        weight = rule.time_weight(0, 1) if mu == 0 else 0
        components.append(_limit(running, order + weight, DivergentGenerator, f"component {mu}") * scale.sign)
    return VectorField(components)


def _slot_scales(recipe: ContractionRecipe) -> list[Scale]:
    return [recipe.time] + [recipe.translation] * 3 + [recipe.boost] * 3 + [UNIT] * 3


def contract_algebra(
    recipe: ContractionRecipe,
    algebra_lookup: Callable[[str], AlgebraPresentation] | None = None,
    check_target: bool = True,
) -> AlgebraPresentation:
    """Contract every basis slot of the source algebra and compare with the target."""
    if algebra_lookup is None:
        from .catalog.algebras import build_algebra as algebra_lookup
    rule = recipe.substitution
    source = apply_involution(algebra_lookup(recipe.source), INVOLUTIONS[recipe.pre_involution])
    basis = []
    for label, element, scale in zip(source.labels, source.basis, _slot_scales(recipe)):
        try:
            basis.append(contract_generator(element, rule, scale))
        except DivergentGenerator as error:
            raise DivergentGenerator(f"{recipe.label}: slot {label}: {error}") from None
    target = algebra_lookup(recipe.target)
    result = AlgebraPresentation(f"{recipe.source}->{recipe.target}", target.labels, tuple(basis), {"recipe": recipe.label})
    if check_target:
        for slot, (mine, theirs) in enumerate(zip(result.basis, target.basis)):
            if mine != theirs:
                raise TargetMismatch(f"{recipe.label}: slot {target.labels[slot]} gives {mine}, expected {theirs}")
        closure(result)
    return result


# ---------------------------------------------------------------------------
# geometries


def _leading_coefficient(value: RationalFn) -> RationalFn:
    limit = laurent_limit(value, 0)
    if value.is_zero():
        return value
    return limit.leading


def _generic_points(count: int, seed: int) -> list[dict]:
    return sample_domain_points((), count, seed)


def _sign_at(value: RationalFn, point: Mapping) -> int | None:
    try:
        number = value.evaluate(point)
    except PoleAtPoint:
        return None
    return (number > 0) - (number < 0)


def domain_survival(
    condition: DomainCondition,
    rule: SubstitutionRule,
    target_points: Sequence[Mapping] = (),
    generic_count: int = 64,
    seed: int = DEFAULT_SEED,
) -> DomainSurvival:
    """Sign of the leading eps-coefficient of the substituted domain polynomial.

    The inequality survives when the leading coefficient has the required sign
    at every target sample point (at least three are supplied for
    contracting recipes), or, with no target, at some generic sample point.
    """
    leading = _leading_coefficient(rule.apply(condition.poly))
    if target_points:
        signs = [_sign_at(leading, point) for point in target_points]
        verdict = "Survives" if all(sign == condition.sign for sign in signs) else "Violated"
    else:
        signs = [_sign_at(leading, point) for point in _generic_points(generic_count, seed)]
        verdict = "Survives" if any(sign == condition.sign for sign in signs) else "Violated"
    return DomainSurvival(condition, leading, verdict)


def _contract_tensor(tensor: TensorField, rule: SubstitutionRule, scale: Scale, where: str) -> TensorField:
    upper, lower = tensor.valence
    order = scale.eps_order(rule)
    values = []
    for indices in product(range(DIM), repeat=upper + lower):
        value = tensor[indices]
        if value.is_zero():
            values.append(value)
            continue
        upper_time = sum(1 for index in indices[:upper] if index == 0)
        lower_time = sum(1 for index in indices[upper:] if index == 0)
        weight = rule.time_weight(lower_time, upper_time)
        limit = _limit(rule.apply(value), order + weight, DivergentTensor, f"{where}{list(indices)}")
        values.append(limit * scale.sign)
    return TensorField(tensor.valence, values)


def _domain_agrees(result: Sequence[DomainCondition], target: Geometry, count: int, seed: int) -> bool:
    rng = random.Random(seed)
    checked = 0
    for point in _generic_points(count * 4, rng.randrange(1 << 30)):
        try:
            mine = all(_sign_at(c.poly, point) == c.sign for c in result)
            theirs = all(_sign_at(c.poly, point) == c.sign for c in target.domain)
        except PoleAtPoint:
            continue
        if any(_sign_at(c.poly, point) in (0, None) for c in tuple(result) + tuple(target.domain)):
            continue
        if mine != theirs:
            return False
        checked += 1
        if checked >= count:
            break
    return True


def contract_geometry(
    recipe: ContractionRecipe,
    geometry_lookup: Callable[[str], Geometry] | None = None,
    sample_count: int = 5,
    seed: int = DEFAULT_SEED,
) -> Geometry | NotContractible:
    """Contract (g, h, Gamma) and the domain of the source; compare with the target."""
    if geometry_lookup is None:
        from .catalog.geometries import build_geometry as geometry_lookup
    rule = recipe.substitution
    source = geometry_lookup(recipe.source)
    target = geometry_lookup(recipe.target) if recipe.target else None
    points = sample_domain_points(target.domain, sample_count, seed) if target is not None else ()
    survival = tuple(domain_survival(condition, rule, points, seed=seed) for condition in source.domain)
    violated = tuple(entry for entry in survival if not entry.survives)
    if violated:
        if recipe.expected == "contracts":
            raise UnexpectedContractibility(
                f"{recipe.label}: inequality {violated[0].condition} is violated in the limit"
            )
        return NotContractible(recipe.source, recipe.rule, violated)
    if recipe.expected == "blocked":
        raise UnexpectedContractibility(f"{recipe.label}: every domain inequality survives the limit")

    g = _contract_tensor(source.g, rule, recipe.g_scale, "g")
    h = _contract_tensor(source.h, rule, recipe.h_scale, "h")
    gamma = _contract_tensor(source.conn.as_tensor(), rule, recipe.conn_scale, "Gamma")
    domain = tuple(DomainCondition(entry.leading, entry.condition.sign) for entry in survival)
    result = target.with_changes(g=g, h=h, conn=Connection.from_tensor(gamma), domain=domain)
    for label, mine, theirs in (("g", g, target.g), ("h", h, target.h), ("Gamma", gamma, target.conn.as_tensor())):
        difference = mine - theirs
        if not difference.is_zero():
            index = difference.nonzero_indices()[0]
            raise TargetMismatch(
                f"{recipe.label}: {label}{list(index)} gives {mine[index]}, expected {theirs[index]}"
            )
    if not _domain_agrees(domain, target, 24, seed):
        raise TargetMismatch(f"{recipe.label}: contracted domain differs from the domain of {target.name}")
    return result


# ---------------------------------------------------------------------------
# the whole graph


@dataclass(frozen=True)
class EdgeResult:
    recipe: ContractionRecipe
    passed: bool
    outcome: str
    diagnostic: str = ""
    seconds: float = 0.0


@dataclass(frozen=True)
class ContractionReport:
    edges: tuple[EdgeResult, ...]
    warnings: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return all(edge.passed for edge in self.edges)

    def failures(self) -> list[EdgeResult]:
        return [edge for edge in self.edges if not edge.passed]


def _run_edge(recipe: ContractionRecipe, algebra_lookup, geometry_lookup, seed: int) -> EdgeResult:
    started = time.perf_counter()
    try:
        if recipe.kind == "algebra":
            contract_algebra(recipe, algebra_lookup)
            outcome = f"contracts to {recipe.target}"
        else:
            result = contract_geometry(recipe, geometry_lookup, seed=seed)
            if isinstance(result, NotContractible):
                outcome = "not contractible: " + ", ".join(str(entry.condition) for entry in result.violated)
            else:
                if not compat_check(result):
                    raise TargetMismatch(f"{recipe.label}: contracted connection is not compatible")
                outcome = f"contracts to {recipe.target}"
    except (DivergentGenerator, DivergentTensor, TargetMismatch, UnexpectedContractibility) as error:
        return EdgeResult(recipe, False, type(error).__name__, str(error), time.perf_counter() - started)
    return EdgeResult(recipe, True, outcome, "", time.perf_counter() - started)


def verify_contraction_graph(
    recipes: Sequence[ContractionRecipe] | None = None,
    algebra_lookup=None,
    geometry_lookup=None,
    seed: int = DEFAULT_SEED,
) -> ContractionReport:
    """Run every recipe in order; the report is Pass iff each edge meets its expectation."""
    if recipes is None:
        from .catalog.recipes import RECIPES as recipes
    warnings = () if recipes else ("no contraction recipes were supplied",)
    edges = tuple(_run_edge(recipe, algebra_lookup, geometry_lookup, seed) for recipe in recipes)
    return ContractionReport(edges, warnings)
