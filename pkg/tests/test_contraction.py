import pytest
import sympy

from conftest import L, to_sympy
from kingeom.catalog import build_algebra, build_geometry, generator, recipe_by_label
from kingeom.catalog.recipes import ALGEBRA_RECIPES, GEOMETRY_RECIPES, RECIPES
from kingeom.contraction import (
    RULES,
    UNIT,
    ContractionRecipe,
    DivergentGenerator,
    NotContractible,
    Scale,
    TargetMismatch,
    UnexpectedContractibility,
    contract_algebra,
    contract_generator,
    contract_geometry,
    domain_survival,
    verify_contraction_graph,
)
from kingeom.exactnum import var
from kingeom.geometry import DomainCondition, Geometry, TensorField

x0, x1, c, l = (var(name) for name in ("x0", "x1", "c", "l"))


def _recipe(kind, source, rule):
    return next(recipe for recipe in RECIPES if recipe.kind == kind and recipe.source == source and recipe.rule == rule)


# -- rules and scales -----------------------------------------------------------------


def test_rule_table():
    """[TRIVIAL] eps powers of the twelve substitution rules."""
    powers = {name: (rule.l_power, rule.c_power) for name, rule in RULES.items()}
    assert powers == {
        "l_to_inf": (-1, 0), "l_to_zero": (1, 0), "c_to_inf": (0, -1), "c_to_zero": (0, 1),
        "nu_fixed_inf": (-1, -1), "nu_fixed_zero": (1, 1),
        "cc_over_l_fixed_inf": (-2, -1), "cc_over_l_fixed_zero": (2, 1),
        "c_over_ll_fixed_inf": (-1, -2), "c_over_ll_fixed_zero": (1, 2),
        "nu_zero_l_inf": (-1, 1), "nu_inf_l_zero": (1, -1),
    }  # fmt: skip


def test_scale_order_and_text():
    scale = Scale(-1, 2, -1)
    assert scale.eps_order(RULES["nu_fixed_zero"]) == 1
    assert str(scale) == "-(c_r/c)^2(l_r/l)^-1"
    assert str(UNIT) == "+1"
    assert scale.flipped() == Scale(1, 2, -1)


def test_recipe_validation():
    with pytest.raises(ValueError):
        ContractionRecipe("algebra", "p", "no_such_rule", "g")
    with pytest.raises(ValueError):
        ContractionRecipe("geometry", "dS", "l_to_inf", None)
    with pytest.raises(ValueError):
        ContractionRecipe("tensor", "dS", "l_to_inf", "Min")


# -- generators ------------------------------------------------------------------------


def test_time_translation_flattens_as_radius_grows():
    assert contract_generator(generator("H+"), RULES["l_to_inf"]) == generator("H")
    assert contract_generator(generator("P-", 2), RULES["l_to_inf"]) == generator("P", 2)


def test_boost_needs_its_prefactor_at_vanishing_light_speed():
    with pytest.raises(DivergentGenerator):
        contract_generator(generator("K", 1), RULES["c_to_zero"])
    assert contract_generator(generator("K", 1), RULES["c_to_zero"], Scale(1, 2, 0)) == generator("Kc", 1)


def test_vanishing_radius_with_prefactor_gives_drift():
    """(l_r/l)^2 P+ tends to the drift generator P' as l_r -> 0."""
    assert contract_generator(generator("P+", 3), RULES["l_to_zero"], Scale(1, 0, 2)) == generator("P'", 3)


# -- algebras -------------------------------------------------------------------------


def test_de_sitter_algebra_contracts_to_poincare():
    result = contract_algebra(_recipe("algebra", "d_+", "l_to_inf"))
    assert result == build_algebra("p")


def test_contraction_with_involution():
    recipe = recipe_by_label("theta*r --c_to_zero--> h_+")
    assert recipe.pre_involution == "theta"
    assert contract_algebra(recipe) == build_algebra("h_+")


def test_wrong_target_is_reported():
    recipe = ContractionRecipe("algebra", "d_+", "l_to_inf", "e")
    with pytest.raises(TargetMismatch):
        contract_algebra(recipe)


def test_missing_prefactor_diverges():
    recipe = ContractionRecipe("algebra", "d_+", "l_to_zero", "p_2")
    with pytest.raises(DivergentGenerator):
        contract_algebra(recipe)


# -- geometries -----------------------------------------------------------------------


def test_de_sitter_contracts_to_minkowski():
    result = contract_geometry(_recipe("geometry", "dS", "l_to_inf"))
    assert isinstance(result, Geometry)
    assert (result.g - build_geometry("Min").g).is_zero()


def test_vanishing_radius_prefactors():
    """[PAPER] the dS -> P_2+ edge carries l^2/l_r^2 on g and l_r^4/l^4 on h."""
    recipe = _recipe("geometry", "dS", "l_to_zero")
    assert recipe.g_scale == Scale(1, 0, -2)
    assert recipe.h_scale == Scale(1, 0, 4)
    result = contract_geometry(recipe)
    assert (result.h - build_geometry("P_2+").h).is_zero()


def test_zero_light_speed_limit_of_time_reversed_de_sitter_contracts():
    """[DERIVED] this edge contracts; the chart whose domain is lost is BdSL."""
    result = contract_geometry(_recipe("geometry", "DTdS", "c_to_zero"))
    assert isinstance(result, Geometry)
    assert (result.g - build_geometry("DTHN").g).is_zero()


@pytest.mark.parametrize("source, rule", [("BdSL", "c_to_zero"), ("LBdS", "l_to_inf"), ("DTdS", "nu_fixed_inf")])
def test_blocked_limits_report_not_contractible(source, rule):
    result = contract_geometry(_recipe("geometry", source, rule))
    assert isinstance(result, NotContractible)
    assert result.violated and all(not entry.survives for entry in result.violated)


def test_domain_survival_verdicts():
    """[DERIVED] leading eps-coefficient signs of the source inequality."""
    outside = DomainCondition(l * l - x0 * x0 - x1 * x1, -1)
    verdict = domain_survival(outside, RULES["l_to_inf"])
    assert verdict.verdict == "Violated"
    assert sympy.cancel(to_sympy(verdict.leading) - L**2) == 0
    inside = DomainCondition(l * l - x0 * x0 + x1 * x1, 1)
    assert domain_survival(inside, RULES["l_to_inf"]).survives


def test_unexpected_contractibility():
    recipe = ContractionRecipe("geometry", "dS", "l_to_inf", None, expected="blocked")
    with pytest.raises(UnexpectedContractibility):
        contract_geometry(recipe)
    recipe = ContractionRecipe("geometry", "LBdS", "l_to_inf", "Min")
    with pytest.raises(UnexpectedContractibility):
        contract_geometry(recipe)


# -- whole graph ---------------------------------------------------------------------------


def test_graph_sizes():
    assert len(ALGEBRA_RECIPES) == 67
    assert len(GEOMETRY_RECIPES) == 90
    assert len({recipe.label for recipe in RECIPES}) == len(RECIPES)


def test_empty_recipe_list_warns():
    report = verify_contraction_graph([])
    assert report.passed
    assert report.warnings == ("no contraction recipes were supplied",)


def test_corrupted_target_fails_exactly_its_incoming_edge():
    """Fault injection: perturb one component of NH_2; only the edge landing on it fails."""

    def corrupted(name):
        geometry = build_geometry(name)
        if name != "NH_2":
            return geometry
        rows = geometry.g.matrix()
        rows[1][1] = rows[1][1] + x1 / l
        return geometry.with_changes(g=TensorField.from_matrix((0, 2), rows))

    report = verify_contraction_graph(GEOMETRY_RECIPES, geometry_lookup=corrupted)
    failures = report.failures()
    assert [edge.recipe.label for edge in failures] == ["dS --nu_fixed_zero--> NH_2"]
    assert failures[0].outcome == "TargetMismatch"
    assert "NH_2" in failures[0].diagnostic
