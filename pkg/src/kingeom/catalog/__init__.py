"""Built-in algebras, geometries, contraction recipes and relation tables."""

from .algebras import ALGEBRA_NAMES, KINEMATICAL_NAMES, STATIC_NAMES, StaticExcluded, UnknownAlgebra, build_algebra
from .generators import FAMILY_SYMBOLS, generator
from .geometries import GEOMETRY_DISPLAY, GEOMETRY_NAMES, UnknownGeometry, build_geometry
from .recipes import RECIPES, recipe_by_label
from .tables import (
    ADDITIVITY_TRIPLES,
    CONTRAST_ROWS,
    DUALITY_PAIRS,
    GENUINE_KINEMATICS,
    SELF_DUAL,
    duality_map,
    verify_duality_table,
)

__all__ = [
    "ALGEBRA_NAMES",
    "KINEMATICAL_NAMES",
    "STATIC_NAMES",
    "StaticExcluded",
    "UnknownAlgebra",
    "build_algebra",
    "FAMILY_SYMBOLS",
    "generator",
    "GEOMETRY_DISPLAY",
    "GEOMETRY_NAMES",
    "UnknownGeometry",
    "build_geometry",
    "RECIPES",
    "recipe_by_label",
    "ADDITIVITY_TRIPLES",
    "CONTRAST_ROWS",
    "DUALITY_PAIRS",
    "GENUINE_KINEMATICS",
    "SELF_DUAL",
    "duality_map",
    "verify_duality_table",
]
