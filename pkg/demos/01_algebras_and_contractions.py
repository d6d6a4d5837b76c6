"""
Kinematical algebras as vector fields
=====================================

Every algebra in the catalog is ten explicit vector fields on the chart
(x0 = c t, x1, x2, x3).  Closing the brackets gives exact structure
constants, and sending c or l to a limit walks between the algebras.
"""

from kingeom.catalog import KINEMATICAL_NAMES, build_algebra, recipe_by_label
from kingeom.contraction import contract_algebra
from kingeom.liefields import PARITY, TIME_REVERSAL, closure, is_automorphism, jacobi_check

# The de Sitter algebra: time translation, three translations, three boosts
# and three rotations, each a field with rational coefficients.
de_sitter = build_algebra("d_+")
for label, field in zip(de_sitter.labels, de_sitter.basis):
    print(f"{label:>3} = {field}")

# Brackets are expanded back in the basis; the coefficients do not depend
# on the coordinates, so they are genuine structure constants.
constants = closure(de_sitter)
labels = constants.labels
bracket = {labels[k]: value for k, value in enumerate(constants[0][1]) if value != 0}
print(f"[{labels[0]}, {labels[1]}] =", " + ".join(f"({value}) {label}" for label, value in bracket.items()))
print("Jacobi identity:", jacobi_check(constants))

# Parity and time reversal are automorphisms of every kinematical algebra.
for name in KINEMATICAL_NAMES:
    algebra = build_algebra(name)
    table = closure(algebra)
    print(f"{name:>3}: parity {is_automorphism(algebra, PARITY, table)}, time reversal {is_automorphism(algebra, TIME_REVERSAL, table)}")

# Letting the radius grow flattens de Sitter into Poincare.
recipe = recipe_by_label("d_+ --l_to_inf--> p")
print(recipe.label, "->", contract_algebra(recipe) == build_algebra("p"))
