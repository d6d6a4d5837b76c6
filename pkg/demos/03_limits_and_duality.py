"""
Limits, blocked limits and the time-inversion duality
=====================================================

A geometric limit rescales g, h and the connection and keeps the leading
term.  It only makes sense when the chart's domain survives; otherwise the
limit is reported as blocked along with the inequality that fails.
"""

from kingeom.catalog import build_geometry, recipe_by_label
from kingeom.catalog.tables import ADDITIVITY_TRIPLES, DUALITY_PAIRS, additivity_residual, verify_duality_pair
from kingeom.contraction import NotContractible, contract_geometry

# de Sitter flattens to Minkowski as the radius grows.
flat = contract_geometry(recipe_by_label("dS --l_to_inf--> Min"))
print("dS -> Min:", (flat.g - build_geometry("Min").g).is_zero())

# The vanishing-radius limit needs prefactors on g and h to stay finite.
recipe = recipe_by_label("dS --l_to_zero--> P_2+")
print(recipe.label, "with g scaled by", recipe.g_scale, "and h scaled by", recipe.h_scale)
print("  h matches P_2+:", (contract_geometry(recipe).h - build_geometry("P_2+").h).is_zero())

# A chart defined outside the radius loses its whole domain when l grows.
blocked = contract_geometry(recipe_by_label("LBdS --l_to_inf--> blocked"))
assert isinstance(blocked, NotContractible)
for entry in blocked.violated:
    print("blocked:", entry.condition, "->", entry.verdict, "with leading term", entry.leading)

# Inverting time, t -> 1/(nu^2 t) and x -> x/(nu t), exchanges paired
# geometries; the four self-dual ones are fixed points.
for pair in DUALITY_PAIRS[:4]:
    verify_duality_pair(pair)
    print(f"dual pair {pair.left} <-> {pair.right} (signs g {pair.g_sign:+d}, h {pair.h_sign:+d})")

# The contravariant metrics add up, once each summand carries its orientation.
for triple in ADDITIVITY_TRIPLES:
    literal = additivity_residual(triple, orientation=1).is_zero()
    oriented = additivity_residual(triple).is_zero()
    print(f"h_{triple.first} + h_{triple.second} = h_{triple.total}: literal {literal}, with orientation {triple.orientation:+d} {oriented}")
