"""
Beltrami-coordinate geometries
==============================

A geometry is a covariant metric g, a contravariant metric h and a
torsion-free connection.  For the relativistic charts h is the inverse of g
and the connection is the Levi-Civita one; for the degenerate charts all
three are independent data that must still fit together.
"""

from kingeom.catalog import build_algebra, build_geometry
from kingeom.geometry import (
    KillingContext,
    christoffel_from_metric,
    compat_check,
    constant_curvature_tensor,
    ricci,
    riemann,
    signature_rank,
    weyl_projective,
)

# de Sitter in Beltrami coordinates: the metric and its Christoffel symbols.
de_sitter = build_geometry("dS")
print("g_00 =", de_sitter.g[0, 0])
print("Gamma^0_01 =", christoffel_from_metric(de_sitter.g)[0][0][1])

# The curvature has the constant-curvature form with k = 1/l^2, so the
# Ricci tensor is 3 k g and the projective Weyl tensor vanishes.
curvature = riemann(de_sitter.conn)
k = de_sitter.curvature_scalar()
print("R = k (d g - d g):", (curvature - constant_curvature_tensor(de_sitter.g, k)).is_zero())
print("Ric = 3 k g:", (ricci(curvature) - de_sitter.g * (k * 3)).is_zero())
print("projective Weyl = 0:", weyl_projective(curvature, ricci(curvature)).is_zero())

# A degenerate chart: both metrics have rank 2 and the connection is stored
# separately.  Compatibility means the connection preserves g and h.
degenerate = build_geometry("NH_2")
ranks, signature = signature_rank(degenerate)
print("NH_2 ranks", ranks, "signature", signature, "compatible", compat_check(degenerate))

# Every generator of the housing algebra is a Killing field of all three tensors.
context = KillingContext(degenerate)
algebra = build_algebra(degenerate.algebra)
failing = [label for label, field in zip(algebra.labels, algebra.basis) if context.failures(field)]
print(f"Killing fields of NH_2 from {degenerate.algebra}:", "all ten" if not failing else failing)
