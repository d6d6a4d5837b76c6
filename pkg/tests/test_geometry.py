from fractions import Fraction

import pytest
import sympy

from conftest import COORDINATES, L, sympy_matrix, to_sympy
from kingeom.catalog import build_algebra, build_geometry, duality_map
from kingeom.exactnum import RationalFn, var
from kingeom.geometry import (
    Connection,
    CoordinateMap,
    DomainCondition,
    KillingContext,
    NonInvertibleMap,
    SignatureDescriptor,
    TensorField,
    christoffel_from_metric,
    compat_check,
    constant_curvature_tensor,
    fractional_linear_map,
    in_domain,
    inertia,
    invariance_failures,
    lie_derivative,
    matrix_rank,
    metric_inverse,
    pullback,
    ricci,
    riemann,
    sample_domain_points,
    signature_rank,
    weyl_projective,
)
from kingeom.liefields import VectorField

x0, x1, x2, x3, c, l = (var(name) for name in ("x0", "x1", "x2", "x3", "c", "l"))


# -- sympy oracles ------------------------------------------------------------


def _oracle_first_kind(metric: sympy.Matrix, sigma: int, mu: int, nu: int):
    """Christoffel symbol of the first kind, which needs no matrix inverse."""
    return (
        sympy.diff(metric[sigma, mu], COORDINATES[nu])
        + sympy.diff(metric[sigma, nu], COORDINATES[mu])
        - sympy.diff(metric[mu, nu], COORDINATES[sigma])
    ) / 2


def _oracle_riemann(gamma, sigma, mu, rho, nu):
    value = sympy.diff(gamma[sigma][mu][nu], COORDINATES[rho]) - sympy.diff(gamma[sigma][mu][rho], COORDINATES[nu])
    value += sum(gamma[sigma][tau][rho] * gamma[tau][mu][nu] - gamma[sigma][tau][nu] * gamma[tau][mu][rho] for tau in range(4))
    return sympy.cancel(value)


def _sympy_connection(conn: Connection):
    return [[[to_sympy(conn[a][b][d]) for d in range(4)] for b in range(4)] for a in range(4)]


# -- Christoffel symbols, curvature ---------------------------------------------


@pytest.mark.parametrize("name", ["dS", "Riem"])
def test_christoffel_matches_sympy(name):
    """[DERIVED] lowering the computed connection with g gives sympy's first-kind symbols."""
    geometry = build_geometry(name)
    computed = christoffel_from_metric(geometry.g)
    metric = sympy_matrix(geometry.g)
    gamma = _sympy_connection(computed)
    for sigma in range(4):
        for mu in range(4):
            for nu in range(mu, 4):
                lowered = sum(metric[sigma, lam] * gamma[lam][mu][nu] for lam in range(4))
                assert sympy.cancel(lowered - _oracle_first_kind(metric, sigma, mu, nu)) == 0
    assert computed == geometry.conn


def test_metric_inverse_matches_sympy():
    geometry = build_geometry("AdS")
    inverse = metric_inverse(geometry.g)
    oracle = sympy_matrix(geometry.g).inv()
    for a in range(4):
        for b in range(4):
            assert sympy.cancel(to_sympy(inverse[a, b]) - oracle[a, b]) == 0


@pytest.mark.parametrize("name", ["NH_2", "E_2"])
def test_riemann_matches_sympy(name):
    """[DERIVED] curvature of a degenerate geometry's connection matches the sympy formula."""
    geometry = build_geometry(name)
    computed = riemann(geometry.conn)
    gamma = _sympy_connection(geometry.conn)
    for index in [(0, 1, 0, 1), (1, 2, 1, 2), (3, 0, 3, 0), (2, 1, 3, 1), (0, 0, 1, 0)]:
        assert sympy.cancel(to_sympy(computed[index]) - _oracle_riemann(gamma, *index)) == 0


def test_constant_curvature_and_ricci_for_de_sitter():
    """[TRIVIAL] R = k (d g - d g) with k = 1/l^2 and Ric = 3 k g for a positively curved chart."""
    geometry = build_geometry("dS")
    curvature = riemann(geometry.conn)
    k = RationalFn.coerce(1) / l**2
    assert (curvature - constant_curvature_tensor(geometry.g, k)).is_zero()
    assert (ricci(curvature) - geometry.g * (k * 3)).is_zero()
    assert weyl_projective(curvature, ricci(curvature)).is_zero()


def test_wrong_curvature_constant_detected():
    geometry = build_geometry("dS")
    wrong = constant_curvature_tensor(geometry.g, -RationalFn.coerce(1) / l**2)
    assert not (riemann(geometry.conn) - wrong).is_zero()


def test_flat_connection_has_zero_curvature():
    assert riemann(Connection.zero()).is_zero()


# -- compatibility ------------------------------------------------------------------


def test_compat_check_accepts_catalog_and_rejects_corruption():
    geometry = build_geometry("NH_2")
    assert compat_check(geometry)
    changed = geometry.conn.with_entry(1, 1, 1, x1 / l**2)
    assert not compat_check(geometry.with_changes(conn=changed))


def test_compat_check_rejects_scaled_h_component():
    geometry = build_geometry("G_2")
    rows = geometry.h.matrix()
    rows[1][1] = rows[1][1] * (1 + x1)
    broken = geometry.with_changes(h=TensorField.from_matrix((2, 0), rows))
    assert not compat_check(broken)


def test_connection_symmetry_is_kept():
    conn = Connection.zero().with_entry(0, 1, 2, x3)
    assert conn.is_torsion_free()
    assert conn[0][2][1] == x3


# -- Killing vectors ----------------------------------------------------------------


def test_killing_generators_of_galilei_geometry():
    geometry = build_geometry("G")
    context = KillingContext(geometry)
    for label, field in zip(build_algebra("g").labels, build_algebra("g").basis):
        assert context.failures(field) == [], label


def test_non_killing_field_reported():
    geometry = build_geometry("Min")
    dilation = VectorField([x0, x1, x2, x3])
    # a dilation rescales both metrics but is affine, so the flat connection survives
    assert set(KillingContext(geometry).failures(dilation)) == {"g", "h"}
    assert not lie_derivative(dilation, geometry.g).is_zero()


def test_lie_derivative_of_flat_metric_along_translation_vanishes():
    geometry = build_geometry("Euc")
    assert lie_derivative(VectorField.coordinate(2), geometry.g).is_zero()
    assert lie_derivative(VectorField.coordinate(2), geometry.conn).gamma == Connection.zero().gamma


# -- domains and signatures ---------------------------------------------------------


def test_sampling_is_deterministic_and_inside_domain():
    geometry = build_geometry("BdSL")
    first = sample_domain_points(geometry.domain, 5, seed=0x4B494E)
    second = sample_domain_points(geometry.domain, 5, seed=0x4B494E)
    assert first == second
    assert all(in_domain(geometry, point) for point in first)
    assert sample_domain_points(geometry.domain, 5, seed=7) != first


def test_domain_condition_sign():
    condition = DomainCondition(l * l - x0 * x0, 1)
    assert condition.holds({"x0": 1, "l": 2})
    assert not condition.holds({"x0": 3, "l": 2})
    assert str(DomainCondition(x0, -1)) == "x0 < 0"


@pytest.mark.parametrize(
    "name, ranks, signature",
    [
        ("Min", (4, 4), "(+,-,-,-;)"),
        ("NH_2", (2, 2), "(-,-;+,-)"),
        ("G_2", (2, 1), "(+,+;-)"),
        ("EG_2'", (2, 1), "(+,+;+)"),
        ("C", (3, 1), "(-,-,-;+)"),
    ],
)
def test_signature_rank(name, ranks, signature):
    """[TRIVIAL] ranks and inertia measured at sample points."""
    measured_ranks, descriptor = signature_rank(build_geometry(name))
    assert measured_ranks == ranks
    assert descriptor.matches(SignatureDescriptor.parse(signature))


def test_signature_descriptor_parsing_and_counts():
    descriptor = SignatureDescriptor.parse("(+,-,-;+)")
    assert descriptor.counts() == ((1, 2), (1, 0))
    assert str(descriptor) == "(+,-,-;+)"
    assert descriptor.matches(SignatureDescriptor.from_counts((1, 2), (1, 0)))
    assert not descriptor.matches(SignatureDescriptor.parse("(+,+,-;+)"))


def test_inertia_and_rank_of_rational_matrix():
    matrix = [[Fraction(2), Fraction(1), 0], [Fraction(1), Fraction(2), 0], [0, 0, Fraction(-5, 3)]]
    assert inertia(matrix) == (2, 1)
    assert matrix_rank([[1, 2], [2, 4]]) == 1


# -- coordinate maps ----------------------------------------------------------------


def test_duality_map_is_an_involution_on_geometries():
    """Pulling back twice returns the original tensors."""
    mapping = duality_map()
    geometry = build_geometry("Min")
    twice = pullback(mapping, pullback(mapping, geometry))
    assert (twice.g - geometry.g).is_zero()
    assert (twice.h - geometry.h).is_zero()
    assert twice.conn == geometry.conn


def test_duality_pullback_of_flat_space_matches_sympy():
    """[DERIVED] the covariant metric transported by sympy's Jacobian equals the library pullback."""
    geometry = build_geometry("Min")
    image = pullback(duality_map(), geometry)
    new = sympy.Matrix([L**2 / COORDINATES[0]] + [L * x / COORDINATES[0] for x in COORDINATES[1:]])
    jacobian = new.jacobian(COORDINATES)
    metric = sympy.Matrix(4, 4, lambda a, b: to_sympy(geometry.g[a, b]))
    transported = (jacobian.T * metric * jacobian).applyfunc(sympy.cancel)
    for a in range(4):
        for b in range(4):
            assert sympy.cancel(to_sympy(image.g[a, b]) - transported[a, b]) == 0


ROTATION = [[Fraction(3, 5), Fraction(-4, 5), 0, 0], [Fraction(4, 5), Fraction(3, 5), 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
BOOST = [[Fraction(5, 4), Fraction(3, 4), 0, 0], [Fraction(3, 4), Fraction(5, 4), 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]


def test_fractional_linear_map_inverse():
    mapping = fractional_linear_map(ROTATION, (1, 0, 2, 0))
    mapping.check_inverse()
    wrong = CoordinateMap(mapping.forward, mapping.forward, "not an inverse")
    with pytest.raises(NonInvertibleMap):
        wrong.check_inverse()


def test_fractional_linear_map_requires_invertible_matrix():
    singular = [[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    with pytest.raises(NonInvertibleMap):
        fractional_linear_map(singular, (0, 0, 0, 0))


def test_rotation_with_shift_preserves_second_euclid_geometry():
    assert invariance_failures(fractional_linear_map(ROTATION, (1, 0, 0, 0)), build_geometry("E_2")) == []


def test_boost_does_not_preserve_second_euclid_geometry():
    """Negative control: a Lorentz boost is not an isometry of the Euclidean signature chart."""
    assert invariance_failures(fractional_linear_map(BOOST, (1, 0, 0, 0)), build_geometry("E_2")) != []
