from pathlib import Path

import pytest
import sympy

from conftest import COORDINATES, L, to_sympy
from kingeom.catalog import (
    ALGEBRA_NAMES,
    GEOMETRY_NAMES,
    KINEMATICAL_NAMES,
    STATIC_NAMES,
    StaticExcluded,
    UnknownAlgebra,
    UnknownGeometry,
    build_algebra,
    build_geometry,
    generator,
)
from kingeom.catalog.algebras import algebra_row
from kingeom.catalog.tables import (
    ADDITIVITY_TRIPLES,
    COMBINATORY_BASES,
    CONTRAST_ROWS,
    DUALITY_PAIRS,
    GENUINE_KINEMATICS,
    SELF_DUAL,
    DualityMismatch,
    DualityPair,
    additivity_residual,
    duality_map,
    verify_combinatory,
    verify_contrast,
    verify_duality_pair,
)
from kingeom.geometry import pullback
from kingeom.speccli.dump import dump_catalog
from kingeom.suites import run_verification

GOLDEN = Path(__file__).parent / "golden" / "catalog.json"
DELTA = sympy.eye(4)
ETA = sympy.diag(1, -1, -1, -1)
SPATIAL_SQUARE = sum(x**2 for x in COORDINATES[1:])


def _assert_tensor(geometry_name: str, g, h, gamma):
    """Compare a catalog geometry with tensors built here in sympy."""
    geometry = build_geometry(geometry_name)
    for a in range(4):
        for b in range(4):
            assert sympy.cancel(to_sympy(geometry.g[a, b]) - g(a, b)) == 0, ("g", a, b)
            assert sympy.cancel(to_sympy(geometry.h[a, b]) - h(a, b)) == 0, ("h", a, b)
            for d in range(4):
                assert sympy.cancel(to_sympy(geometry.conn[a][b][d]) - gamma(a, b, d)) == 0, ("gamma", a, b, d)


# -- names and counts -----------------------------------------------------------


def test_counts():
    """[PAPER] 22 housed algebras, 10 kinematical ones and 45 geometries."""
    assert len(ALGEBRA_NAMES) == 22
    assert len(set(ALGEBRA_NAMES)) == 22
    assert len(KINEMATICAL_NAMES) == 10
    assert len(GEOMETRY_NAMES) == 45
    assert len(set(GEOMETRY_NAMES)) == 45


def test_static_rows_are_excluded():
    for name in STATIC_NAMES:
        with pytest.raises(StaticExcluded):
            build_algebra(name)
    with pytest.raises(UnknownAlgebra):
        build_algebra("nope")
    with pytest.raises(UnknownGeometry):
        build_geometry("nope")


@pytest.mark.parametrize(
    "name, time, translation, boost",
    [
        ("d_+", (1, "H+"), (1, "P+"), (1, "K")),
        ("g'", (1, "H'"), (1, "P"), (1, "Kg")),
        ("e_2", (-1, "H'"), (1, "P'"), (1, "N")),
        ("n_-2", (-1, "H-"), (1, "P'"), (1, "Kc")),
    ],
)
def test_row_slots(name, time, translation, boost):
    """[PAPER] generator families of selected rows."""
    row = algebra_row(name)
    assert (row.time, row.translation, row.boost) == (time, translation, boost)
    algebra = build_algebra(name)
    assert algebra.basis[0] == generator(time[1]) * time[0]
    assert algebra.basis[5] == generator(boost[1], 2) * boost[0]


def test_every_geometry_refers_to_a_housed_algebra():
    for name in GEOMETRY_NAMES:
        assert build_geometry(name).algebra in ALGEBRA_NAMES


# -- rows against closed-form tensors -------------------------------------------


def test_second_euclid_geometry_matches_closed_form():
    """[PAPER] g = l^2 (d d - d d) x x / (x.x)^2, h = l^-4 (x.x) x x, Gamma = -(d x + d x)/(x.x)."""
    square = sum(x**2 for x in COORDINATES)
    _assert_tensor(
        "E_2",
        lambda a, b: L**2 * (DELTA[a, b] * square - COORDINATES[a] * COORDINATES[b]) / square**2,
        lambda a, b: square * COORDINATES[a] * COORDINATES[b] / L**4,
        lambda la, mu, nu: -(DELTA[la, mu] * COORDINATES[nu] + DELTA[la, nu] * COORDINATES[mu]) / square,
    )


@pytest.mark.parametrize("name, sign", [("P_2+", 1), ("P_2-", -1)])
def test_second_poincare_geometries_match_closed_form(name, sign):
    """[PAPER] the two degenerate limits of the relativistic constant-curvature charts."""
    lowered = [sum(ETA[mu, k] * COORDINATES[k] for k in range(4)) for mu in range(4)]
    square = sum(lowered[k] * COORDINATES[k] for k in range(4))
    _assert_tensor(
        name,
        lambda a, b: sign * L**2 * (lowered[a] * lowered[b] - ETA[a, b] * square) / square**2,
        lambda a, b: square * COORDINATES[a] * COORDINATES[b] / L**4,
        lambda la, mu, nu: -(DELTA[la, mu] * lowered[nu] + DELTA[la, nu] * lowered[mu]) / square,
    )


def test_hooke_newton_geometry_matches_closed_form():
    """[PAPER] spatial sphere metric, h = sigma d_0 d_0 and the radial connection."""
    sigma = 1 + SPATIAL_SQUARE / L**2

    def g(a, b):
        if 0 in (a, b):
            return 0
        return -(DELTA[a, b] - COORDINATES[a] * COORDINATES[b] / (L**2 * sigma)) / sigma

    def gamma(la, mu, nu):
        if la == 0:
            spatial = nu if mu == 0 else mu if nu == 0 else None
            return 0 if spatial in (None, 0) else -COORDINATES[spatial] / (L**2 * sigma)
        if 0 in (mu, nu):
            return 0
        return -(DELTA[la, mu] * COORDINATES[nu] + DELTA[la, nu] * COORDINATES[mu]) / (L**2 * sigma)

    _assert_tensor("HN_+", g, lambda a, b: sigma if a == b == 0 else 0, gamma)


def test_second_para_galilei_geometry_matches_closed_form():
    """[PAPER] spatial metric of rank 2, rank-one h and the projective connection."""

    def g(a, b):
        if 0 in (a, b):
            return 0
        return L**2 * (COORDINATES[a] * COORDINATES[b] - DELTA[a, b] * SPATIAL_SQUARE) / SPATIAL_SQUARE**2

    def gamma(la, mu, nu):
        if la == 0:
            spatial = nu if mu == 0 else mu if nu == 0 else None
            return 0 if spatial in (None, 0) else -COORDINATES[spatial] / SPATIAL_SQUARE
        if 0 in (mu, nu):
            return 0
        return -(DELTA[la, mu] * COORDINATES[nu] + DELTA[la, nu] * COORDINATES[mu]) / SPATIAL_SQUARE

    _assert_tensor("G_2'", g, lambda a, b: SPATIAL_SQUARE / L**2 if a == b == 0 else 0, gamma)


def test_free_parameter_is_stored_squared():
    """[PAPER] the free parameter l^2 |x|^-1 is kept as its square to stay rational."""
    (parameter,) = build_geometry("G_2'").free_parameters
    assert sympy.cancel(to_sympy(parameter) - L**4 / SPATIAL_SQUARE) == 0


# -- duality -------------------------------------------------------------------------


EXPECTED_PAIRS = {
    ("Min", "P'"), ("Euc", "E'"), ("G", "G'"), ("EG", "EG'"), ("C", "C_2"), ("EC", "EC_2"),
    ("G_2", "G_2'"), ("EG_2", "EG_2'"), ("HN_+", "E_2-"), ("EHN_+", "E_2"), ("HN_-", "P_2-"),
    ("EHN_-", "EP_2-"), ("HN_-'", "P_2+"), ("DTHN", "DTP_2+"), ("NH_+", "NH_+'"), ("ENH_+", "ENH_+'"),
    ("NH_2", "NH_2'"), ("NH_-", "NH_-"), ("ENH_-", "ENH_-"), ("ENH_2", "ENH_2"), ("DTNH_2", "DTNH_2"),
}  # fmt: skip


def test_duality_table_lists_the_expected_pairs():
    """[PAPER] 21 pairs, four of them self-dual."""
    assert {(pair.left, pair.right) for pair in DUALITY_PAIRS} == EXPECTED_PAIRS
    assert set(SELF_DUAL) == {"NH_-", "ENH_-", "ENH_2", "DTNH_2"}
    assert all(pair.self_dual == (pair.left in SELF_DUAL) for pair in DUALITY_PAIRS)


@pytest.mark.parametrize("pair", DUALITY_PAIRS, ids=lambda pair: f"{pair.left}-{pair.right}")
def test_duality_pair(pair):
    verify_duality_pair(pair)


def test_duality_signs_are_frozen():
    """[DERIVED] overall signs of the pulled-back tensors, fixed by computation."""
    flipped = {(pair.left, pair.right) for pair in DUALITY_PAIRS if (pair.g_sign, pair.h_sign) == (-1, -1)}
    assert flipped == {("G", "G'"), ("G_2", "G_2'"), ("EG_2", "EG_2'"), ("HN_+", "E_2-"), ("HN_-'", "P_2+"), ("NH_+", "NH_+'"), ("NH_2", "NH_2'")}
    assert all((pair.g_sign, pair.h_sign) in {(1, 1), (-1, -1)} for pair in DUALITY_PAIRS)


def test_wrong_duality_sign_is_reported():
    with pytest.raises(DualityMismatch):
        verify_duality_pair(DualityPair("Min", "P'", -1, -1))
    with pytest.raises(DualityMismatch):
        verify_duality_pair(DualityPair("Min", "E'"))


@pytest.mark.parametrize("name", SELF_DUAL)
def test_self_dual_geometry_is_a_fixed_point(name):
    geometry = build_geometry(name)
    image = pullback(duality_map(), geometry)
    assert (image.g - geometry.g).is_zero()
    assert (image.h - geometry.h).is_zero()
    assert image.conn == geometry.conn


# -- contrast, genuine kinematics, additivity ------------------------------------------


@pytest.mark.parametrize("row", CONTRAST_ROWS, ids=lambda row: row.geometry)
def test_contrast_row(row):
    assert verify_contrast(row) is None


def test_genuine_kinematics_table():
    """[PAPER] three classes by three curvature signs."""
    table = {(row.kind, row.curvature): row.geometry for row in GENUINE_KINEMATICS}
    assert table == {
        ("Relativistic", ">0"): "dS", ("Relativistic", "=0"): "Min", ("Relativistic", "<0"): "AdS",
        ("AbsoluteTime", ">0"): "NH_+", ("AbsoluteTime", "=0"): "G", ("AbsoluteTime", "<0"): "NH_-",
        ("AbsoluteSpace", ">0"): "E_2-", ("AbsoluteSpace", "=0"): "C", ("AbsoluteSpace", "<0"): "P_2-",
    }  # fmt: skip


def test_genuine_kinematics_rows_verify():
    report = run_verification(["geometry"], only="E_2-")
    genuine = [check for check in report.checks if check.kind == "genuine"]
    assert [check.status for check in genuine] == ["pass"]


def test_additivity_with_orientation():
    """[DERIVED] h_G2 + h_G2' = h_NH2 holds; the Euclidean triple holds with the first term negated."""
    first, second = ADDITIVITY_TRIPLES
    assert additivity_residual(first).is_zero()
    assert additivity_residual(second, orientation=-1).is_zero()
    assert not additivity_residual(second, orientation=1).is_zero()


# -- combinatory bases -------------------------------------------------------------------


@pytest.mark.parametrize("basis", COMBINATORY_BASES, ids=lambda basis: basis.algebra)
def test_combinatory_basis(basis):
    assert verify_combinatory(basis) == []


def test_combinatory_basis_mismatch_reported():
    broken = COMBINATORY_BASES[0].__class__("p", (("H+", 1),), COMBINATORY_BASES[0].translation, COMBINATORY_BASES[0].boost)
    problems = verify_combinatory(broken)
    assert problems and "slot H" in problems[0]


# -- golden file --------------------------------------------------------------------------


def test_catalog_dump_matches_golden_file():
    assert dump_catalog("json") == GOLDEN.read_text(encoding="utf-8")
