from fractions import Fraction
from itertools import combinations

import pytest
import sympy

from conftest import C, COORDINATES, L, X0, to_sympy
from kingeom.catalog import build_algebra, generator
from kingeom.exactnum import RationalFn, var
from kingeom.liefields import (
    COMPOSITE,
    IDENTITY,
    PARITY,
    TIME_REVERSAL,
    AlgebraPresentation,
    DependentBasis,
    Involution,
    NotClosed,
    VectorField,
    apply_involution,
    closure,
    express_in_basis,
    is_automorphism,
    jacobi_check,
    lie_bracket,
    rotations_close,
)

x0, x1, x2, x3, c, l = (var(name) for name in ("x0", "x1", "x2", "x3", "c", "l"))


# -- independent sympy realization of the primitive families ---------------


def _oracle_field(symbol: str, index: int = 0) -> list:
    """Generator components written straight from the defining formulas."""
    euler = list(COORDINATES)
    unit = lambda mu: [1 if nu == mu else 0 for nu in range(4)]  # noqa: E731
    combine = lambda *terms: [sum(parts) for parts in zip(*terms)]  # noqa: E731
    scaled = lambda factor, vector: [factor * entry for entry in vector]  # noqa: E731
    if symbol in ("H", "H'", "H+", "H-"):
        time_derivative = scaled(C, unit(0))
        drift = scaled(C * X0 / L**2, euler)
        return {
            "H": time_derivative,
            "H'": scaled(-1, drift),
            "H+": combine(time_derivative, scaled(-1, drift)),
            "H-": combine(time_derivative, drift),
        }[symbol]
    position = COORDINATES[index]
    drift = scaled(position / L**2, euler)
    galilei = scaled(X0 / C, unit(index))
    carroll = scaled(position / C, unit(0))
    if symbol == "J":
        j, k = {1: (2, 3), 2: (3, 1), 3: (1, 2)}[index]
        return combine(scaled(-COORDINATES[j], unit(k)), scaled(COORDINATES[k], unit(j)))
    return {
        "P": unit(index),
        "P'": drift,
        "P+": combine(unit(index), drift),
        "P-": combine(unit(index), scaled(-1, drift)),
        "K": combine(galilei, carroll),
        "Kg": galilei,
        "Kc": carroll,
        "N": combine(galilei, scaled(-1, carroll)),
    }[symbol]


def _oracle_bracket(first, second) -> list:
    return [
        sympy.cancel(
            sum(first[nu] * sympy.diff(second[mu], COORDINATES[nu]) - second[nu] * sympy.diff(first[mu], COORDINATES[nu]) for nu in range(4))
        )
        for mu in range(4)
    ]


def _oracle_basis(time, translation, boost) -> list:
    def signed(slot, index=0):
        sign, symbol = slot
        return [sign * entry for entry in _oracle_field(symbol, index)]

    basis = [signed(time)]
    for slot in (translation, boost, (1, "J")):
        basis.extend(signed(slot, index) for index in (1, 2, 3))
    return basis


def _oracle_structure_constants(basis) -> dict:
    """Solve [e_a, e_b] = sum_k f_ab^k e_k by matching coefficients of x-monomials."""
    unknowns = sympy.symbols("f0:10")
    table = {}
    for a, b in combinations(range(10), 2):
        bracket = _oracle_bracket(basis[a], basis[b])
        equations = []
        for mu in range(4):
            residual = sympy.together(bracket[mu] - sum(u * e[mu] for u, e in zip(unknowns, basis)))
            numerator = sympy.numer(residual)
            equations.extend(sympy.Poly(sympy.expand(numerator), *COORDINATES).coeffs())
        solution = sympy.solve(equations, unknowns, dict=True)
        assert len(solution) == 1, f"oracle found no unique expansion for slots {a}, {b}"
        table[(a, b)] = [sympy.cancel(solution[0].get(u, 0)) for u in unknowns]
    return table


# -- brackets ---------------------------------------------------------------


@pytest.mark.parametrize(
    "first, second",
    [(("H+", 0), ("P+", 1)), (("H-", 0), ("N", 2)), (("K", 1), ("K", 2)), (("P-", 3), ("Kc", 3)), (("H'", 0), ("P'", 2))],
)
def test_bracket_matches_sympy(first, second):
    """[DERIVED] brackets agree with the sympy oracle component by component."""
    mine = lie_bracket(generator(*first), generator(*second))
    theirs = _oracle_bracket(_oracle_field(*first), _oracle_field(*second))
    for mu in range(4):
        assert sympy.cancel(to_sympy(mine[mu]) - theirs[mu]) == 0


def test_bracket_antisymmetry_and_self_bracket():
    first, second = generator("H+"), generator("K", 2)
    assert lie_bracket(first, second) == -lie_bracket(second, first)
    assert lie_bracket(first, first).is_zero()


def test_translations_commute_and_rotation_acts():
    assert lie_bracket(generator("P", 1), generator("P", 2)).is_zero()
    # [J1, J2] = J3 for J_i = -eps_ijk x^j d_k (sign frozen from the sympy oracle)
    assert lie_bracket(generator("J", 1), generator("J", 2)) == generator("J", 3)


# -- closure against the oracle ---------------------------------------------


@pytest.mark.parametrize(
    "name, slots",
    [
        ("p", ((1, "H"), (1, "P"), (1, "K"))),
        ("d_+", ((1, "H+"), (1, "P+"), (1, "K"))),
        ("g'", ((1, "H'"), (1, "P"), (1, "Kg"))),
        ("n_-2", ((-1, "H-"), (1, "P'"), (1, "Kc"))),
    ],
)
def test_structure_constants_match_sympy(name, slots):
    """[DERIVED] every structure constant equals the one solved independently in sympy."""
    constants = closure(build_algebra(name))
    oracle = _oracle_structure_constants(_oracle_basis(*slots))
    for (a, b), row in oracle.items():
        for k, expected in enumerate(row):
            assert sympy.cancel(to_sympy(constants[a][b][k]) - expected) == 0, (a, b, k)


def test_poincare_brackets_frozen():
    """[DERIVED] values frozen from the sympy oracle for the flat relativistic algebra."""
    constants = closure(build_algebra("p"))
    labels = constants.labels
    time, p1, k1, k2, j3 = 0, 1, 4, 5, 9
    assert labels[time] == "H" and labels[k1] == "K1"
    # boosts close into rotations, with the light-speed factor in the denominator
    assert constants[k1][k2][j3] == RationalFn.coerce(-1) / c**2
    assert constants[time][k1][p1] == RationalFn.coerce(1)
    assert constants[p1][k1][time] == RationalFn.coerce(1) / c**2


def test_closure_is_antisymmetric_and_jacobi():
    constants = closure(build_algebra("n_-"))
    assert constants.dimension == 10
    assert jacobi_check(constants)
    assert rotations_close(constants)


def test_perturbed_constants_break_jacobi():
    constants = closure(build_algebra("d_+"))
    # [H, P1] and [P1, K1] couple nontrivially, so nudging one entry breaks Jacobi
    broken = constants.perturbed(0, 1, 4, 1).perturbed(1, 0, 4, -1)
    assert not jacobi_check(broken)
    # an antisymmetry break is caught too
    assert not jacobi_check(constants.perturbed(0, 1, 4, 1))


def test_not_closed_names_the_pair():
    basis = list(build_algebra("p").basis)
    basis[0] = VectorField([x0 * x0, 0, 0, 0])
    labels = build_algebra("p").labels
    with pytest.raises(NotClosed) as caught:
        closure(AlgebraPresentation("broken", labels, tuple(basis)))
    assert len(caught.value.pair) == 2


def test_dependent_basis_rejected():
    basis = list(build_algebra("p").basis)
    basis[2] = basis[1] * 2
    with pytest.raises(DependentBasis):
        express_in_basis(basis, [])


def test_coordinate_denominators_rejected():
    basis = list(build_algebra("p").basis)
    basis[0] = VectorField([RationalFn.coerce(1) / (1 + x1 * x1), 0, 0, 0])
    with pytest.raises(ValueError, match="coordinate-dependent"):
        closure(AlgebraPresentation("bad", build_algebra("p").labels, tuple(basis)))


def test_express_in_basis_reports_outside_span():
    basis = build_algebra("e").basis
    inside = basis[1] * Fraction(3, 2) - basis[4] * (c / l)
    outside = VectorField([x1 * x2, 0, 0, 0])
    solved, missing = express_in_basis(basis, [inside, outside])
    assert missing is None
    assert solved[1] == RationalFn.coerce(Fraction(3, 2))
    assert solved[4] == -c / l


# -- involutions ----------------------------------------------------------------


@pytest.mark.parametrize("involution", [PARITY, TIME_REVERSAL, COMPOSITE, IDENTITY])
def test_block_involutions_are_automorphisms_of_poincare(involution):
    assert is_automorphism(build_algebra("p"), involution)


def test_non_automorphism_detected():
    """Flipping only the translations is not compatible with [H, K] ~ P."""
    flip_translations = Involution("FlipP", tuple(range(10)), (1, -1, -1, -1, 1, 1, 1, 1, 1, 1))
    assert not is_automorphism(build_algebra("p"), flip_translations)


def test_involution_must_square_to_identity():
    with pytest.raises(ValueError):
        Involution("bad", (1, 2, 0) + tuple(range(3, 10)), (1,) * 10)


def test_apply_involution_signs_slots():
    algebra = build_algebra("g")
    flipped = apply_involution(algebra, TIME_REVERSAL)
    assert flipped.basis[0] == -algebra.basis[0]
    assert flipped.basis[1] == algebra.basis[1]
    assert flipped.basis[4] == -algebra.basis[4]


def test_presentation_requires_ten_elements():
    with pytest.raises(ValueError):
        AlgebraPresentation("short", ("a",), (VectorField.zero(),))
