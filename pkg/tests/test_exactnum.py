import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kingeom.exactnum import (
    DEFAULT_SEED,
    DivergentLimit,
    DivisionByZeroFn,
    MultiPoly,
    PoleAtPoint,
    RationalFn,
    Verdict,
    eval_at,
    is_zero,
    laurent_limit,
    poly_arith,
    probably_zero,
    ratfn_arith,
    var,
)

x0, x1, x2, x3, c, l, eps = (var(name) for name in ("x0", "x1", "x2", "x3", "c", "l", "eps"))
X1, X2 = MultiPoly.variable("x1"), MultiPoly.variable("x2")


# -- poly_arith ---------------------------------------------------------------


def test_difference_of_squares():
    assert poly_arith(X1 + X2, X1 - X2, "mul") == X1 * X1 - X2 * X2


def test_additive_inverse_is_zero_polynomial():
    p = X1 * X2 + MultiPoly.constant(Fraction(3, 7))
    assert poly_arith(p, p, "sub").is_zero()


def test_multiplicative_identity():
    l_squared = MultiPoly.variable("l", 2)
    assert poly_arith(l_squared, MultiPoly.constant(1), "mul") == l_squared


def test_unknown_polynomial_operation_rejected():
    with pytest.raises(ValueError):
        poly_arith(X1, X2, "div")


def test_exact_division_detects_non_divisors():
    product = (X1 + X2) * (X1 - X2 * 3)
    assert product.divide_exact(X1 + X2) == X1 - X2 * 3
    assert product.divide_exact(X1 + X2 * 2) is None


# -- ratfn_arith --------------------------------------------------------------


def test_reciprocal_times_polynomial_is_one():
    sigma = 1 + (x0 * x0 + x1 * x1) / l**2
    assert ratfn_arith(1 / sigma, sigma, "mul") == 1
    assert (1 / sigma * sigma).is_constant()


def test_self_subtraction_is_zero():
    a = (x0 + c) / (l**2 - x1 * x1)
    assert ratfn_arith(a, a, "sub").is_zero()


def test_cancellation_of_common_monomial():
    assert ratfn_arith(x1 / x0, 1 / x0, "div") == x1
    assert (x1 / x0 / (1 / x0)).is_polynomial()


def test_division_by_zero_function():
    with pytest.raises(DivisionByZeroFn):
        ratfn_arith(x1, x0 - x0, "div")


def test_factored_denominator_round_trip():
    sigma = l**2 - x0**2 + x1**2
    f = (x0 * x1) / sigma**2
    assert f.den == (MultiPoly.variable("l", 2) - MultiPoly.variable("x0", 2) + MultiPoly.variable("x1", 2)) ** 2


def test_derivative_quotient_rule():
    f = x0 / (l**2 - x0**2)
    expected = (l**2 + x0**2) / (l**2 - x0**2) ** 2
    assert f.derivative("x0") == expected


# -- is_zero ------------------------------------------------------------------


def test_zero_over_one():
    assert is_zero(RationalFn.zero())


def test_syntactically_distinct_zero():
    assert is_zero((x0**2 - x0 * x0) / l)


def test_sigma_euclidean_is_not_zero():
    sigma_cleared = l**2 + x0**2 + x1**2 + x2**2 + x3**2
    assert not is_zero(sigma_cleared)
    assert not is_zero(sigma_cleared, precheck=True)
    # hand value at x=(1,0,0,0), c=3, l=5: 25 + 1
    assert eval_at(sigma_cleared, {"x0": 1, "x1": 0, "x2": 0, "x3": 0, "c": 3, "l": 5}) == 26


# -- laurent_limit ------------------------------------------------------------


def test_beltrami_factor_tends_to_one_when_radius_grows():
    interval = x0**2 - x1**2 - x2**2 - x3**2
    sigma = 1 - interval / l**2
    running = (1 / sigma).subs_scale("l", -1)
    limit = laurent_limit(running, 0)
    assert limit.verdict == Verdict.FINITE
    assert limit.leading == 1


def test_positive_order_is_zero_verdict():
    limit = laurent_limit(eps**2 * (x0 + x1), 0)
    assert limit.verdict == Verdict.ZERO
    assert limit.order == 2
    assert limit.value() == 0


def test_negative_order_is_divergent():
    limit = laurent_limit(1 / eps**2, 0)
    assert limit.verdict == Verdict.DIVERGENT
    with pytest.raises(DivergentLimit):
        limit.value()
    with pytest.raises(DivergentLimit):
        laurent_limit(1 / eps**2, 0, strict=True)


def test_prefactor_order_offsets_the_function():
    assert laurent_limit(1 / eps**2, 2).verdict == Verdict.FINITE
    assert laurent_limit(eps * x0, -1).leading == x0


def test_identically_zero_function_has_finite_zero_limit():
    limit = laurent_limit(RationalFn.zero(), -3)
    assert limit.verdict == Verdict.FINITE and limit.value() == 0


# -- eval_at ------------------------------------------------------------------


def test_euclidean_sigma_value():
    sigma = 1 + (x0**2 + x1**2 + x2**2 + x3**2) / l**2
    point = {"x0": 1, "x1": 0, "x2": 0, "x3": 0, "l": 5}
    assert eval_at(sigma, point) == Fraction(26, 25)


def test_anti_de_sitter_sigma_value():
    sigma = 1 + (x0**2 - x1**2 - x2**2 - x3**2) / l**2
    point = {"x0": 0, "x1": 1, "x2": 0, "x3": 0, "l": 5}
    assert eval_at(sigma, point) == Fraction(24, 25)


def test_pole_is_reported():
    with pytest.raises(PoleAtPoint):
        eval_at(1 / (l - x1), {"l": 2, "x1": 2})


# -- substitutions ------------------------------------------------------------


def test_scale_substitution_matches_general_substitution():
    f = (x0 * l + c**2) / (l**2 - x0**2 + x1 * c)
    scaled = f.subs_scale("l", 2).subs_scale("x0", -1)
    general = f.substitute({"l": l * eps**2, "x0": x0 / eps})
    assert scaled == general


def test_substitution_composes_an_involution():
    y0 = l**2 / x0
    y1 = l * x1 / x0
    f = (x0**2 - x1**2) / (l**2 + x1 * x0)
    twice = f.substitute({"x0": y0, "x1": y1}).substitute({"x0": y0, "x1": y1})
    assert twice == f


# -- algebraic properties -----------------------------------------------------

_SYMBOLS = [x0, x1, c, l]


@st.composite
def rational_functions(draw):
    def poly():
        total = RationalFn.zero()
        for _ in range(draw(st.integers(1, 3))):
            term = RationalFn.coerce(Fraction(draw(st.integers(-4, 4)), draw(st.integers(1, 3))))
            for symbol in _SYMBOLS:
                term = term * symbol ** draw(st.integers(0, 2))
            total = total + term
        return total

    numerator = poly()
    denominator = poly()
    if denominator.is_zero():
        denominator = RationalFn.one()
    return numerator / denominator


@settings(max_examples=40, deadline=None)
@given(rational_functions(), rational_functions(), rational_functions())
def test_ring_axioms(a, b, d):
    assert (a + b) + d == a + (b + d)
    assert (a * b) * d == a * (b * d)
    assert a * (b + d) == a * b + a * d
    assert a + 0 == a
    assert a * 1 == a
    assert a - a == 0


@settings(max_examples=40, deadline=None)
@given(rational_functions(), rational_functions())
def test_integral_domain(f, g):
    if g.is_zero():
        return
    assert is_zero(f * g) == is_zero(f)


def test_randomized_precheck_agrees_with_exact_decision():
    rng = random.Random(DEFAULT_SEED)
    symbols = [x0, x1, x2, c, l]
    for case in range(120):
        a = sum((rng.randint(-3, 3) * rng.choice(symbols) ** rng.randint(0, 2) for _ in range(3)), RationalFn.zero())
        b = sum((rng.randint(-3, 3) * rng.choice(symbols) ** rng.randint(0, 2) for _ in range(3)), RationalFn.zero())
        b = b if not b.is_zero() else RationalFn.one()
        identity = (a + b) ** 2 - a * a - 2 * a * b - b * b
        perturbed = identity + (case % 2) * (x0 - x1) / (l + c)
        for candidate in (identity, perturbed):
            exact = is_zero(candidate)
            assert probably_zero(candidate) == exact


def test_finite_limits_agree_with_evaluation_along_eps_sequences():
    f = (l**2 + eps * x0 * x1 + eps**2 * c) / (l**2 - eps**2 * x0**2)
    limit = laurent_limit(f, 0)
    assert limit.verdict == Verdict.FINITE
    rng = random.Random(DEFAULT_SEED)
    for _ in range(3):
        point = {"x0": Fraction(rng.randint(1, 9), 3), "x1": Fraction(rng.randint(1, 9), 5), "c": 2, "l": 3}
        target = eval_at(limit.leading, point)
        gaps = [abs(eval_at(f, dict(point, eps=Fraction(1, 2**k))) - target) for k in range(2, 9)]
        assert all(later < earlier for earlier, later in zip(gaps, gaps[1:]))
