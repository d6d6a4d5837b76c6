"""Exact scalar arithmetic: rationals, multivariate polynomials, rational functions.

Every scalar in the package lives in the field Q(x0, x1, x2, x3, c, l, eps).
Rational numbers are :class:`fractions.Fraction` (or plain ``int``), which
already keep ``gcd(num, den) == 1`` and a positive denominator.

Polynomials store each monomial as one packed integer with 16 bits per
variable, so multiplying monomials is a single integer addition.  Rational
functions keep their denominator as a product of powers of primitive integer
polynomials.  Cancelling a numerator against known factors is then a series
of exact trial divisions, and no multivariate gcd is ever needed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Union

__all__ = [
    "VARIABLES",
    "DEFAULT_SEED",
    "MultiPoly",
    "RationalFn",
    "LaurentLimit",
    "Verdict",
    "DivisionByZeroFn",
    "PoleAtPoint",
    "DivergentLimit",
    "poly_arith",
    "ratfn_arith",
    "is_zero",
    "probably_zero",
    "laurent_limit",
    "eval_at",
    "var",
    "const",
    "random_point",
]

VARIABLES = ("x0", "x1", "x2", "x3", "c", "l", "eps")
VARIABLE_INDEX = {name: index for index, name in enumerate(VARIABLES)}
DEFAULT_SEED = 0x4B494E
EPS = VARIABLE_INDEX["eps"]

_NVARS = len(VARIABLES)
_FIELD_BITS = 16
_FIELD_MASK = (1 << _FIELD_BITS) - 1
_SHIFTS = tuple(_FIELD_BITS * (_NVARS - 1 - index) for index in range(_NVARS))
_GUARD = sum(1 << (shift + _FIELD_BITS - 1) for shift in _SHIFTS)
_DEGREE_MULTIPLIER = sum(1 << shift for shift in _SHIFTS)
_DEGREE_SHIFT = _FIELD_BITS * (_NVARS - 1)
_ORDER_SHIFT = _FIELD_BITS * _NVARS

Scalar = Union[int, Fraction]


class DivisionByZeroFn(ZeroDivisionError):
    """Raised when dividing by the zero rational function."""


class PoleAtPoint(ZeroDivisionError):
    """Raised when a denominator vanishes at an evaluation point."""

    def __init__(self, point):
        super().__init__(f"denominator vanishes at {dict(point)}")
        self.point = dict(point)


class DivergentLimit(ArithmeticError):
    """Raised when a contraction limit has negative Laurent order."""

    def __init__(self, order: int):
        super().__init__(f"limit diverges: Laurent order {order} < 0")
        self.order = order


# ---------------------------------------------------------------------------
# packed monomials


def pack(exponents: Iterable[int]) -> int:
    """Pack an exponent vector (one entry per variable) into an integer."""
    packed = 0
    for shift, exponent in zip(_SHIFTS, exponents):
        if exponent < 0 or exponent >= 1 << (_FIELD_BITS - 1):
            raise ValueError(f"exponent {exponent} out of range")
        packed |= exponent << shift
    return packed


def unpack(monomial: int) -> tuple[int, ...]:
    """Inverse of :func:`pack`."""
    return tuple((monomial >> shift) & _FIELD_MASK for shift in _SHIFTS)


def exponent_of(monomial: int, index: int) -> int:
    return (monomial >> _SHIFTS[index]) & _FIELD_MASK


def monomial_degree(monomial: int) -> int:
    return ((monomial * _DEGREE_MULTIPLIER) >> _DEGREE_SHIFT) & _FIELD_MASK


def order_key(monomial: int) -> int:
    """Graded-lexicographic sort key (x0 > x1 > ... > eps)."""
    return (monomial_degree(monomial) << _ORDER_SHIFT) | monomial


def monomial_divides(divisor: int, monomial: int) -> bool:
    return ((monomial | _GUARD) - divisor) & _GUARD == _GUARD


def unit_monomial(index: int, exponent: int = 1) -> int:
    return exponent << _SHIFTS[index]


def _as_scalar(value) -> Scalar:
    if isinstance(value, (int, Fraction)):
        return value
    return Fraction(value)


def _tidy(value: Scalar) -> Scalar:
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def _index(variable) -> int:
    if isinstance(variable, int):
        return variable
    try:
        return VARIABLE_INDEX[variable]
    except KeyError:
        raise KeyError(f"unknown variable {variable!r}") from None


# ---------------------------------------------------------------------------
# polynomials


class MultiPoly:
    """Immutable polynomial in the seven package variables with rational coefficients.

    ``terms`` maps packed monomials to nonzero coefficients.  Equality is
    structural because the representation is canonical.
    """

    __slots__ = ("terms", "_hash", "_key")

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        self.terms = dict(terms) if terms else {}
        self._hash = None
        self._key = None

    @classmethod
    def _raw(cls, terms: dict) -> "MultiPoly":
        poly = cls.__new__(cls)
        poly.terms = terms
        poly._hash = None
        poly._key = None
        return poly

    @classmethod
    def constant(cls, value) -> "MultiPoly":
        value = _tidy(_as_scalar(value))
        return cls._raw({0: value} if value else {})

    @classmethod
    def variable(cls, name, power: int = 1) -> "MultiPoly":
        return cls._raw({unit_monomial(_index(name), power): 1})

    @classmethod
    def from_exponents(cls, items: Mapping[tuple, Scalar]) -> "MultiPoly":
        terms = {}
        for exponents, coefficient in items.items():
            coefficient = _as_scalar(coefficient)
            if coefficient:
                monomial = pack(tuple(exponents) + (0,) * (_NVARS - len(exponents)))
                terms[monomial] = _tidy(terms.get(monomial, 0) + coefficient)
                if not terms[monomial]:
                    del terms[monomial]
        return cls._raw(terms)

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(0, 0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading_monomial(self) -> int:
        return max(self.terms, key=order_key)

    def leading_coefficient(self) -> Scalar:
        return self.terms[self.leading_monomial()]

    def degree(self, variable) -> int:
        index = _index(variable)
        return max((exponent_of(m, index) for m in self.terms), default=0)

    def min_degree(self, variable) -> int:
        index = _index(variable)
        return min((exponent_of(m, index) for m in self.terms), default=0)

    def total_degree(self) -> int:
        return max((monomial_degree(m) for m in self.terms), default=0)

    def variables(self) -> tuple[str, ...]:
        used = 0
        for monomial in self.terms:
            used |= monomial
        return tuple(name for index, name in enumerate(VARIABLES) if exponent_of(used, index))

    def sort_key(self) -> tuple:
        if self._key is None:
            self._key = tuple(
                (order_key(m), self.terms[m]) for m in sorted(self.terms, key=order_key, reverse=True)
            )
        return self._key

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw({m: -v for m, v in self.terms.items()})

    def __add__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other)
        if len(self.terms) < len(other.terms):
            small, large = self.terms, other.terms
        else:
            small, large = other.terms, self.terms
        result = dict(large)
        for monomial, value in small.items():
            total = result.get(monomial, 0) + value
            if total:
                result[monomial] = total
            else:
                result.pop(monomial, None)
        return MultiPoly._raw(result)

    __radd__ = __add__

    def __sub__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other)
        result = dict(self.terms)
        for monomial, value in other.terms.items():
            total = result.get(monomial, 0) - value
            if total:
                result[monomial] = total
            else:
                result.pop(monomial, None)
        return MultiPoly._raw(result)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def scale(self, factor: Scalar) -> "MultiPoly":
        if not factor:
            return MultiPoly._raw({})
        if factor == 1:
            return self
        return MultiPoly._raw({m: _tidy(v * factor) for m, v in self.terms.items()})

    def shift(self, monomial: int) -> "MultiPoly":
        """Multiply by a single monomial with coefficient one."""
        if not monomial:
            return self
        return MultiPoly._raw({m + monomial: v for m, v in self.terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(_as_scalar(other))
        left, right = self.terms, other.terms
        if not left or not right:
            return MultiPoly._raw({})
        if len(left) < len(right):
            left, right = right, left
        if len(right) == 1:
            ((mono, value),) = right.items()
            if value == 1:
                return MultiPoly._raw({m + mono: v for m, v in left.items()})
            return MultiPoly._raw({m + mono: v * value for m, v in left.items()})
        result: dict = {}
        get = result.get
        for mono_b, value_b in right.items():
            for mono_a, value_a in left.items():
                key = mono_a + mono_b
                result[key] = get(key, 0) + value_a * value_b
        return MultiPoly._raw({m: v for m, v in result.items() if v})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MultiPoly":
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def derivative(self, variable) -> "MultiPoly":
        index = _index(variable)
        unit = unit_monomial(index)
        result = {}
        for monomial, value in self.terms.items():
            exponent = exponent_of(monomial, index)
            if exponent:
                result[monomial - unit] = value * exponent
        return MultiPoly._raw(result)

    # -- division ---------------------------------------------------------

    def divide_exact(self, divisor: "MultiPoly") -> "MultiPoly | None":
        """Return the quotient if ``divisor`` divides ``self`` exactly, else None."""
        if not divisor.terms:
            raise DivisionByZeroFn("polynomial division by zero")
        if not self.terms:
            return self
        if len(divisor.terms) == 1:
            ((mono, value),) = divisor.terms.items()
            if not all(monomial_divides(mono, m) for m in self.terms):
                return None
            if value == 1:
                return MultiPoly._raw({m - mono: v for m, v in self.terms.items()})
            return MultiPoly._raw({m - mono: _tidy(Fraction(v) / value) for m, v in self.terms.items()})
        lead_mono = divisor.leading_monomial()
        lead_value = divisor.terms[lead_mono]
        lead_degree = monomial_degree(lead_mono)
        if self.total_degree() < lead_degree:
            return None
        # A divisor cannot divide a polynomial whose per-variable degree is smaller.
        for index in range(_NVARS):
            if divisor.degree(index) > self.degree(index):
                return None
        remainder = dict(self.terms)
        quotient = {}
        divisor_items = list(divisor.terms.items())
        while remainder:
            mono = max(remainder, key=order_key)
            if not monomial_divides(lead_mono, mono):
                return None
            factor_mono = mono - lead_mono
            factor_value = remainder[mono]
            if lead_value != 1:
                factor_value = _tidy(Fraction(factor_value) / lead_value)
            quotient[factor_mono] = factor_value
            for d_mono, d_value in divisor_items:
                key = d_mono + factor_mono
                total = remainder.get(key, 0) - d_value * factor_value
                if total:
                    remainder[key] = total
                else:
                    remainder.pop(key, None)
        return MultiPoly._raw(quotient)

    def content(self) -> Fraction:
        """Positive rational ``q`` such that ``self / q`` has coprime integer coefficients."""
        numerator_gcd = 0
        denominator_lcm = 1
        for value in self.terms.values():
            value = Fraction(value)
            numerator_gcd = gcd(numerator_gcd, value.numerator)
            denominator_lcm = denominator_lcm * value.denominator // gcd(denominator_lcm, value.denominator)
        if not numerator_gcd:
            return Fraction(1)
        return Fraction(numerator_gcd, denominator_lcm)

    def monomial_content(self) -> int:
        """Largest monomial dividing every term."""
        if not self.terms:
            return 0
        exponents = [_FIELD_MASK] * _NVARS
        for monomial in self.terms:
            for index in range(_NVARS):
                exponents[index] = min(exponents[index], exponent_of(monomial, index))
        return pack(exponents)

    def primitive(self) -> tuple[Fraction, "MultiPoly"]:
        """Split into a signed rational scale and a primitive integer polynomial.

        The primitive part has a positive leading coefficient.
        """
        scale = self.content()
        if self.leading_coefficient() < 0:
            scale = -scale
        if scale == 1:
            return scale, self
        return scale, MultiPoly._raw({m: _tidy(Fraction(v) / scale) for m, v in self.terms.items()})

    # -- substitutions and evaluation -------------------------------------

    def scale_variable(self, variable, eps_power: int) -> tuple["MultiPoly", int]:
        """Substitute ``variable -> variable * eps**eps_power``.

        Returns ``(poly, offset)`` with the substituted polynomial equal to
        ``eps**offset * poly`` and ``poly`` not divisible by ``eps``.
        """
        index = _index(variable)
        if not self.terms or not eps_power:
            return self, 0
        shifted = {}
        eps_powers = {}
        for monomial, value in self.terms.items():
            power = exponent_of(monomial, EPS) + eps_power * exponent_of(monomial, index)
            eps_powers[monomial] = power
        offset = min(eps_powers.values())
        eps_unit = unit_monomial(EPS)
        for monomial, value in self.terms.items():
            current = exponent_of(monomial, EPS)
            shifted[monomial + (eps_powers[monomial] - offset - current) * eps_unit] = value
        return MultiPoly._raw(shifted), offset

    def eps_order(self) -> int:
        return self.min_degree(EPS)

    def eps_coefficient(self, power: int) -> "MultiPoly":
        """Coefficient of ``eps**power`` as an eps-free polynomial."""
        eps_unit = unit_monomial(EPS)
        return MultiPoly._raw(
            {m - power * eps_unit: v for m, v in self.terms.items() if exponent_of(m, EPS) == power}
        )

    def evaluate(self, values: Mapping[int, Scalar]) -> Scalar:
        """Evaluate at a full assignment keyed by variable index."""
        used = self.variables()
        powers = {}
        for name in used:
            index = VARIABLE_INDEX[name]
            if index not in values:
                raise KeyError(f"no value for variable {name}")
        total: Scalar = 0
        for monomial, value in self.terms.items():
            term = value
            if monomial:
                for name in used:
                    index = VARIABLE_INDEX[name]
                    exponent = exponent_of(monomial, index)
                    if exponent:
                        key = (index, exponent)
                        power = powers.get(key)
                        if power is None:
                            power = powers[key] = values[index] ** exponent
                        term = term * power
            total = total + term
        return total

    def substitute(self, mapping: Mapping[int, "RationalFn"]) -> "RationalFn":
        """Compose with rational functions for some variables (keyed by index)."""
        cache: dict = {}

        def power_of(index: int, exponent: int) -> RationalFn:
            key = (index, exponent)
            if key not in cache:
                cache[key] = mapping[index] if exponent == 1 else power_of(index, exponent - 1) * mapping[index]
            return cache[key]

        grouped: dict = {}
        for monomial, value in self.terms.items():
            kept = 0
            mapped = []
            for index in range(_NVARS):
                exponent = exponent_of(monomial, index)
                if not exponent:
                    continue
                if index in mapping:
                    mapped.append((index, exponent))
                else:
                    kept |= unit_monomial(index, exponent)
            grouped.setdefault(tuple(mapped), {})[kept] = value
        total = RationalFn.zero()
        for mapped, remaining in sorted(grouped.items()):
            term = RationalFn(MultiPoly._raw(remaining))
            for index, exponent in mapped:
                term = term * power_of(index, exponent)
            total = total + term
        return total

    # -- formatting -------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for monomial in sorted(self.terms, key=order_key, reverse=True):
            value = self.terms[monomial]
            factors = []
            for index, exponent in enumerate(unpack(monomial)):
                if exponent == 1:
                    factors.append(VARIABLES[index])
                elif exponent:
                    factors.append(f"{VARIABLES[index]}^{exponent}")
            sign = "-" if value < 0 else "+"
            magnitude = abs(value)
            if factors:
                body = "*".join(factors)
                if magnitude != 1:
                    text = str(magnitude)
                    body = (f"({text})" if "/" in text else text) + "*" + body
            else:
                text = str(magnitude)
                body = f"({text})" if "/" in text and len(self.terms) > 1 else text
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Apply ``add``, ``sub`` or ``mul`` to two polynomials."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


# ---------------------------------------------------------------------------
# rational functions

_ONE = MultiPoly.constant(1)


def _factor_sort_key(factor: MultiPoly) -> tuple:
    return (len(factor.terms), factor.sort_key())


def _normalize_factors(factors: dict) -> tuple:
    return tuple(sorted(((f, e) for f, e in factors.items() if e), key=lambda item: _factor_sort_key(item[0])))


def _cancel(numerator: MultiPoly, factors: Iterable) -> tuple[MultiPoly, dict]:
    """Divide ``numerator`` by denominator factors while the division is exact."""
    remaining = {}
    for factor, exponent in factors:
        while exponent and numerator.terms:
            quotient = numerator.divide_exact(factor)
            if quotient is None:
                break
            numerator = quotient
            exponent -= 1
        if exponent and numerator.terms:
            remaining[factor] = remaining.get(factor, 0) + exponent
    return numerator, remaining


def _expand(factors: Iterable) -> MultiPoly:
    result = _ONE
    for factor, exponent in factors:
        result = result * factor**exponent
    return result


def _split_polynomial(poly: MultiPoly, known: Iterable[MultiPoly] = ()) -> tuple[Scalar, dict]:
    """Write ``poly`` as ``scale * prod(factor**exponent)``.

    Single variables and any ``known`` factor are split off first; whatever is
    left becomes one primitive factor.
    """
    if not poly.terms:
        raise DivisionByZeroFn("division by the zero rational function")
    scale, primitive = poly.primitive()
    factors: dict = {}
    monomial = primitive.monomial_content()
    if monomial:
        for index, exponent in enumerate(unpack(monomial)):
            if exponent:
                factors[MultiPoly.variable(index)] = exponent
        primitive = MultiPoly._raw({m - monomial: v for m, v in primitive.terms.items()})
    for factor in known:
        if factor.is_monomial() or primitive.is_constant():
            continue
        while True:
            quotient = primitive.divide_exact(factor)
            if quotient is None:
                break
            factors[factor] = factors.get(factor, 0) + 1
            primitive = quotient
    if not primitive.is_constant():
        sub_scale, primitive = primitive.primitive()
        scale = scale * sub_scale
        factors[primitive] = factors.get(primitive, 0) + 1
    else:
        scale = scale * primitive.constant_value()
    return _tidy(scale), factors


class RationalFn:
    """Immutable rational function ``num / prod(factor**exponent)``.

    Every denominator factor is a primitive integer polynomial with positive
    leading coefficient; the numerator carries the overall rational scale.
    """

    __slots__ = ("num", "den_factors")

    def __init__(self, num=None, den_factors: tuple = ()):
        if num is None:
            num = MultiPoly._raw({})
        elif not isinstance(num, MultiPoly):
            num = MultiPoly.constant(num)
        self.num = num
        self.den_factors = den_factors if num.terms else ()

    # -- construction ------------------------------------------------------

    @classmethod
    def zero(cls) -> "RationalFn":
        return cls()

    @classmethod
    def one(cls) -> "RationalFn":
        return cls(_ONE)

    @classmethod
    def from_polys(cls, num: MultiPoly, den: MultiPoly) -> "RationalFn":
        scale, factors = _split_polynomial(den)
        numerator, remaining = _cancel(num, factors.items())
        return cls(numerator.scale(_tidy(Fraction(1) / scale)), _normalize_factors(remaining))

    @classmethod
    def coerce(cls, value) -> "RationalFn":
        if isinstance(value, RationalFn):
            return value
        if isinstance(value, MultiPoly):
            return cls(value)
        return cls(MultiPoly.constant(value))

    # -- queries ---------------------------------------------------------

    @property
    def den(self) -> MultiPoly:
        return _expand(self.den_factors)

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_polynomial(self) -> bool:
        return not self.den_factors

    def is_constant(self) -> bool:
        return not self.den_factors and self.num.is_constant()

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.constant_value()

    def variables(self) -> tuple[str, ...]:
        used = set(self.num.variables())
        for factor, _ in self.den_factors:
            used.update(factor.variables())
        return tuple(name for name in VARIABLES if name in used)

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "RationalFn":
        return RationalFn(-self.num, self.den_factors)

    def __add__(self, other) -> "RationalFn":
        other = RationalFn.coerce(other)
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den_factors == other.den_factors:
            numerator, remaining = _cancel(self.num + other.num, self.den_factors)
            return RationalFn(numerator, _normalize_factors(remaining))
        mine = dict(self.den_factors)
        theirs = dict(other.den_factors)
        common = dict(mine)
        for factor, exponent in theirs.items():
            if exponent > common.get(factor, 0):
                common[factor] = exponent
        my_multiplier = _expand((f, e - mine.get(f, 0)) for f, e in common.items())
        their_multiplier = _expand((f, e - theirs.get(f, 0)) for f, e in common.items())
        numerator = self.num * my_multiplier + other.num * their_multiplier
        numerator, remaining = _cancel(numerator, _normalize_factors(common))
        return RationalFn(numerator, _normalize_factors(remaining))

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFn":
        return self + (-RationalFn.coerce(other))

    def __rsub__(self, other) -> "RationalFn":
        return RationalFn.coerce(other) + (-self)

    def __mul__(self, other) -> "RationalFn":
        if isinstance(other, (int, Fraction)):
            if not other:
                return RationalFn.zero()
            return RationalFn(self.num.scale(other), self.den_factors)
        other = RationalFn.coerce(other)
        if not self.num.terms or not other.num.terms:
            return RationalFn.zero()
        left_num, other_remaining = _cancel(self.num, other.den_factors)
        right_num, self_remaining = _cancel(other.num, self.den_factors)
        for factor, exponent in other_remaining.items():
            self_remaining[factor] = self_remaining.get(factor, 0) + exponent
        return RationalFn(left_num * right_num, _normalize_factors(self_remaining))

    __rmul__ = __mul__

    def inverse(self, known: Iterable[MultiPoly] = ()) -> "RationalFn":
        if not self.num.terms:
            raise DivisionByZeroFn("division by the zero rational function")
        scale, factors = _split_polynomial(self.num, known)
        numerator = _expand(self.den_factors).scale(_tidy(Fraction(1) / scale))
        return RationalFn(numerator, _normalize_factors(factors))

    def __truediv__(self, other) -> "RationalFn":
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZeroFn("division by zero")
            return RationalFn(self.num.scale(_tidy(Fraction(1) / other)), self.den_factors)
        other = RationalFn.coerce(other)
        if not other.num.terms:
            raise DivisionByZeroFn("division by the zero rational function")
        known = [f for f, _ in self.den_factors] + [f for f, _ in other.den_factors]
        return self * other.inverse(known)

    def __rtruediv__(self, other) -> "RationalFn":
        return RationalFn.coerce(other) / self

    def __pow__(self, exponent: int) -> "RationalFn":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if exponent == 0:
            return RationalFn.one()
        return RationalFn(self.num**exponent, tuple((f, e * exponent) for f, e in self.den_factors))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = RationalFn.coerce(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        if self.den_factors == other.den_factors:
            return self.num == other.num
        return (self - other).is_zero()

    __hash__ = None

    # -- calculus and substitution ------------------------------------------

    def derivative(self, variable) -> "RationalFn":
        index = _index(variable)
        numerator_derivative = self.num.derivative(index)
        moving = [(f, e, f.derivative(index)) for f, e in self.den_factors]
        moving = [(f, e, d) for f, e, d in moving if d.terms]
        if not moving:
            if not numerator_derivative.terms:
                return RationalFn.zero()
            numerator, remaining = _cancel(numerator_derivative, self.den_factors)
            return RationalFn(numerator, _normalize_factors(remaining))
        product = _ONE
        for factor, _, _ in moving:
            product = product * factor
        numerator = numerator_derivative * product
        for position, (factor, exponent, factor_derivative) in enumerate(moving):
            others = _ONE
            for other_position, (other_factor, _, _) in enumerate(moving):
                if other_position != position:
                    others = others * other_factor
            numerator = numerator - self.num * factor_derivative * others * exponent
        factors = dict(self.den_factors)
        for factor, _, _ in moving:
            factors[factor] += 1
        numerator, remaining = _cancel(numerator, _normalize_factors(factors))
        return RationalFn(numerator, _normalize_factors(remaining))

    def subs_scale(self, variable, eps_power: int) -> "RationalFn":
        """Substitute ``variable -> variable * eps**eps_power`` exactly."""
        if not eps_power or not self.num.terms:
            return self
        numerator, eps_total = self.num.scale_variable(variable, eps_power)
        factors: dict = {}
        eps_factor = MultiPoly.variable(EPS)
        for factor, exponent in self.den_factors:
            if factor == eps_factor:
                eps_total -= exponent
                continue
            scaled, offset = factor.scale_variable(variable, eps_power)
            eps_total -= offset * exponent
            if scaled.is_monomial():
                ((monomial, value),) = scaled.terms.items()
                for index, power in enumerate(unpack(monomial)):
                    if power:
                        single = MultiPoly.variable(index)
                        factors[single] = factors.get(single, 0) + power * exponent
                if value < 0 and exponent % 2:
                    numerator = -numerator
                continue
            if scaled.leading_coefficient() < 0:
                scaled = -scaled
                if exponent % 2:
                    numerator = -numerator
            factors[scaled] = factors.get(scaled, 0) + exponent
        if eps_total > 0:
            numerator = numerator.shift(unit_monomial(EPS, eps_total))
        elif eps_total < 0:
            factors[eps_factor] = factors.get(eps_factor, 0) - eps_total
        numerator, remaining = _cancel(numerator, _normalize_factors(factors))
        return RationalFn(numerator, _normalize_factors(remaining))

    def substitute(self, mapping: Mapping) -> "RationalFn":
        """Compose with rational functions, ``mapping`` keyed by variable name or index."""
        by_index = {_index(k): RationalFn.coerce(v) for k, v in mapping.items()}
        result = self.num.substitute(by_index)
        for factor, exponent in self.den_factors:
            result = result / factor.substitute(by_index) ** exponent
        return result

    def eps_order(self) -> int:
        return self.num.eps_order() - sum(f.eps_order() * e for f, e in self.den_factors)

    def evaluate(self, point: Mapping) -> Scalar:
        values = {_index(k): _as_scalar(v) for k, v in point.items()}
        denominator: Scalar = 1
        for factor, exponent in self.den_factors:
            value = factor.evaluate(values)
            if not value:
                raise PoleAtPoint(point)
            denominator = denominator * value**exponent
        return _tidy(Fraction(self.num.evaluate(values)) / denominator)

    # -- formatting -------------------------------------------------------

    def __str__(self) -> str:
        numerator = str(self.num)
        if not self.den_factors:
            return numerator
        parts = []
        for factor, exponent in self.den_factors:
            text = str(factor)
            if len(factor.terms) > 1:
                text = f"({text})"
            parts.append(text if exponent == 1 else f"{text}^{exponent}")
        if len(self.num.terms) > 1:
            numerator = f"({numerator})"
        denominator = "*".join(parts)
        if len(parts) > 1:
            denominator = f"({denominator})"
        return f"{numerator}/{denominator}"

    def __repr__(self) -> str:
        return f"RationalFn({self})"


def var(name: str) -> RationalFn:
    """The rational function consisting of a single variable."""
    return RationalFn(MultiPoly.variable(name))


def const(value) -> RationalFn:
    return RationalFn.coerce(_as_scalar(value))


def ratfn_arith(a: RationalFn, b: RationalFn, op: str) -> RationalFn:
    """Apply ``add``, ``sub``, ``mul`` or ``div`` to two rational functions."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown rational-function operation {op!r}")


def eval_at(f: RationalFn, point: Mapping) -> Scalar:
    """Exact value of ``f`` at a point binding every variable that occurs in it."""
    return RationalFn.coerce(f).evaluate(point)


def random_point(rng: random.Random, variables: Iterable[str] = VARIABLES) -> dict:
    """A pseudo-random rational point; parameters ``c`` and ``l`` stay positive."""
    point = {}
    for name in variables:
        value = Fraction(rng.randint(-97, 97), rng.randint(1, 13))
        if name in ("c", "l"):
            value = abs(value) + Fraction(1, 7)
        point[name] = value
    return point


def probably_zero(f: RationalFn, trials: int = 6, seed: int = DEFAULT_SEED) -> bool:
    """Evaluate at seeded random points; False certifies ``f`` is nonzero."""
    rng = random.Random(seed)
    checked = 0
    attempts = 0
    while checked < trials and attempts < 20 * trials:
        attempts += 1
        try:
            value = f.evaluate(random_point(rng))
        except PoleAtPoint:
            continue
        if value:
            return False
        checked += 1
    return True


def is_zero(f, precheck: bool = False, seed: int = DEFAULT_SEED) -> bool:
    """Exact zero test.

    The canonical numerator of a zero rational function is the zero
    polynomial, so the exact decision is structural.  With ``precheck`` a
    cheap random evaluation runs first and may short-circuit to False.
    """
    f = RationalFn.coerce(f)
    if precheck and not probably_zero(f, trials=2, seed=seed):
        return False
    return not f.num.terms


# ---------------------------------------------------------------------------
# Laurent limits in eps


class Verdict:
    FINITE = "Finite"
    ZERO = "Zero"
    DIVERGENT = "Divergent"


@dataclass(frozen=True)
class LaurentLimit:
    """Lowest eps-order of a function (after a prefactor) and its leading coefficient."""

    order: int
    leading: RationalFn
    verdict: str

    def value(self) -> RationalFn:
        """The limit as eps -> 0; raises DivergentLimit when it does not exist."""
        if self.verdict == Verdict.DIVERGENT:
            raise DivergentLimit(self.order)
        if self.verdict == Verdict.ZERO:
            return RationalFn.zero()
        return self.leading


def laurent_limit(f: RationalFn, prefactor_order: int = 0, strict: bool = False) -> LaurentLimit:
    """Leading behaviour of ``eps**prefactor_order * f`` as eps -> 0.

    The identically zero function is reported as Finite with leading term 0.
    With ``strict`` a negative order raises :class:`DivergentLimit`.
    """
    f = RationalFn.coerce(f)
    if not f.num.terms:
        return LaurentLimit(0, RationalFn.zero(), Verdict.FINITE)
    numerator_order = f.num.eps_order()
    leading = RationalFn(f.num.eps_coefficient(numerator_order))
    order = numerator_order + prefactor_order
    for factor, exponent in f.den_factors:
        factor_order = factor.eps_order()
        order -= factor_order * exponent
        coefficient = factor.eps_coefficient(factor_order)
        if coefficient.is_constant():
            leading = leading / coefficient.constant_value() ** exponent
        else:
            leading = leading / RationalFn(coefficient) ** exponent
    if order == 0:
        verdict = Verdict.FINITE
    elif order > 0:
        verdict = Verdict.ZERO
    else:
        verdict = Verdict.DIVERGENT
        if strict:
            raise DivergentLimit(order)
    return LaurentLimit(order, leading, verdict)
