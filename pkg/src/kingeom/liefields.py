"""Polynomial vector fields on the 4d chart, Lie brackets and closure.

Components are rational functions whose denominators only involve the
parameters c and l, so each component is a polynomial in x0..x3 with
coefficients in Q(c, l).  Closure is decided by expressing every bracket in
the basis through exact Gaussian elimination over Q(c, l).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .exactnum import MultiPoly, RationalFn, VARIABLE_INDEX, exponent_of, unit_monomial

__all__ = [
    "COORDINATES",
    "VectorField",
    "AlgebraPresentation",
    "StructureConstants",
    "Involution",
    "NotClosed",
    "DependentBasis",
    "lie_bracket",
    "closure",
    "apply_involution",
    "is_automorphism",
    "jacobi_check",
    "rotations_close",
    "PARITY",
    "TIME_REVERSAL",
    "COMPOSITE",
    "IDENTITY",
]

COORDINATES = ("x0", "x1", "x2", "x3")
_COORDINATE_MASK = sum(unit_monomial(VARIABLE_INDEX[name], 0xFFFF) for name in COORDINATES)


class NotClosed(ArithmeticError):
    """A bracket of two basis elements leaves the span of the basis."""

    def __init__(self, pair: tuple[str, str], residual: "VectorField"):
        super().__init__(f"[{pair[0]}, {pair[1]}] is not in the span; residual {residual}")
        self.pair = pair
        self.residual = residual


class DependentBasis(ArithmeticError):
    """The proposed basis is linearly dependent over Q(c, l)."""


def _coerce_components(components: Iterable) -> tuple[RationalFn, ...]:
    values = tuple(RationalFn.coerce(component) for component in components)
    if len(values) != 4:
        raise ValueError("a vector field has exactly 4 components")
    return values


class VectorField:
    """``sum_mu components[mu] * d/dx^mu`` with exact rational-function coefficients."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable):
        self.components = _coerce_components(components)

    @classmethod
    def zero(cls) -> "VectorField":
        return cls([RationalFn.zero()] * 4)

    @classmethod
    def coordinate(cls, index: int) -> "VectorField":
        return cls([RationalFn.one() if mu == index else RationalFn.zero() for mu in range(4)])

    def __getitem__(self, index: int) -> RationalFn:
        return self.components[index]

    def __iter__(self):
        return iter(self.components)

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(a + b for a, b in zip(self.components, other.components))

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField(a - b for a, b in zip(self.components, other.components))

    def __neg__(self) -> "VectorField":
        return VectorField(-a for a in self.components)

    def __mul__(self, scalar) -> "VectorField":
        scalar = RationalFn.coerce(scalar)
        return VectorField(scalar * a for a in self.components)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return all(a == b for a, b in zip(self.components, other.components))

    __hash__ = None

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.components)

    def apply(self, function: RationalFn) -> RationalFn:
        """Directional derivative ``X(f)``."""
        total = RationalFn.zero()
        for mu, component in enumerate(self.components):
            if not component.is_zero():
                total = total + component * function.derivative(COORDINATES[mu])
        return total

    def coordinate_degree(self) -> int:
        """Largest total degree in x0..x3 over all numerators."""
        degree = 0
        for component in self.components:
            for monomial in component.num.terms:
                degree = max(degree, sum(exponent_of(monomial, VARIABLE_INDEX[n]) for n in COORDINATES))
        return degree

    def subs_scale(self, variable: str, eps_power: int) -> "VectorField":
        return VectorField(component.subs_scale(variable, eps_power) for component in self.components)

    def __str__(self) -> str:
        parts = []
        for mu, component in enumerate(self.components):
            if not component.is_zero():
                parts.append(f"({component})*d{COORDINATES[mu]}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"VectorField({self})"


def lie_bracket(first: VectorField, second: VectorField) -> VectorField:
    """``[X, Y]^mu = X^nu d_nu Y^mu - Y^nu d_nu X^mu``."""
    return VectorField(first.apply(second[mu]) - second.apply(first[mu]) for mu in range(4))


# ---------------------------------------------------------------------------
# algebras


@dataclass(frozen=True)
class AlgebraPresentation:
    """A named basis of 10 vector fields ordered (time, 3 translations, 3 boosts, 3 rotations)."""

    name: str
    labels: tuple[str, ...]
    basis: tuple[VectorField, ...]
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.basis) != 10 or len(self.labels) != 10:
            raise ValueError(f"algebra {self.name} must have exactly 10 basis elements")

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraPresentation):
            return NotImplemented
        return all(a == b for a, b in zip(self.basis, other.basis))

    __hash__ = None


@dataclass(frozen=True)
class StructureConstants:
    """``[e_a, e_b] = sum_k constants[a][b][k] e_k``."""

    labels: tuple[str, ...]
    constants: tuple

    def __getitem__(self, index):
        return self.constants[index]

    @property
    def dimension(self) -> int:
        return len(self.constants)

    def perturbed(self, a: int, b: int, k: int, amount=1) -> "StructureConstants":
        """A copy with one entry shifted (used for fault injection)."""
        table = [[list(row) for row in block] for block in self.constants]
        table[a][b][k] = table[a][b][k] + amount
        return StructureConstants(self.labels, tuple(tuple(tuple(row) for row in block) for block in table))


def _coefficient_rows(fieldvalue: VectorField) -> dict:
    """Split a field into coefficients over Q(c, l) keyed by (component, x-monomial)."""
    rows = {}
    for mu, component in enumerate(fieldvalue.components):
        grouped: dict = {}
        for monomial, value in component.num.terms.items():
            x_part = monomial & _COORDINATE_MASK
            grouped.setdefault(x_part, {})[monomial - x_part] = value
        for x_part, terms in grouped.items():
            coefficient = RationalFn(MultiPoly(terms), component.den_factors)
            rows[(mu, x_part)] = coefficient
    return rows


def _check_parameter_denominators(fieldvalue: VectorField, label: str) -> None:
    for component in fieldvalue.components:
        for factor, _ in component.den_factors:
            if any(monomial & _COORDINATE_MASK for monomial in factor.terms):
                raise ValueError(f"{label} has a coordinate-dependent denominator")


def express_in_basis(basis: Sequence[VectorField], targets: Sequence[VectorField]) -> list:
    """Coordinates of each target in the basis (None for targets outside the span).

    Raises DependentBasis when the basis is not linearly independent.
    """
    size = len(basis)
    basis_rows = [_coefficient_rows(element) for element in basis]
    target_rows = [_coefficient_rows(target) for target in targets]
    keys = set()
    for rows in basis_rows + target_rows:
        keys.update(rows)
    zero = RationalFn.zero()
    matrix = []
    for key in sorted(keys):
        row = [rows.get(key, zero) for rows in basis_rows] + [rows.get(key, zero) for rows in target_rows]
        matrix.append(row)
    pivots = []
    rank = 0
    for column in range(size):
        pivot = next((r for r in range(rank, len(matrix)) if not matrix[r][column].is_zero()), None)
        if pivot is None:
            raise DependentBasis(f"basis element {column} depends on the others")
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        lead = matrix[rank][column]
        matrix[rank] = [entry / lead if not entry.is_zero() else entry for entry in matrix[rank]]
        for r in range(len(matrix)):
            if r != rank and not matrix[r][column].is_zero():
                factor = matrix[r][column]
                matrix[r] = [
                    entry - factor * pivot_entry if not pivot_entry.is_zero() else entry
                    for entry, pivot_entry in zip(matrix[r], matrix[rank])
                ]
        pivots.append(column)
        rank += 1
    solutions = []
    for index in range(len(targets)):
        column = size + index
        if any(not matrix[r][column].is_zero() for r in range(rank, len(matrix))):
            solutions.append(None)
        else:
            solutions.append([matrix[r][column] for r in range(size)])
    return solutions


def closure(algebra: AlgebraPresentation) -> StructureConstants:
    """Structure constants of the basis, or NotClosed / DependentBasis."""
    for label, element in zip(algebra.labels, algebra.basis):
        _check_parameter_denominators(element, label)
    pairs = list(combinations(range(10), 2))
    brackets = [lie_bracket(algebra.basis[a], algebra.basis[b]) for a, b in pairs]
    solutions = express_in_basis(algebra.basis, brackets)
    zero = RationalFn.zero()
    table = [[[zero] * 10 for _ in range(10)] for _ in range(10)]
    for (a, b), bracket, solution in zip(pairs, brackets, solutions):
        if solution is None:
            raise NotClosed((algebra.labels[a], algebra.labels[b]), bracket)
        for k, value in enumerate(solution):
            table[a][b][k] = value
            table[b][a][k] = -value
    return StructureConstants(
        algebra.labels, tuple(tuple(tuple(row) for row in block) for block in table)
    )


def jacobi_check(constants: StructureConstants) -> bool:
    """True when the Jacobi sum vanishes for every index triple (and antisymmetry holds)."""
    size = constants.dimension
    table = constants.constants
    for a in range(size):
        for b in range(size):
            for k in range(size):
                if not (table[a][b][k] + table[b][a][k]).is_zero():
                    return False
    for a, b, d in combinations(range(size), 3):
        for k in range(size):
            total = RationalFn.zero()
            for m in range(size):
                for x, y, z in ((a, b, d), (b, d, a), (d, a, b)):
                    left = table[x][y][m]
                    if left.is_zero():
                        continue
                    right = table[m][z][k]
                    if not right.is_zero():
                        total = total + left * right
            if not total.is_zero():
                return False
    return True


def rotations_close(constants: StructureConstants) -> bool:
    """The last three basis elements close among themselves like so(3)."""
    rotation_slots = (7, 8, 9)
    for a, b in combinations(rotation_slots, 2):
        for k in range(constants.dimension):
            if k not in rotation_slots and not constants[a][b][k].is_zero():
                return False
        third = next(s for s in rotation_slots if s not in (a, b))
        if constants[a][b][third].is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# involutions


@dataclass(frozen=True)
class Involution:
    """A signed permutation of the 10 basis slots: ``e_a -> signs[a] * e_{permutation[a]}``."""

    kind: str
    permutation: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        for slot in range(len(self.permutation)):
            image = self.permutation[slot]
            if self.permutation[image] != slot or self.signs[slot] * self.signs[image] != 1:
                raise ValueError(f"{self.kind} is not an involution")


def _block_involution(kind: str, time: int, translation: int, boost: int, rotation: int) -> Involution:
    signs = (time,) + (translation,) * 3 + (boost,) * 3 + (rotation,) * 3
    return Involution(kind, tuple(range(10)), signs)


PARITY = _block_involution("Parity", 1, -1, -1, 1)
TIME_REVERSAL = _block_involution("TimeReversal", -1, 1, -1, 1)
COMPOSITE = _block_involution("Composite", -1, -1, 1, 1)
IDENTITY = _block_involution("Identity", 1, 1, 1, 1)


def apply_involution(algebra: AlgebraPresentation, involution: Involution) -> AlgebraPresentation:
    """The basis ``signs[a] * e_{permutation[a]}`` in the original slot order."""
    basis = tuple(
        algebra.basis[involution.permutation[a]] * involution.signs[a] for a in range(10)
    )
    return AlgebraPresentation(
        f"{algebra.name}~{involution.kind}", algebra.labels, basis, dict(algebra.metadata)
    )


def is_automorphism(
    algebra: AlgebraPresentation, involution: Involution, constants: StructureConstants | None = None
) -> bool:
    """``c_ab^k s_k == s_a s_b c_{pa pb}^{pk}`` for all slots."""
    table = (constants or closure(algebra)).constants
    perm, signs = involution.permutation, involution.signs
    for a in range(10):
        for b in range(10):
            for k in range(10):
                left = table[a][b][k] * signs[k]
                right = table[perm[a]][perm[b]][perm[k]] * (signs[a] * signs[b])
                if not (left - right).is_zero():
                    return False
    return True
