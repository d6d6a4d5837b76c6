"""Tensor calculus with exact rational-function components.

A geometry is a triple (g, h, Gamma): a covariant metric, a contravariant
metric and a torsion-free connection, any of which may be degenerate.  All
three are independent inputs; nothing is derived from g alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .exactnum import DEFAULT_SEED, PoleAtPoint, RationalFn, var
from .liefields import COORDINATES, VectorField

__all__ = [
    "TensorField",
    "Connection",
    "DomainCondition",
    "SignatureDescriptor",
    "Geometry",
    "CoordinateMap",
    "DegenerateMetric",
    "InconsistentSignature",
    "PointOutsideDomain",
    "NonInvertibleMap",
    "christoffel_from_metric",
    "metric_inverse",
    "covariant_derivative_metric",
    "covariant_derivative_inverse_metric",
    "compat_check",
    "riemann",
    "ricci",
    "weyl_projective",
    "constant_curvature_tensor",
    "lie_derivative",
    "KillingContext",
    "inertia",
    "matrix_rank",
    "symbolic_rank",
    "signature_rank",
    "sample_domain_points",
    "in_domain",
    "pullback",
    "fractional_linear_map",
    "invariance_failures",
]

DIM = 4
_ZERO = RationalFn.zero()
_ONE = RationalFn.one()


class DegenerateMetric(ArithmeticError):
    """The metric has identically vanishing determinant."""


class InconsistentSignature(ArithmeticError):
    """Rank or inertia differs between domain sample points."""


class PointOutsideDomain(ValueError):
    """A sample point violates a domain inequality."""


class NonInvertibleMap(ValueError):
    """A coordinate map does not compose with its stated inverse to the identity."""


# ---------------------------------------------------------------------------
# tensors


def _flat_index(indices: Sequence[int]) -> int:
    position = 0
    for index in indices:
        position = position * DIM + index
    return position


class TensorField:
    """Dense tensor of valence (contravariant, covariant) with RationalFn components.

    Upper indices come first in ``components``, each index running over 0..3.
    """

    __slots__ = ("valence", "components", "symmetry")

    def __init__(self, valence: tuple[int, int], components: Iterable, symmetry: str = "none"):
        self.valence = tuple(valence)
        self.components = tuple(RationalFn.coerce(value) for value in components)
        self.symmetry = symmetry
        if len(self.components) != DIM ** sum(self.valence):
            raise ValueError("wrong number of tensor components")

    @classmethod
    def zero(cls, valence: tuple[int, int], symmetry: str = "none") -> "TensorField":
        return cls(valence, [_ZERO] * DIM ** sum(valence), symmetry)

    @classmethod
    def from_matrix(cls, valence: tuple[int, int], rows: Sequence[Sequence], symmetry: str | None = None):
        if sum(valence) != 2:
            raise ValueError("from_matrix builds rank-2 tensors")
        if symmetry is None:
            symmetry = "symmetric-covariant" if valence == (0, 2) else "symmetric-contravariant"
        return cls(valence, [RationalFn.coerce(rows[a][b]) for a in range(DIM) for b in range(DIM)], symmetry)

    @property
    def rank(self) -> int:
        return sum(self.valence)

    def __getitem__(self, indices) -> RationalFn:
        if isinstance(indices, int):
            indices = (indices,)
        return self.components[_flat_index(indices)]

    def matrix(self) -> list[list[RationalFn]]:
        if self.rank != 2:
            raise ValueError("matrix() needs a rank-2 tensor")
        return [[self[a, b] for b in range(DIM)] for a in range(DIM)]

    def map(self, function) -> "TensorField":
        return TensorField(self.valence, [function(value) for value in self.components], self.symmetry)

    def __add__(self, other: "TensorField") -> "TensorField":
        return TensorField(self.valence, [a + b for a, b in zip(self.components, other.components)], self.symmetry)

    def __sub__(self, other: "TensorField") -> "TensorField":
        return TensorField(self.valence, [a - b for a, b in zip(self.components, other.components)], self.symmetry)

    def __neg__(self) -> "TensorField":
        return self.map(lambda value: -value)

    def __mul__(self, scalar) -> "TensorField":
        scalar = RationalFn.coerce(scalar)
        return self.map(lambda value: value * scalar if not value.is_zero() else value)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(value.is_zero() for value in self.components)

    def nonzero_indices(self) -> list[tuple[int, ...]]:
        """Multi-indices of components that are not identically zero."""
        return [
            indices
            for indices in product(range(DIM), repeat=self.rank)
            if not self[indices].is_zero()
        ]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorField):
            return NotImplemented
        return self.valence == other.valence and all(a == b for a, b in zip(self.components, other.components))

    __hash__ = None

    def symmetry_holds(self) -> bool:
        if self.symmetry == "none":
            return True
        return all(self[a, b] == self[b, a] for a in range(DIM) for b in range(a + 1, DIM))

    def subs_scale(self, variable: str, eps_power: int) -> "TensorField":
        return self.map(lambda value: value.subs_scale(variable, eps_power))


class Connection:
    """Torsion-free affine connection ``gamma[lam][mu][nu]``."""

    __slots__ = ("gamma",)

    def __init__(self, gamma):
        table = [[[RationalFn.coerce(gamma[lam][mu][nu]) for nu in range(DIM)] for mu in range(DIM)] for lam in range(DIM)]
        self.gamma = tuple(tuple(tuple(row) for row in block) for block in table)

    @classmethod
    def zero(cls) -> "Connection":
        return cls([[[_ZERO] * DIM for _ in range(DIM)] for _ in range(DIM)])

    @classmethod
    def from_tensor(cls, tensor: TensorField) -> "Connection":
        return cls([[[tensor[lam, mu, nu] for nu in range(DIM)] for mu in range(DIM)] for lam in range(DIM)])

    def as_tensor(self) -> TensorField:
        return TensorField((1, 2), [self.gamma[a][b][d] for a in range(DIM) for b in range(DIM) for d in range(DIM)])

    def __getitem__(self, index):
        return self.gamma[index]

    def is_torsion_free(self) -> bool:
        return all(
            self.gamma[lam][mu][nu] == self.gamma[lam][nu][mu]
            for lam in range(DIM)
            for mu in range(DIM)
            for nu in range(mu + 1, DIM)
        )

    def with_entry(self, lam: int, mu: int, nu: int, value) -> "Connection":
        table = [[list(row) for row in block] for block in self.gamma]
        table[lam][mu][nu] = RationalFn.coerce(value)
        table[lam][nu][mu] = RationalFn.coerce(value)
        return Connection(table)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Connection):
            return NotImplemented
        return all(
            self.gamma[a][b][d] == other.gamma[a][b][d] for a in range(DIM) for b in range(DIM) for d in range(DIM)
        )

    __hash__ = None

    def __neg__(self) -> "Connection":
        return Connection([[[-value for value in row] for row in block] for block in self.gamma])

    def subs_scale(self, variable: str, eps_power: int) -> "Connection":
        return Connection(
            [[[value.subs_scale(variable, eps_power) for value in row] for row in block] for block in self.gamma]
        )


# ---------------------------------------------------------------------------
# geometry records


@dataclass(frozen=True)
class DomainCondition:
    """``poly > 0`` when sign is +1, ``poly < 0`` when sign is -1."""

    poly: RationalFn
    sign: int

    def holds(self, point: Mapping) -> bool:
        value = self.poly.evaluate(point)
        return value * self.sign > 0

    def __str__(self) -> str:
        return f"{self.poly} {'>' if self.sign > 0 else '<'} 0"


@dataclass(frozen=True)
class SignatureDescriptor:
    """Inertia of g on its column space, then of h on its column space."""

    g_signs: tuple[str, ...]
    h_signs: tuple[str, ...]

    @classmethod
    def parse(cls, text: str) -> "SignatureDescriptor":
        body = text.strip().strip("()")
        g_part, _, h_part = body.partition(";")
        split = lambda part: tuple(sign.strip() for sign in part.split(",") if sign.strip())
        return cls(split(g_part), split(h_part))

    @classmethod
    def from_counts(cls, g_counts: tuple[int, int], h_counts: tuple[int, int]) -> "SignatureDescriptor":
        return cls(("+",) * g_counts[0] + ("-",) * g_counts[1], ("+",) * h_counts[0] + ("-",) * h_counts[1])

    def counts(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (
            (self.g_signs.count("+"), self.g_signs.count("-")),
            (self.h_signs.count("+"), self.h_signs.count("-")),
        )

    def matches(self, other: "SignatureDescriptor") -> bool:
        return self.counts() == other.counts()

    def __str__(self) -> str:
        return f"({','.join(self.g_signs)};{','.join(self.h_signs)})"


@dataclass(frozen=True)
class Geometry:
    """A catalog geometry: (g, h, Gamma) on a domain cut out by polynomial inequalities."""

    name: str
    g: TensorField
    h: TensorField
    conn: Connection
    domain: tuple[DomainCondition, ...]
    algebra: str
    declared_ranks: tuple[int, int]
    declared_signature: SignatureDescriptor
    free_parameters: tuple[RationalFn, ...] = ()
    curvature_constant: Fraction = Fraction(0)
    witness: Mapping | None = None
    metadata: Mapping = field(default_factory=dict)

    def curvature_scalar(self) -> RationalFn:
        """k as a rational function: curvature_constant * l**-2."""
        return RationalFn.coerce(self.curvature_constant) / var("l") ** 2

    def with_changes(self, **changes) -> "Geometry":
        return replace(self, **changes)


# ---------------------------------------------------------------------------
# matrices over the rational-function field


def _gauss_inverse(matrix: Sequence[Sequence[RationalFn]]) -> list[list[RationalFn]]:
    size = len(matrix)
    work = [list(row) + [_ONE if i == j else _ZERO for j in range(size)] for i, row in enumerate(matrix)]
    for column in range(size):
        pivot = next((r for r in range(column, size) if not work[r][column].is_zero()), None)
        if pivot is None:
            raise DegenerateMetric("metric determinant vanishes identically")
        work[column], work[pivot] = work[pivot], work[column]
        lead = work[column][column]
        work[column] = [value / lead if not value.is_zero() else value for value in work[column]]
        for r in range(size):
            if r != column and not work[r][column].is_zero():
                factor = work[r][column]
                work[r] = [
                    value - factor * pivot_value if not pivot_value.is_zero() else value
                    for value, pivot_value in zip(work[r], work[column])
                ]
    return [row[size:] for row in work]


def metric_inverse(g: TensorField) -> TensorField:
    """Contravariant inverse of a nondegenerate covariant metric."""
    return TensorField.from_matrix((2, 0), _gauss_inverse(g.matrix()))


def symbolic_rank(matrix: Sequence[Sequence[RationalFn]]) -> int:
    """Rank over the field of rational functions."""
    work = [list(row) for row in matrix]
    rows = len(work)
    columns = len(work[0]) if rows else 0
    rank = 0
    for column in range(columns):
        pivot = next((r for r in range(rank, rows) if not work[r][column].is_zero()), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        lead = work[rank][column]
        for r in range(rank + 1, rows):
            if not work[r][column].is_zero():
                factor = work[r][column] / lead
                work[r] = [value - factor * pivot_value for value, pivot_value in zip(work[r], work[rank])]
        rank += 1
    return rank


def inertia(matrix: Sequence[Sequence]) -> tuple[int, int]:
    """(positive, negative) counts of a symmetric rational matrix by congruence."""
    work = [[Fraction(value) for value in row] for row in matrix]
    size = len(work)
    positive = negative = 0
    active = list(range(size))
    while active:
        pivot = next((i for i in active if work[i][i] != 0), None)
        if pivot is None:
            pair = next(((i, j) for i in active for j in active if i != j and work[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # Congruence e_i -> e_i + e_j makes the diagonal entry 2*a_ij nonzero.
            for k in range(size):
                work[i][k] += work[j][k]
            for k in range(size):
                work[k][i] += work[k][j]
            pivot = i
        lead = work[pivot][pivot]
        if lead > 0:
            positive += 1
        else:
            negative += 1
        active.remove(pivot)
        for r in active:
            factor = work[r][pivot] / lead
            if factor:
                for k in active:
                    work[r][k] -= factor * work[pivot][k]
        for r in active:
            work[r][pivot] = work[pivot][r] = Fraction(0)
    return positive, negative


def matrix_rank(matrix: Sequence[Sequence]) -> int:
    positive, negative = inertia(matrix)
    return positive + negative


# ---------------------------------------------------------------------------
# differential operators


def _derivatives(value: RationalFn) -> tuple[RationalFn, ...]:
    if value.is_zero():
        return (_ZERO,) * DIM
    return tuple(value.derivative(name) for name in COORDINATES)


def _sum(terms: Iterable[RationalFn]) -> RationalFn:
    total = _ZERO
    for term in terms:
        if not term.is_zero():
            total = total + term
    return total


def _times(a: RationalFn, b: RationalFn) -> RationalFn:
    if a.is_zero() or b.is_zero():
        return _ZERO
    return a * b


def christoffel_from_metric(g: TensorField) -> Connection:
    """Levi-Civita connection of a nondegenerate metric."""
    inverse = _gauss_inverse(g.matrix())
    derivative = [[_derivatives(g[a, b]) for b in range(DIM)] for a in range(DIM)]
    lowered = [
        [
            [
                (derivative[rho][nu][mu] + derivative[rho][mu][nu] - derivative[mu][nu][rho]) * Fraction(1, 2)
                for nu in range(DIM)
            ]
            for mu in range(DIM)
        ]
        for rho in range(DIM)
    ]
    gamma = [
        [[_sum(_times(inverse[lam][rho], lowered[rho][mu][nu]) for rho in range(DIM)) for nu in range(DIM)] for mu in range(DIM)]
        for lam in range(DIM)
    ]
    return Connection(gamma)


def covariant_derivative_metric(g: TensorField, conn: Connection) -> TensorField:
    """``nabla_lam g_{mu nu}`` stored with index order (lam, mu, nu)."""
    gamma = conn.gamma
    derivative = [[_derivatives(g[a, b]) for b in range(DIM)] for a in range(DIM)]
    values = {}
    for lam in range(DIM):
        for mu in range(DIM):
            for nu in range(mu, DIM):
                total = derivative[mu][nu][lam]
                total = total - _sum(_times(gamma[kappa][lam][nu], g[mu, kappa]) for kappa in range(DIM))
                total = total - _sum(_times(gamma[kappa][lam][mu], g[kappa, nu]) for kappa in range(DIM))
                values[lam, mu, nu] = values[lam, nu, mu] = total
    return TensorField((0, 3), [values[i] for i in product(range(DIM), repeat=3)])


def covariant_derivative_inverse_metric(h: TensorField, conn: Connection) -> TensorField:
    """``nabla_lam h^{mu nu}`` stored with index order (mu, nu, lam)."""
    gamma = conn.gamma
    derivative = [[_derivatives(h[a, b]) for b in range(DIM)] for a in range(DIM)]
    values = {}
    for lam in range(DIM):
        for mu in range(DIM):
            for nu in range(mu, DIM):
                total = derivative[mu][nu][lam]
                total = total + _sum(_times(gamma[nu][lam][kappa], h[mu, kappa]) for kappa in range(DIM))
                total = total + _sum(_times(gamma[mu][lam][kappa], h[kappa, nu]) for kappa in range(DIM))
                values[mu, nu, lam] = values[nu, mu, lam] = total
    return TensorField((2, 1), [values[i] for i in product(range(DIM), repeat=3)])


def compat_check(geo: Geometry) -> bool:
    """True when the connection preserves both g and h."""
    return (
        covariant_derivative_metric(geo.g, geo.conn).is_zero()
        and covariant_derivative_inverse_metric(geo.h, geo.conn).is_zero()
    )


def riemann(conn: Connection) -> TensorField:
    """``R^s_{m r n} = d_r G^s_{mn} - d_n G^s_{mr} + G^s_{tr} G^t_{mn} - G^s_{tn} G^t_{mr}``."""
    gamma = conn.gamma
    derivative = [[[_derivatives(gamma[s][m][n]) for n in range(DIM)] for m in range(DIM)] for s in range(DIM)]
    values = {}
    for s, m in product(range(DIM), repeat=2):
        for r in range(DIM):
            values[s, m, r, r] = _ZERO
            for n in range(r + 1, DIM):
                total = derivative[s][m][n][r] - derivative[s][m][r][n]
                total = total + _sum(_times(gamma[s][t][r], gamma[t][m][n]) for t in range(DIM))
                total = total - _sum(_times(gamma[s][t][n], gamma[t][m][r]) for t in range(DIM))
                values[s, m, r, n] = total
                values[s, m, n, r] = -total
    return TensorField((1, 3), [values[i] for i in product(range(DIM), repeat=4)])


def ricci(curvature: TensorField) -> TensorField:
    """``R_{mn} = R^s_{m n s}``."""
    return TensorField(
        (0, 2),
        [_sum(curvature[s, m, n, s] for s in range(DIM)) for m in range(DIM) for n in range(DIM)],
    )


def weyl_projective(curvature: TensorField, ricci_tensor: TensorField) -> TensorField:
    """``W^l_{m s n} = R^l_{m s n} + (d^l_s R_{mn} - d^l_n R_{ms}) / 3``."""
    values = []
    third = Fraction(1, 3)
    for lam, mu, sig, nu in product(range(DIM), repeat=4):
        total = curvature[lam, mu, sig, nu]
        if lam == sig:
            total = total + ricci_tensor[mu, nu] * third
        if lam == nu:
            total = total - ricci_tensor[mu, sig] * third
        values.append(total)
    return TensorField((1, 3), values)


def constant_curvature_tensor(g: TensorField, k: RationalFn) -> TensorField:
    """``k (d^s_n g_{mr} - d^s_r g_{mn})`` in the index order of :func:`riemann`."""
    values = []
    for s, m, r, n in product(range(DIM), repeat=4):
        total = _ZERO
        if s == n:
            total = total + g[m, r]
        if s == r:
            total = total - g[m, n]
        values.append(_times(k, total))
    return TensorField((1, 3), values)


def _field_jacobian(xi: VectorField) -> list[tuple[RationalFn, ...]]:
    """``jac[lam][mu] = d_mu xi^lam``."""
    return [_derivatives(xi[lam]) for lam in range(DIM)]


def _lie_covariant_2(xi: VectorField, g: TensorField, jac, derivatives=None) -> TensorField:
    values = {}
    for mu in range(DIM):
        for nu in range(mu, DIM):
            grads = derivatives[mu][nu] if derivatives else _derivatives(g[mu, nu])
            total = _sum(_times(grads[lam], xi[lam]) for lam in range(DIM))
            total = total + _sum(_times(g[mu, lam], jac[lam][nu]) for lam in range(DIM))
            total = total + _sum(_times(g[lam, nu], jac[lam][mu]) for lam in range(DIM))
            values[mu, nu] = values[nu, mu] = total
    return TensorField((0, 2), [values[mu, nu] for mu in range(DIM) for nu in range(DIM)], g.symmetry)


def _lie_contravariant_2(xi: VectorField, h: TensorField, jac, derivatives=None) -> TensorField:
    values = {}
    for mu in range(DIM):
        for nu in range(mu, DIM):
            grads = derivatives[mu][nu] if derivatives else _derivatives(h[mu, nu])
            total = _sum(_times(grads[lam], xi[lam]) for lam in range(DIM))
            total = total - _sum(_times(h[mu, lam], jac[nu][lam]) for lam in range(DIM))
            total = total - _sum(_times(h[lam, nu], jac[mu][lam]) for lam in range(DIM))
            values[mu, nu] = values[nu, mu] = total
    return TensorField((2, 0), [values[mu, nu] for mu in range(DIM) for nu in range(DIM)], h.symmetry)


def _lie_connection(xi: VectorField, conn: Connection, jac, derivatives=None) -> Connection:
    gamma = conn.gamma
    second = [[_derivatives(jac[lam][mu]) for mu in range(DIM)] for lam in range(DIM)]
    table = [[[_ZERO] * DIM for _ in range(DIM)] for _ in range(DIM)]
    for lam in range(DIM):
        for mu in range(DIM):
            for nu in range(mu, DIM):
                grads = derivatives[lam][mu][nu] if derivatives else _derivatives(gamma[lam][mu][nu])
                total = second[lam][mu][nu]
                total = total + _sum(_times(xi[rho], grads[rho]) for rho in range(DIM))
                total = total + _sum(_times(gamma[lam][rho][nu], jac[rho][mu]) for rho in range(DIM))
                total = total + _sum(_times(gamma[lam][mu][rho], jac[rho][nu]) for rho in range(DIM))
                total = total - _sum(_times(gamma[rho][mu][nu], jac[lam][rho]) for rho in range(DIM))
                table[lam][mu][nu] = table[lam][nu][mu] = total
    return Connection(table)


def lie_derivative(xi: VectorField, target):
    """Lie derivative of a rank-2 metric (either valence) or of a connection."""
    jac = _field_jacobian(xi)
    if isinstance(target, Connection):
        return _lie_connection(xi, target, jac)
    if isinstance(target, TensorField) and target.valence == (0, 2):
        return _lie_covariant_2(xi, target, jac)
    if isinstance(target, TensorField) and target.valence == (2, 0):
        return _lie_contravariant_2(xi, target, jac)
    raise TypeError("lie_derivative supports (0,2), (2,0) tensors and connections")


class KillingContext:
    """Caches coordinate derivatives of a geometry for repeated Killing checks."""

    def __init__(self, geo: Geometry):
        self.geo = geo
        self.g_derivatives = [[_derivatives(geo.g[a, b]) for b in range(DIM)] for a in range(DIM)]
        self.h_derivatives = [[_derivatives(geo.h[a, b]) for b in range(DIM)] for a in range(DIM)]
        gamma = geo.conn.gamma
        self.gamma_derivatives = [
            [[_derivatives(gamma[a][b][d]) for d in range(DIM)] for b in range(DIM)] for a in range(DIM)
        ]

    def failures(self, xi: VectorField) -> list[str]:
        """Names of the invariants ('g', 'h', 'conn') that xi fails to preserve."""
        jac = _field_jacobian(xi)
        failed = []
        if not _lie_covariant_2(xi, self.geo.g, jac, self.g_derivatives).is_zero():
            failed.append("g")
        if not _lie_contravariant_2(xi, self.geo.h, jac, self.h_derivatives).is_zero():
            failed.append("h")
        lie_conn = _lie_connection(xi, self.geo.conn, jac, self.gamma_derivatives)
        if not all(value.is_zero() for block in lie_conn.gamma for row in block for value in row):
            failed.append("conn")
        return failed


# ---------------------------------------------------------------------------
# domains, sampling, signatures


def in_domain(geo_or_domain, point: Mapping) -> bool:
    domain = geo_or_domain.domain if isinstance(geo_or_domain, Geometry) else geo_or_domain
    try:
        return all(condition.holds(point) for condition in domain)
    except PoleAtPoint:
        return False


def _candidate_point(rng: random.Random) -> dict:
    point = {}
    for name in COORDINATES:
        point[name] = Fraction(rng.randint(-60, 60), rng.randint(1, 9))
    point["c"] = Fraction(rng.randint(1, 40), rng.randint(1, 9))
    point["l"] = Fraction(rng.randint(1, 40), rng.randint(1, 9))
    return point


def sample_domain_points(
    domain: Sequence[DomainCondition], count: int = 5, seed: int = DEFAULT_SEED, require: Sequence = ()
) -> list[dict]:
    """Deterministic pseudo-random points satisfying every condition.

    ``require`` lists rational functions that must be finite and nonzero at
    the sample (used to avoid poles of tensor components).
    """
    rng = random.Random(seed)
    points = []
    attempts = 0
    while len(points) < count:
        attempts += 1
        if attempts > 20000 * count:
            raise PointOutsideDomain("could not find enough domain sample points")
        point = _candidate_point(rng)
        if not in_domain(domain, point):
            continue
        try:
            if any(not RationalFn.coerce(value).evaluate(point) for value in require):
                continue
        except PoleAtPoint:
            continue
        points.append(point)
    return points


def _evaluate_matrix(tensor: TensorField, point: Mapping) -> list[list[Fraction]]:
    return [[tensor[a, b].evaluate(point) for b in range(DIM)] for a in range(DIM)]


def _domain_denominators(geo: Geometry) -> list[RationalFn]:
    polys = []
    for tensor in (geo.g, geo.h):
        for value in tensor.components:
            for factor, _ in value.den_factors:
                polys.append(RationalFn(factor))
    return polys


def signature_rank(geo: Geometry, points: Sequence[Mapping] | None = None, count: int = 5, seed: int = DEFAULT_SEED):
    """Common ranks and inertia of (g, h) over domain sample points."""
    if points is None:
        points = sample_domain_points(geo.domain, count, seed, require=_domain_denominators(geo))
    results = set()
    for point in points:
        if not in_domain(geo, point):
            raise PointOutsideDomain(f"{dict(point)} is outside the domain of {geo.name}")
        g_counts = inertia(_evaluate_matrix(geo.g, point))
        h_counts = inertia(_evaluate_matrix(geo.h, point))
        results.add((g_counts, h_counts))
    if len(results) != 1:
        raise InconsistentSignature(f"{geo.name}: inertia varies across samples: {sorted(results)}")
    (g_counts, h_counts), = results
    ranks = (sum(g_counts), sum(h_counts))
    if ranks == (DIM, DIM):
        # nondegenerate: h is the inverse of g and carries no extra information
        h_counts = (0, 0)
    return ranks, SignatureDescriptor.from_counts(g_counts, h_counts)


# ---------------------------------------------------------------------------
# coordinate maps


@dataclass(frozen=True)
class CoordinateMap:
    """A rational map y = forward(x) together with its rational inverse."""

    forward: tuple[RationalFn, ...]
    inverse: tuple[RationalFn, ...]
    name: str = "map"

    def substitution(self, components: Sequence[RationalFn]) -> dict:
        return {COORDINATES[mu]: components[mu] for mu in range(DIM)}

    def check_inverse(self) -> None:
        forward = self.substitution(self.forward)
        for mu in range(DIM):
            if not self.inverse[mu].substitute(forward) == var(COORDINATES[mu]):
                raise NonInvertibleMap(f"{self.name}: inverse does not undo component {mu}")

    def jacobian(self) -> list[list[RationalFn]]:
        """``J[alpha][mu] = d forward^alpha / d x^mu``."""
        return [list(_derivatives(self.forward[alpha])) for alpha in range(DIM)]

    def inverse_jacobian_at_image(self) -> list[list[RationalFn]]:
        """``K[mu][alpha] = (d inverse^mu / d y^alpha)`` evaluated at y = forward(x)."""
        forward = self.substitution(self.forward)
        return [[derivative.substitute(forward) for derivative in _derivatives(self.inverse[mu])] for mu in range(DIM)]


def _substituted(value: RationalFn, substitution: Mapping, cache: dict) -> RationalFn:
    if value.is_zero() or not any(name in substitution for name in value.variables()):
        return value
    key = str(value)
    if key not in cache:
        cache[key] = value.substitute(substitution)
    return cache[key]


def pullback(mapping: CoordinateMap, geo: Geometry, name: str | None = None) -> Geometry:
    """Transport (g, h, Gamma, domain) through ``mapping`` by the tensor transformation laws."""
    mapping.check_inverse()
    jac = mapping.jacobian()
    inverse_jac = mapping.inverse_jacobian_at_image()
    if symbolic_rank(jac) < DIM:
        raise NonInvertibleMap(f"{mapping.name}: Jacobian is singular")
    substitution = mapping.substitution(mapping.forward)
    cache: dict = {}
    g_image = [[_substituted(geo.g[a, b], substitution, cache) for b in range(DIM)] for a in range(DIM)]
    h_image = [[_substituted(geo.h[a, b], substitution, cache) for b in range(DIM)] for a in range(DIM)]
    gamma_image = [
        [[_substituted(geo.conn.gamma[a][b][d], substitution, cache) for d in range(DIM)] for b in range(DIM)]
        for a in range(DIM)
    ]
    g_rows = [
        [
            _sum(
                _times(jac[alpha][mu], _times(g_image[alpha][beta], jac[beta][nu]))
                for alpha in range(DIM)
                for beta in range(DIM)
            )
            for nu in range(DIM)
        ]
        for mu in range(DIM)
    ]
    h_rows = [
        [
            _sum(
                _times(inverse_jac[mu][alpha], _times(h_image[alpha][beta], inverse_jac[nu][beta]))
                for alpha in range(DIM)
                for beta in range(DIM)
            )
            for nu in range(DIM)
        ]
        for mu in range(DIM)
    ]
    hessian = [[[_derivatives(jac[alpha][mu])[nu] for nu in range(DIM)] for mu in range(DIM)] for alpha in range(DIM)]
    inner = [
        [
            [
                hessian[alpha][mu][nu]
                + _sum(
                    _times(gamma_image[alpha][beta][delta], _times(jac[beta][mu], jac[delta][nu]))
                    for beta in range(DIM)
                    for delta in range(DIM)
                )
                for nu in range(DIM)
            ]
            for mu in range(DIM)
        ]
        for alpha in range(DIM)
    ]
    gamma_rows = [
        [[_sum(_times(inverse_jac[lam][alpha], inner[alpha][mu][nu]) for alpha in range(DIM)) for nu in range(DIM)] for mu in range(DIM)]
        for lam in range(DIM)
    ]
    domain = []
    for condition in geo.domain:
        image = condition.poly.substitute(substitution)
        domain.append(DomainCondition(RationalFn(image.num * image.den), condition.sign))
    return replace(
        geo,
        name=name or f"{geo.name}~{mapping.name}",
        g=TensorField.from_matrix((0, 2), g_rows),
        h=TensorField.from_matrix((2, 0), h_rows),
        conn=Connection(gamma_rows),
        domain=tuple(domain),
        free_parameters=tuple(value.substitute(substitution) for value in geo.free_parameters),
        witness=None,
    )


def fractional_linear_map(matrix: Sequence[Sequence], shift: Sequence, name: str = "fractional-linear") -> CoordinateMap:
    """``x' = S x / (1 + b.x / l)`` with a constant invertible ``S`` and covector ``b``.

    The inverse is ``x = S^-1 x' / (1 - b.S^-1 x' / l)``.
    """
    coordinates = [var(coordinate) for coordinate in COORDINATES]
    length = var("l")
    rows = [[RationalFn.coerce(value) for value in row] for row in matrix]
    covector = [RationalFn.coerce(value) for value in shift]

    def linear(square):
        return [_sum(_times(square[a][b], coordinates[b]) for b in range(DIM)) for a in range(DIM)]

    def pairing(vector):
        return _sum(_times(covector[a], vector[a]) for a in range(DIM)) / length

    forward_linear = linear(rows)
    forward_scale = 1 + pairing(coordinates)
    try:
        inverse_linear = linear(_gauss_inverse(rows))
    except DegenerateMetric:
        raise NonInvertibleMap(f"{name}: the linear part is singular") from None
    inverse_scale = 1 - pairing(inverse_linear)
    return CoordinateMap(
        tuple(value / forward_scale for value in forward_linear),
        tuple(value / inverse_scale for value in inverse_linear),
        name,
    )


def invariance_failures(mapping: CoordinateMap, geo: Geometry) -> list[str]:
    """Components where the pullback of ``geo`` differs from ``geo`` itself."""
    image = pullback(mapping, geo)
    problems = []
    for label, mine, theirs in (("g", image.g, geo.g), ("h", image.h, geo.h), ("Gamma", image.conn.as_tensor(), geo.conn.as_tensor())):
        for indices in (mine - theirs).nonzero_indices():
            problems.append(f"{label}{list(indices)}")
    return problems
