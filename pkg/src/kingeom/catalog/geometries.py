"""The 45 geometry rows: metrics, contravariant metrics, connections and domains.

Every connection in the catalog is projectively flat and has the form
Gamma^lam_{mu nu} = delta^lam_mu A_nu + delta^lam_nu A_mu for a covector A,
so each row records its A.  Coordinates are x0 = c t and x1..x3.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..exactnum import RationalFn, var
from ..geometry import (
    Connection,
    DomainCondition,
    Geometry,
    SignatureDescriptor,
    TensorField,
    sample_domain_points,
)

__all__ = ["GEOMETRY_NAMES", "UnknownGeometry", "build_geometry", "projective_connection", "GEOMETRY_DISPLAY"]

DIM = 4
X = tuple(var(f"x{mu}") for mu in range(DIM))
C = var("c")
L = var("l")
ZERO = RationalFn.zero()
ONE = RationalFn.one()

R2 = X[1] ** 2 + X[2] ** 2 + X[3] ** 2
EUCLIDEAN_NORM = X[0] ** 2 + R2
MINKOWSKI_NORM = X[0] ** 2 - R2
ETA = (1, -1, -1, -1)
DELTA = (1, 1, 1, 1)
SPATIAL = (0, 1, 1, 1)
TEMPORAL = (1, 0, 0, 0)


class UnknownGeometry(KeyError):
    """No geometry row has this name."""


# ---------------------------------------------------------------------------
# building blocks


def _diagonal(entries, scale=ONE) -> list[list[RationalFn]]:
    return [[scale * entries[a] if a == b and entries[a] else ZERO for b in range(DIM)] for a in range(DIM)]


def _outer(left, right, scale=ONE) -> list[list[RationalFn]]:
    return [[_product(scale, left[a], right[b]) for b in range(DIM)] for a in range(DIM)]


def _product(*factors) -> RationalFn:
    result = ONE
    for factor in factors:
        factor = RationalFn.coerce(factor)
        if factor.is_zero():
            return ZERO
        result = result * factor
    return result


def _add(*matrices) -> list[list[RationalFn]]:
    return [[sum((m[a][b] for m in matrices), ZERO) for b in range(DIM)] for a in range(DIM)]


def _scaled(matrix, scale) -> list[list[RationalFn]]:
    scale = RationalFn.coerce(scale)
    return [[entry * scale if not entry.is_zero() else entry for entry in row] for row in matrix]


def _lowered(metric_diagonal) -> tuple[RationalFn, ...]:
    return tuple(X[mu] * metric_diagonal[mu] for mu in range(DIM))


def _spatial_position() -> tuple[RationalFn, ...]:
    return (ZERO, X[1], X[2], X[3])


def projective_connection(covector) -> Connection:
    """``Gamma^lam_{mu nu} = delta^lam_mu A_nu + delta^lam_nu A_mu``."""
    covector = [RationalFn.coerce(value) for value in covector]
    table = [[[ZERO] * DIM for _ in range(DIM)] for _ in range(DIM)]
    for lam in range(DIM):
        for mu in range(DIM):
            for nu in range(DIM):
                value = ZERO
                if lam == mu:
                    value = value + covector[nu]
                if lam == nu:
                    value = value + covector[mu]
                table[lam][mu][nu] = value
    return Connection(table)


def _cov(matrix) -> TensorField:
    return TensorField.from_matrix((0, 2), matrix)


def _con(matrix) -> TensorField:
    return TensorField.from_matrix((2, 0), matrix)


# ---------------------------------------------------------------------------
# families


def _beltrami(metric_diagonal, kappa: int, overall: int):
    """Beltrami metric of a (pseudo-)sphere with sigma = 1 - kappa * x.M.x / l^2."""
    quadratic = sum((X[mu] ** 2 * metric_diagonal[mu] for mu in range(DIM)), ZERO)
    cleared = L**2 - quadratic * kappa
    sigma = cleared / L**2
    lowered = _lowered(metric_diagonal)
    g = _scaled(_add(_diagonal(metric_diagonal), _outer(lowered, lowered, kappa / (L**2 * sigma))), overall / sigma)
    h = _scaled(_add(_diagonal(metric_diagonal), _outer(X, X, -kappa / L**2)), sigma * overall)
    covector = [value * kappa / cleared for value in lowered]
    return g, h, covector, cleared


def _second_version(metric_diagonal, g_sign: int, h_sign: int):
    """Degenerate limit of a Beltrami metric as the radius shrinks (E2 and P2 rows)."""
    quadratic = sum((X[mu] ** 2 * metric_diagonal[mu] for mu in range(DIM)), ZERO)
    lowered = _lowered(metric_diagonal)
    g = _scaled(
        _add(_outer(lowered, lowered, ONE), _diagonal(metric_diagonal, -quadratic)),
        L**2 * g_sign / quadratic**2,
    )
    h = _outer(X, X, quadratic * h_sign / L**4)
    covector = [-value / quadratic for value in lowered]
    return g, h, covector, quadratic


def _newton_hooke(branch: int, g_sign: int, h_sign: int):
    """sigma_n = 1 - branch * x0^2 / l^2; rank-1 g over time, conformally flat spatial h."""
    cleared = L**2 - X[0] ** 2 * branch
    sigma = cleared / L**2
    g = _diagonal(TEMPORAL, g_sign / sigma**2)
    h = _diagonal(SPATIAL, sigma * h_sign)
    covector = [X[0] * branch / cleared, ZERO, ZERO, ZERO]
    return g, h, covector, cleared


def _spatial_sphere_metric(g_sign: int):
    """g_N = l^2 (x x - r^2 delta) / r^4 on the spatial block, times g_sign."""
    position = _spatial_position()
    return _scaled(_add(_outer(position, position), _diagonal(SPATIAL, -R2)), L**2 * g_sign / R2**2)


def _radial_connection():
    return [ZERO] + [-X[i] / R2 for i in (1, 2, 3)]


def _newton_hooke_second(g_sign: int, h_sign: int):
    g = _spatial_sphere_metric(g_sign)
    h = _add(_diagonal(TEMPORAL, R2 / L**2), _outer(X, X, R2 * h_sign / L**4))
    return g, h, _radial_connection()


def _hooke_newton(branch: int, g_sign: int, h_sign: int):
    """sigma_3 = 1 + branch * r^2 / l^2; rank-3 spatial Beltrami g, rank-1 h over time."""
    cleared = L**2 + R2 * branch
    sigma = cleared / L**2
    position = _spatial_position()
    g = _scaled(_add(_diagonal(SPATIAL), _outer(position, position, -branch / cleared)), g_sign / sigma)
    h = _diagonal(TEMPORAL, sigma * h_sign)
    covector = [ZERO] + [-X[i] * branch / cleared for i in (1, 2, 3)]
    return g, h, covector, cleared


def _para_flat(spatial_sign: int):
    """E' (spatial_sign=+1) and P' (spatial_sign=-1): flat nondegenerate metrics singular at x0 = 0."""
    cleared = L**2 + R2 * spatial_sign
    g = [[ZERO] * DIM for _ in range(DIM)]
    g[0][0] = L**2 * cleared / X[0] ** 4
    for i in (1, 2, 3):
        g[0][i] = g[i][0] = -(L**2) * X[i] * spatial_sign / X[0] ** 3
        g[i][i] = L**2 * spatial_sign / X[0] ** 2
    h = _add(_outer(X, X, X[0] ** 2 / L**4), _diagonal(SPATIAL, X[0] ** 2 * spatial_sign / L**2))
    return g, h, _time_singular_connection()


def _time_singular_connection():
    return [-1 / X[0], ZERO, ZERO, ZERO]


def _carroll_second(g_sign: int):
    """g = g_sign * l^2 d(x/x0).d(x/x0), h = x0^2 (x x) / l^4."""
    g = [[ZERO] * DIM for _ in range(DIM)]
    g[0][0] = L**2 * R2 * g_sign / X[0] ** 4
    for i in (1, 2, 3):
        g[0][i] = g[i][0] = -(L**2) * X[i] * g_sign / X[0] ** 3
        g[i][i] = L**2 * g_sign / X[0] ** 2
    h = _outer(X, X, X[0] ** 2 / L**4)
    return g, h, _time_singular_connection()


def _para_galilei(g_sign: int):
    g = _diagonal(TEMPORAL, L**4 * g_sign / X[0] ** 4)
    h = _diagonal(SPATIAL, X[0] ** 2 / L**2)
    return g, h, _time_singular_connection()


# ---------------------------------------------------------------------------
# the table


def _positive(poly) -> tuple:
    return ((poly, 1),)


def _negative(poly) -> tuple:
    return ((poly, -1),)


def _rows():
    rows = {}

    def add(name, display, algebra, g, h, covector, domain, ranks, signature, k, free=(), **metadata):
        rows[name] = dict(
            display=display,
            algebra=algebra,
            g=g,
            h=h,
            covector=covector,
            domain=domain,
            ranks=ranks,
            signature=signature,
            k=Fraction(k),
            free=free,
            metadata=metadata,
        )

    for name, display, algebra, metric, kappa, overall, sign, signature, k in (
        ("Riem", "Riem", "r", DELTA, -1, 1, 1, "(+,+,+,+)", -1),
        ("Lob", "Lob", "l", DELTA, 1, 1, 1, "(+,+,+,+)", 1),
        ("LBdS", "LBdS", "l", DELTA, 1, -1, -1, "(-,+,+,+)", -1),
        ("dS", "dS", "d_+", ETA, 1, 1, 1, "(+,-,-,-)", 1),
        ("BdSL", "BdSL", "d_+", ETA, 1, 1, -1, "(+,+,+,+)", 1),
        ("AdS", "AdS", "d_-", ETA, -1, 1, 1, "(+,-,-,-)", -1),
        ("DTdS", "DTdS", "d_-", ETA, -1, -1, -1, "(+,+,-,-)", 1),
    ):
        g, h, covector, cleared = _beltrami(metric, kappa, overall)
        add(name, display, algebra, g, h, covector, ((cleared, sign),), (4, 4), signature, k)

    add("Euc", "Euc", "e", _diagonal(DELTA), _diagonal(DELTA), [ZERO] * 4, (), (4, 4), "(+,+,+,+)", 0)
    add("Min", "Min", "p", _diagonal(ETA), _diagonal(ETA), [ZERO] * 4, (), (4, 4), "(+,-,-,-)", 0)

    for name, display, h_sign, signature in (("E_2", "E₂", 1, "(+,+,+;+)"), ("E_2-", "E₂₋", -1, "(+,+,+;-)")):
        g, h, covector, quadratic = _second_version(DELTA, -1, h_sign)
        add(name, display, "e_2", g, h, covector, _positive(quadratic), (3, 1), signature, -1)

    for name, display, g_sign, h_sign, sign, signature, k in (
        ("P_2+", "P₂₊", 1, 1, -1, "(+,-,-;-)", 1),
        ("P_2-", "P₂₋", -1, 1, 1, "(-,-,-;+)", -1),
        ("EP_2-", "EP₂₋", 1, 1, 1, "(+,+,+;+)", 1),
        ("DTP_2+", "DTP₂₊", 1, -1, -1, "(+,-,-;+)", 1),
    ):
        g, h, covector, quadratic = _second_version(ETA, g_sign, h_sign)
        add(name, display, "p_2", g, h, covector, ((quadratic, sign),), (3, 1), signature, k)

    for name, display, algebra, branch, g_sign, h_sign, sign, signature, k in (
        ("NH_+", "NH₊", "n_+", 1, 1, -1, 1, "(+;-,-,-)", 1),
        ("NH_-", "NH₋", "n_-", -1, 1, -1, 1, "(+;-,-,-)", -1),
        ("ENH_+", "ENH₊", "n_+", 1, 1, 1, 1, "(+;+,+,+)", 1),
        ("ENH_-", "ENH₋", "n_-", -1, 1, 1, 1, "(+;+,+,+)", -1),
        ("NH_+'", "NH₊′", "n_+", 1, -1, -1, -1, "(-;+,+,+)", -1),
        ("ENH_+'", "ENH₊′", "n_+", 1, 1, -1, -1, "(+;+,+,+)", 1),
    ):
        g, h, covector, cleared = _newton_hooke(branch, g_sign, h_sign)
        add(name, display, algebra, g, h, covector, ((cleared, sign),), (1, 3), signature, k)

    for name, display, algebra, g_sign, h_sign, signature, k in (
        ("NH_2", "NH₂", "n_+2", 1, -1, "(-,-;+,-)", 1),
        ("NH_2'", "NH₂′", "n_+2", -1, -1, "(+,+;+,-)", -1),
        ("ENH_2", "ENH₂", "n_-2", -1, 1, "(+,+;+,+)", -1),
        ("DTNH_2", "DTNH₂", "n_-2", 1, 1, "(-,-;+,+)", 1),
    ):
        g, h, covector = _newton_hooke_second(g_sign, h_sign)
        add(name, display, algebra, g, h, covector, _positive(R2), (2, 2), signature, k)

    for name, display, algebra, branch, g_sign, h_sign, sign, signature, k in (
        ("HN_+", "HN₊", "h_+", 1, -1, 1, 1, "(-,-,-;+)", 1),
        ("HN_-", "HN₋", "h_-", -1, -1, 1, 1, "(-,-,-;+)", -1),
        ("EHN_+", "EHN₊", "h_+", 1, 1, 1, 1, "(+,+,+;+)", -1),
        ("EHN_-", "EHN₋", "h_-", -1, 1, 1, 1, "(+,+,+;+)", 1),
        ("HN_-'", "HN₋′", "h_-", -1, -1, -1, -1, "(-,+,+;+)", -1),
        ("DTHN", "DTHN", "h_-", -1, 1, -1, -1, "(+,-,-;+)", 1),
    ):
        g, h, covector, cleared = _hooke_newton(branch, g_sign, h_sign)
        add(name, display, algebra, g, h, covector, ((cleared, sign),), (3, 1), signature, k)

    time_squared = _positive(X[0] ** 2)
    g, h, covector = _para_flat(1)
    add("E'", "E′", "e'", g, h, covector, time_squared, (4, 4), "(+,+,+,+)", 0)
    g, h, covector = _para_flat(-1)
    add("P'", "P′", "p'", g, h, covector, time_squared, (4, 4), "(+,-,-,-)", 0)

    add("G", "G", "g", _diagonal(TEMPORAL), _diagonal(SPATIAL, -ONE), [ZERO] * 4, (), (1, 3), "(+;-,-,-)", 0)
    add("EG", "EG", "g", _diagonal(TEMPORAL), _diagonal(SPATIAL), [ZERO] * 4, (), (1, 3), "(+;+,+,+)", 0)
    add("C", "C", "c", _diagonal(SPATIAL, -ONE), _diagonal(TEMPORAL), [ZERO] * 4, (), (3, 1), "(-,-,-;+)", 0)
    add("EC", "EC", "c", _diagonal(SPATIAL), _diagonal(TEMPORAL), [ZERO] * 4, (), (3, 1), "(+,+,+;+)", 0)

    g, h, covector = _carroll_second(-1)
    add("C_2", "C₂", "c_2", g, h, covector, time_squared, (3, 1), "(-,-,-;+)", 0)
    g, h, covector = _carroll_second(1)
    add("EC_2", "EC₂", "c_2", g, h, covector, time_squared, (3, 1), "(+,+,+;+)", 0)

    radial = _positive(R2)
    galilei_h = _outer(X, X, -R2 / L**4)
    add(
        "EG_2", "EG₂", "g_2", _spatial_sphere_metric(1), galilei_h, _radial_connection(), radial, (2, 1),
        "(-,-;-)", 1, free=(L**2 * X[0] ** 2 / R2,),
    )
    add(
        "G_2", "G₂", "g_2", _spatial_sphere_metric(-1), galilei_h, _radial_connection(), radial, (2, 1),
        "(+,+;-)", -1, free=(L**2 * X[0] ** 2 / R2,),
    )

    g, h, covector = _para_galilei(-1)
    add("G'", "G′", "g'", g, h, covector, time_squared, (1, 3), "(-;+,+,+)", 0)
    g, h, covector = _para_galilei(1)
    add("EG'", "EG′", "g'", g, h, covector, time_squared, (1, 3), "(+;+,+,+)", 0)

    para_galilei_h = _diagonal(TEMPORAL, R2 / L**2)
    add(
        "G_2'", "G₂′", "g'_2", _spatial_sphere_metric(1), para_galilei_h, _radial_connection(), radial, (2, 1),
        "(-,-;+)", 1, free=(L**4 / R2,),
    )
    add(
        "EG_2'", "EG₂′", "g'_2", _spatial_sphere_metric(-1), para_galilei_h, _radial_connection(), radial, (2, 1),
        "(+,+;+)", -1, free=(L**4 / R2,),
    )
    return rows


_ROWS = _rows()
GEOMETRY_NAMES = tuple(_ROWS)
GEOMETRY_DISPLAY = {name: row["display"] for name, row in _ROWS.items()}


@lru_cache(maxsize=None)
def build_geometry(name: str) -> Geometry:
    """The catalog geometry called ``name`` (ASCII alias, e.g. "P_2-", "NH_+'")."""
    row = _ROWS.get(name)
    if row is None:
        raise UnknownGeometry(name)
    domain = tuple(DomainCondition(RationalFn.coerce(poly), sign) for poly, sign in row["domain"])
    geometry = Geometry(
        name=name,
        g=_cov(row["g"]),
        h=_con(row["h"]),
        conn=projective_connection(row["covector"]),
        domain=domain,
        algebra=row["algebra"],
        declared_ranks=row["ranks"],
        declared_signature=SignatureDescriptor.parse(row["signature"]),
        free_parameters=tuple(row["free"]),
        curvature_constant=row["k"],
        metadata={"display": row["display"], **row["metadata"]},
    )
    witness = sample_domain_points(domain, 1)[0]
    return geometry.with_changes(witness=witness)
