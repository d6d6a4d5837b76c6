"""Primitive generator families as vector fields in the chart x0 = c t.

Spatial indices are lowered with the Minkowski metric, so x_i = -x^i.  The
Euler field is E = x^mu d_mu and the time derivative is d_t = c d/dx0.
"""

from __future__ import annotations

from ..exactnum import RationalFn, var
from ..liefields import VectorField

__all__ = ["FAMILY_SYMBOLS", "SPATIAL_FAMILIES", "generator", "euler_field"]

FAMILY_SYMBOLS = ("H", "H'", "H+", "H-", "P", "P'", "P+", "P-", "K", "Kg", "Kc", "N", "J")
SPATIAL_FAMILIES = ("P", "P'", "P+", "P-", "K", "Kg", "Kc", "N", "J")

_X = tuple(var(f"x{mu}") for mu in range(4))
_C = var("c")
_L = var("l")
_ZERO = RationalFn.zero()


def euler_field() -> VectorField:
    return VectorField(_X)


def _coordinate(mu: int) -> VectorField:
    return VectorField.coordinate(mu)


def _time_family(symbol: str) -> VectorField:
    time_derivative = _coordinate(0) * _C
    drift = euler_field() * (_C * _X[0] / _L**2)
    if symbol == "H":
        return time_derivative
    if symbol == "H'":
        return -drift
    if symbol == "H+":
        return time_derivative - drift
    if symbol == "H-":
        return time_derivative + drift
    raise KeyError(symbol)


def _rotation(index: int) -> VectorField:
    # J_i = -eps_ijk x^j d_k with eps_123 = +1 (the lowered x_j carries the sign).
    j, k = {1: (2, 3), 2: (3, 1), 3: (1, 2)}[index]
    return _coordinate(k) * (-_X[j]) + _coordinate(j) * _X[k]


def _spatial_family(symbol: str, index: int) -> VectorField:
    if index not in (1, 2, 3):
        raise ValueError(f"spatial index must be 1, 2 or 3, got {index}")
    drift = euler_field() * (_X[index] / _L**2)
    translation = _coordinate(index)
    if symbol == "P":
        return translation
    if symbol == "P'":
        return drift
    if symbol == "P+":
        return translation + drift
    if symbol == "P-":
        return translation - drift
    galilei = _coordinate(index) * (_X[0] / _C)
    carroll = _coordinate(0) * (_X[index] / _C)
    if symbol == "K":
        return galilei + carroll
    if symbol == "Kg":
        return galilei
    if symbol == "Kc":
        return carroll
    if symbol == "N":
        return galilei - carroll
    if symbol == "J":
        return _rotation(index)
    raise KeyError(symbol)


def generator(symbol: str, index: int = 0) -> VectorField:
    """The generator ``symbol`` (spatial families need ``index`` in 1..3)."""
    if symbol in ("H", "H'", "H+", "H-"):
        return _time_family(symbol)
    if symbol in SPATIAL_FAMILIES:
        return _spatial_family(symbol, index)
    raise KeyError(f"unknown generator family {symbol!r}")
