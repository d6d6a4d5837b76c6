"""The 22 non-static algebra rows as signed generator sets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..liefields import AlgebraPresentation
from .generators import generator

__all__ = [
    "AlgebraRow",
    "ALGEBRA_ROWS",
    "ALGEBRA_NAMES",
    "KINEMATICAL_NAMES",
    "STATIC_NAMES",
    "UnknownAlgebra",
    "StaticExcluded",
    "build_algebra",
    "presentation_from_slots",
]


class UnknownAlgebra(KeyError):
    """No algebra row has this name."""


class StaticExcluded(KeyError):
    """The static rows need a central extension and are not housed."""


@dataclass(frozen=True)
class AlgebraRow:
    name: str
    display: str
    family: str
    version: int
    time: tuple[int, str]
    translation: tuple[int, str]
    boost: tuple[int, str]
    kinematical: bool


def _slot(entry: str) -> tuple[int, str]:
    return (-1, entry[1:]) if entry.startswith("-") else (1, entry)


def _row(name, display, family, version, time, translation, boost, kinematical=False):
    return AlgebraRow(name, display, family, version, _slot(time), _slot(translation), _slot(boost), kinematical)


ALGEBRA_ROWS = (
    _row("r", "𝔯", "Riemann", 1, "H-", "P+", "N"),
    _row("l", "𝔩", "Lobachevsky", 1, "H+", "P-", "N"),
    _row("d_+", "𝔡₊", "dS", 1, "H+", "P+", "K", True),
    _row("d_-", "𝔡₋", "AdS", 1, "H-", "P-", "K", True),
    _row("n_+", "𝔫₊", "NH+", 1, "H+", "P", "Kg", True),
    _row("n_+2", "𝔫₊₂", "NH+", 2, "H+", "P'", "Kc"),
    _row("n_-", "𝔫₋", "NH-", 1, "H-", "P", "Kg", True),
    _row("n_-2", "𝔫₋₂", "NH-", 2, "-H-", "P'", "Kc"),
    _row("h_+", "𝔥₊", "HN+", 1, "H", "P+", "Kc", True),
    _row("e'", "𝔢′", "HN+", 2, "H'", "P+", "Kg"),
    _row("h_-", "𝔥₋", "HN-", 1, "H", "P-", "Kc", True),
    _row("p'", "𝔭′", "HN-", 2, "-H'", "P-", "Kg"),
    _row("e", "𝔢", "Euclid", 1, "H", "P", "N"),
    _row("e_2", "𝔢₂", "Euclid", 2, "-H'", "P'", "N"),
    _row("p", "𝔭", "Poincare", 1, "H", "P", "K", True),
    _row("p_2", "𝔭₂", "Poincare", 2, "H'", "P'", "K"),
    _row("g", "𝔤", "Galilei", 1, "H", "P", "Kg", True),
    _row("g_2", "𝔤₂", "Galilei", 2, "H'", "P'", "Kc"),
    _row("c", "𝔠", "Carroll", 1, "H", "P", "Kc", True),
    _row("c_2", "𝔠₂", "Carroll", 2, "H'", "P'", "Kg"),
    _row("g'", "𝔤′", "para-Galilei", 1, "H'", "P", "Kg", True),
    _row("g'_2", "𝔤′₂", "para-Galilei", 2, "H", "P'", "Kc"),
)

ALGEBRA_NAMES = tuple(row.name for row in ALGEBRA_ROWS)
KINEMATICAL_NAMES = tuple(row.name for row in ALGEBRA_ROWS if row.kinematical)
STATIC_NAMES = ("s", "s_2")
_ROWS_BY_NAME = {row.name: row for row in ALGEBRA_ROWS}


def _label(sign: int, symbol: str, index: int | None = None) -> str:
    text = ("-" if sign < 0 else "") + symbol
    return text if index is None else f"{text}{index}"


def presentation_from_slots(name: str, time, translation, boost, metadata=None) -> AlgebraPresentation:
    """Assemble (T, P1..P3, B1..B3, J1..J3) from signed family symbols."""
    time_sign, time_symbol = time
    labels = [_label(time_sign, time_symbol)]
    basis = [generator(time_symbol) * time_sign]
    for sign, symbol in (translation, boost, (1, "J")):
        for index in (1, 2, 3):
            labels.append(_label(sign, symbol, index))
            basis.append(generator(symbol, index) * sign)
    return AlgebraPresentation(name, tuple(labels), tuple(basis), dict(metadata or {}))


@lru_cache(maxsize=None)
def build_algebra(name: str) -> AlgebraPresentation:
    """The catalog presentation of an algebra row."""
    if name in STATIC_NAMES:
        raise StaticExcluded(name)
    row = _ROWS_BY_NAME.get(name)
    if row is None:
        raise UnknownAlgebra(name)
    metadata = {
        "display": row.display,
        "family": row.family,
        "version": row.version,
        "kinematical": row.kinematical,
    }
    return presentation_from_slots(row.name, row.time, row.translation, row.boost, metadata)


def algebra_row(name: str) -> AlgebraRow:
    if name in STATIC_NAMES:
        raise StaticExcluded(name)
    try:
        return _ROWS_BY_NAME[name]
    except KeyError:
        raise UnknownAlgebra(name) from None
