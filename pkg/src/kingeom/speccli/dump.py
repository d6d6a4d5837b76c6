"""Canonical serialization of the built-in catalog (the golden-file format)."""

from __future__ import annotations

import json

from ..catalog.algebras import ALGEBRA_NAMES, STATIC_NAMES, build_algebra
from ..catalog.geometries import GEOMETRY_NAMES, build_geometry
from ..geometry import Geometry
from ..liefields import AlgebraPresentation

__all__ = ["algebra_record", "geometry_record", "catalog_record", "dump_catalog", "show"]

CATALOG_NOTE = (
    "22 algebras are housed; the two static generator sets need a central "
    "extension and are excluded, so 24 listed generator sets give 22 rows"
)


def _components(tensor, symmetric: bool) -> dict:
    entries = {}
    for indices in tensor.nonzero_indices():
        if symmetric and indices[-2] > indices[-1]:
            continue
        entries["".join(str(index) for index in indices)] = str(tensor[indices])
    return entries


def algebra_record(algebra: AlgebraPresentation) -> dict:
    return {
        "name": algebra.name,
        "basis": [
            {"label": label, "components": [str(value) for value in field.components]}
            for label, field in zip(algebra.labels, algebra.basis)
        ],
    }


def geometry_record(geometry: Geometry) -> dict:
    return {
        "name": geometry.name,
        "display": geometry.metadata.get("display", geometry.name),
        "algebra": geometry.algebra,
        "g": _components(geometry.g, True),
        "h": _components(geometry.h, True),
        "gamma": _components(geometry.conn.as_tensor(), True),
        "domain": [str(condition) for condition in geometry.domain],
        "ranks": list(geometry.declared_ranks) if geometry.declared_ranks else None,
        "signature": str(geometry.declared_signature) if geometry.declared_signature else None,
        "curvature": f"{geometry.curvature_constant}/l^2" if geometry.curvature_constant is not None else None,
        "free_parameters": [str(value) for value in geometry.free_parameters],
    }


def catalog_record() -> dict:
    return {
        "note": CATALOG_NOTE,
        "excluded": list(STATIC_NAMES),
        "algebras": [algebra_record(build_algebra(name)) for name in ALGEBRA_NAMES],
        "geometries": [geometry_record(build_geometry(name)) for name in GEOMETRY_NAMES],
    }


def _text_lines(record: dict, indent: str = "") -> list[str]:
    lines = []
    for key, value in record.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_text_lines(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for item in value:
                lines.append(f"{indent}{key} {item.get('name') or item.get('label')}:")
                lines.extend(_text_lines({k: v for k, v in item.items() if k not in ("name", "label")}, indent + "  "))
        else:
            shown = ", ".join(map(str, value)) if isinstance(value, list) else value
            lines.append(f"{indent}{key}: {shown}")
    return lines


def _render(record: dict, format: str) -> str:
    if format == "json":
        return json.dumps(record, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if format == "text":
        return "\n".join(_text_lines(record)) + "\n"
    raise ValueError(f"unknown format {format!r}")


def dump_catalog(format: str = "json") -> str:
    return _render(catalog_record(), format)


def show(kind: str, name: str, lookup_algebra=build_algebra, lookup_geometry=build_geometry, format: str = "text") -> str:
    if kind == "algebra":
        record = algebra_record(lookup_algebra(name))
    elif kind == "geometry":
        record = geometry_record(lookup_geometry(name))
    else:
        raise ValueError(f"show takes 'algebra' or 'geometry', not {kind!r}")
    return _render(record, format)
