"""Canonical printing of spec documents and their conversion into catalog objects."""

from __future__ import annotations

from ..catalog.algebras import presentation_from_slots
from ..catalog.generators import generator
from ..contraction import ContractionRecipe, Scale
from ..exactnum import RationalFn
from ..geometry import Connection, DomainCondition, Geometry, SignatureDescriptor, TensorField, sample_domain_points
from ..liefields import AlgebraPresentation, VectorField
from ..catalog.tables import DualityPair
from ..suites import Catalog
from .parser import AlgebraDecl, DualDecl, GeometryDecl, RecipeDecl, ScaleDecl, Slot, SpecDocument

__all__ = [
    "format_spec",
    "build_declared_algebra",
    "build_declared_geometry",
    "declaration_from_geometry",
    "merge_into_catalog",
]

DIM = 4


# ---------------------------------------------------------------------------
# printing


def _slot_text(slot: Slot) -> str:
    if slot.family is not None:
        return ("-" if slot.sign < 0 else "") + slot.family
    fields = " | ".join(", ".join(str(value) for value in field) for field in slot.fields)
    return f"expr({fields})"


def _scale_text(scale: ScaleDecl) -> str:
    factors = []
    if scale.c_order:
        factors.append(f"(c_r/c)^{scale.c_order}")
    if scale.l_order:
        factors.append(f"(l_r/l)^{scale.l_order}")
    return ("-" if scale.sign < 0 else "") + (" * ".join(factors) or "1")


def _format_algebra(declaration: AlgebraDecl) -> list[str]:
    return [
        f"algebra {declaration.name} {{",
        f"  time {_slot_text(declaration.time)};",
        f"  trans {_slot_text(declaration.translation)};",
        f"  boost {_slot_text(declaration.boost)};",
        "  rot J;",
        "}",
    ]


def _format_geometry(declaration: GeometryDecl) -> list[str]:
    lines = [f"geometry {declaration.name} {{", f"  algebra {declaration.algebra};"]
    for label, entries in (("g", declaration.g), ("h", declaration.h), ("gamma", declaration.gamma)):
        for indices, value in entries:
            if indices[-2] <= indices[-1]:
                lines.append(f"  {label}{''.join(f'[{i}]' for i in indices)} = {value};")
    for poly, sign in declaration.domain:
        lines.append(f"  domain {poly} {'>' if sign > 0 else '<'} 0;")
    if declaration.ranks is not None:
        lines.append(f"  ranks {declaration.ranks[0]}, {declaration.ranks[1]};")
    if declaration.signature is not None:
        lines.append(f'  signature "{declaration.signature}";')
    if declaration.curvature is not None:
        lines.append(f"  curvature {declaration.curvature};")
    lines.append("}")
    return lines


def _format_recipe(declaration: RecipeDecl) -> list[str]:
    arrow = f" -> {declaration.target}" if declaration.target is not None else ""
    lines = [f"contract {declaration.source}{arrow} {{", f"  rule {declaration.rule};"]
    for slot, scale in declaration.scales:
        lines.append(f"  scale {slot} = {_scale_text(scale)};")
    lines.append(f"  expect {declaration.expected};")
    if declaration.pre is not None:
        lines.append(f"  pre {declaration.pre};")
    lines.append("}")
    return lines


def _format_dual(declaration: DualDecl) -> list[str]:
    signs = "".join(f" sign {which}=-1" for which, sign in (("g", declaration.g_sign), ("h", declaration.h_sign)) if sign < 0)
    return [f"dual {declaration.left} <-> {declaration.right}{signs};"]


def format_spec(document: SpecDocument) -> str:
    """Canonical text; parsing it gives back an equal document."""
    formatters = {AlgebraDecl: _format_algebra, GeometryDecl: _format_geometry, RecipeDecl: _format_recipe, DualDecl: _format_dual}
    blocks = ["\n".join(formatters[type(declaration)](declaration)) for declaration in document.declarations]
    return "\n\n".join(blocks) + ("\n" if blocks else "")


# ---------------------------------------------------------------------------
# building


def _slot_fields(slot: Slot, spatial: bool) -> list[VectorField]:
    if slot.family is not None:
        indices = (1, 2, 3) if spatial else (0,)
        return [generator(slot.family, index) * slot.sign for index in indices]
    return [VectorField(field) for field in slot.fields]


def build_declared_algebra(declaration: AlgebraDecl) -> AlgebraPresentation:
    slots = (declaration.time, declaration.translation, declaration.boost)
    if all(slot.family is not None for slot in slots):
        signed = [(slot.sign, slot.family) for slot in slots]
        return presentation_from_slots(declaration.name, *signed, metadata={"declared": True})
    basis = _slot_fields(declaration.time, False)
    labels = ["T"]
    for prefix, slot in (("P", declaration.translation), ("B", declaration.boost)):
        basis.extend(_slot_fields(slot, True))
        labels.extend(f"{prefix}{index}" for index in (1, 2, 3))
    basis.extend(generator("J", index) for index in (1, 2, 3))
    labels.extend(f"J{index}" for index in (1, 2, 3))
    return AlgebraPresentation(declaration.name, tuple(labels), tuple(basis), {"declared": True})


def _tensor(valence, entries) -> TensorField:
    values = [RationalFn.zero()] * DIM ** sum(valence)
    for indices, value in entries:
        flat = 0
        for index in indices:
            flat = flat * DIM + index
        values[flat] = value
    return TensorField(valence, values)


def build_declared_geometry(declaration: GeometryDecl) -> Geometry:
    domain = tuple(DomainCondition(poly, sign) for poly, sign in declaration.domain)
    geometry = Geometry(
        name=declaration.name,
        g=_tensor((0, 2), declaration.g),
        h=_tensor((2, 0), declaration.h),
        conn=Connection.from_tensor(_tensor((1, 2), declaration.gamma)),
        domain=domain,
        algebra=declaration.algebra,
        declared_ranks=declaration.ranks,
        declared_signature=SignatureDescriptor.parse(declaration.signature) if declaration.signature else None,
        curvature_constant=declaration.curvature,
        metadata={"declared": True},
    )
    return geometry.with_changes(witness=sample_domain_points(domain, 1)[0])


def declaration_from_geometry(geometry: Geometry, name: str | None = None) -> GeometryDecl:
    """A spec declaration reproducing ``geometry`` (used to export catalog rows)."""

    def entries(tensor):
        return tuple((tuple(indices), tensor[indices]) for indices in tensor.nonzero_indices())

    return GeometryDecl(
        name or geometry.name,
        geometry.algebra,
        entries(geometry.g),
        entries(geometry.h),
        entries(geometry.conn.as_tensor()),
        tuple((condition.poly, condition.sign) for condition in geometry.domain),
        tuple(geometry.declared_ranks) if geometry.declared_ranks is not None else None,
        str(geometry.declared_signature) if geometry.declared_signature is not None else None,
        geometry.curvature_constant,
    )


def _recipe(declaration: RecipeDecl, is_algebra: bool) -> ContractionRecipe:
    slot_names = {"time": "time", "trans": "translation", "boost": "boost", "g": "g_scale", "h": "h_scale", "gamma": "conn_scale"}
    scales = {slot_names[slot]: Scale(scale.sign, scale.c_order, scale.l_order) for slot, scale in declaration.scales}
    return ContractionRecipe(
        kind="algebra" if is_algebra else "geometry",
        source=declaration.source,
        rule=declaration.rule,
        target=declaration.target,
        pre_involution=declaration.pre,
        expected=declaration.expected,
        **scales,
    )


def merge_into_catalog(document: SpecDocument, catalog: Catalog | None = None) -> Catalog:
    """Append the document's declarations to ``catalog`` (a fresh built-in catalog by default)."""
    catalog = catalog or Catalog()
    for declaration in document.declarations:
        if isinstance(declaration, AlgebraDecl):
            catalog.extra_algebras[declaration.name] = build_declared_algebra(declaration)
            catalog.algebra_names.append(declaration.name)
        elif isinstance(declaration, GeometryDecl):
            catalog.extra_geometries[declaration.name] = build_declared_geometry(declaration)
            catalog.geometry_names.append(declaration.name)
        elif isinstance(declaration, RecipeDecl):
            is_algebra = declaration.source in catalog.algebra_names
            catalog.recipes.append(_recipe(declaration, is_algebra))
        elif isinstance(declaration, DualDecl):
            catalog.duality_pairs.append(DualityPair(declaration.left, declaration.right, declaration.g_sign, declaration.h_sign))
    return catalog
