"""Recursive-descent reader for spec files declaring algebras, geometries,
contraction recipes and duality pairs.

Grammar (``#`` starts a comment that runs to the end of the line)::

    document   := declaration*
    declaration:= algebra | geometry | contract | dual
    algebra    := "algebra" NAME "{" "time" slot ";" "trans" slot ";" "boost" slot ";" "rot" "J" [";"] "}"
    slot       := ["-"] FAMILY | "expr" "(" field ("|" field){0,2} ")"
    field      := expr "," expr "," expr "," expr
    geometry   := "geometry" NAME "{" item* "}"
    item       := "algebra" NAME ";"
                | ("g" | "h") "[" INT "]" "[" INT "]" "=" expr ";"
                | "gamma" "[" INT "]" "[" INT "]" "[" INT "]" "=" expr ";"
                | "domain" expr (">" | "<") "0" ";"
                | "ranks" INT "," INT ";"
                | "signature" STRING ";"
                | "curvature" ["-"] INT ["/" INT] ";"
    contract   := "contract" NAME ["->" NAME] "{" citem* "}"
    citem      := "rule" RULE ";" | "scale" SLOT "=" scale ";"
                | "expect" ("contracts" | "blocked") ";" | "pre" ("theta" | "pi" | "thetapi") ";"
    scale      := ["-"] factor ("*" factor)*
    factor     := "1" | "(" RATIO ")" "^" ["-"] INT       RATIO in c_r/c, c/c_r, l_r/l, l/l_r
    dual       := "dual" NAME "<->" NAME ("sign" ("g" | "h") "=" "-1")* ";"
    expr       := term (("+" | "-") term)*
    term       := unary (("*" | "/") unary)*
    unary      := ("+" | "-") unary | power
    power      := atom ["^" ["-"] INT]
    atom       := NUMBER | x0 | x1 | x2 | x3 | c | l | "(" expr ")"

Forward references are rejected, and a name may be declared only once
(including the built-in catalog names).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ..catalog.algebras import ALGEBRA_NAMES
from ..catalog.generators import FAMILY_SYMBOLS
from ..catalog.geometries import GEOMETRY_NAMES
from ..contraction import RULES
from ..exactnum import RationalFn, var

__all__ = [
    "SpecError",
    "SpecSyntaxError",
    "UnknownSymbol",
    "DuplicateName",
    "Slot",
    "AlgebraDecl",
    "GeometryDecl",
    "ScaleDecl",
    "RecipeDecl",
    "DualDecl",
    "SpecDocument",
    "parse_spec",
    "parse_expression",
]

EXPRESSION_SYMBOLS = ("x0", "x1", "x2", "x3", "c", "l")
ALGEBRA_SLOTS = ("time", "trans", "boost")
GEOMETRY_SLOTS = ("g", "h", "gamma")
INVOLUTION_NAMES = ("theta", "pi", "thetapi")
RATIOS = {"c_r/c": ("c", 1), "c/c_r": ("c", -1), "l_r/l": ("l", 1), "l/l_r": ("l", -1)}

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_']*(?:[+\-](?!>)[A-Za-z0-9_']*)*")
_NUMBER = re.compile(r"\d+")
_STRING = re.compile(r'"([^"\n]*)"')


class SpecError(Exception):
    """A spec file problem located at (line, column), both 1-based."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(message, line, column)
        self.message = message
        self.line = line
        self.column = column
        self.path: str | None = None

    def __str__(self) -> str:
        prefix = f"{self.path}: " if self.path else ""
        return f"{prefix}line {self.line}, column {self.column}: {self.message}"


class SpecSyntaxError(SpecError):
    def __init__(self, expected: str, found: str, line: int, column: int):
        super().__init__(f"expected {expected}, found {found}", line, column)
        self.expected = expected
        self.found = found


class UnknownSymbol(SpecError):
    def __init__(self, symbol: str, line: int, column: int, kind: str = "symbol"):
        super().__init__(f"unknown {kind} {symbol!r}", line, column)
        self.symbol = symbol


class DuplicateName(SpecError):
    def __init__(self, name: str, line: int, column: int):
        super().__init__(f"{name!r} is already declared", line, column)
        self.name = name


# ---------------------------------------------------------------------------
# document model


@dataclass(frozen=True)
class Slot:
    """A signed generator family, or explicit vector-field components.

    ``fields`` holds one 4-tuple for the time slot and three for the
    spatial slots.
    """

    sign: int = 1
    family: str | None = None
    fields: tuple[tuple[RationalFn, ...], ...] = ()


@dataclass(frozen=True)
class AlgebraDecl:
    name: str
    time: Slot
    translation: Slot
    boost: Slot


@dataclass(frozen=True)
class GeometryDecl:
    name: str
    algebra: str
    g: tuple[tuple[tuple[int, int], RationalFn], ...] = ()
    h: tuple[tuple[tuple[int, int], RationalFn], ...] = ()
    gamma: tuple[tuple[tuple[int, int, int], RationalFn], ...] = ()
    domain: tuple[tuple[RationalFn, int], ...] = ()
    ranks: tuple[int, int] | None = None
    signature: str | None = None
    curvature: Fraction | None = None


@dataclass(frozen=True)
class ScaleDecl:
    sign: int = 1
    c_order: int = 0
    l_order: int = 0


@dataclass(frozen=True)
class RecipeDecl:
    source: str
    target: str | None
    rule: str
    scales: tuple[tuple[str, ScaleDecl], ...] = ()
    expected: str = "contracts"
    pre: str | None = None


@dataclass(frozen=True)
class DualDecl:
    left: str
    right: str
    g_sign: int = 1
    h_sign: int = 1


@dataclass(frozen=True)
class SpecDocument:
    declarations: tuple = ()

    def of_type(self, kind) -> list:
        return [declaration for declaration in self.declarations if isinstance(declaration, kind)]


# ---------------------------------------------------------------------------
# scanning


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.position = 0

    def location(self, position: int | None = None) -> tuple[int, int]:
        position = self.position if position is None else position
        line = self.text.count("\n", 0, position) + 1
        column = position - (self.text.rfind("\n", 0, position) + 1) + 1
        return line, column

    def skip(self) -> None:
        text = self.text
        while self.position < len(text):
            char = text[self.position]
            if char.isspace():
                self.position += 1
            elif char == "#":
                end = text.find("\n", self.position)
                self.position = len(text) if end < 0 else end
            else:
                return

    def at_end(self) -> bool:
        self.skip()
        return self.position >= len(self.text)

    def found(self) -> str:
        if self.at_end():
            return "end of input"
        match = _NAME.match(self.text, self.position) or _NUMBER.match(self.text, self.position)
        token = match.group(0) if match else self.text[self.position]
        return repr(token)

    def fail(self, expected: str) -> SpecSyntaxError:
        self.skip()
        return SpecSyntaxError(expected, self.found(), *self.location())

    def fail_at(self, expected: str, start: int) -> SpecSyntaxError:
        """A syntax error for the token that began at ``start`` and has already been consumed."""
        return SpecSyntaxError(expected, repr(self.text[start : self.position]), *self.location(start))

    def peek(self, literal: str) -> bool:
        self.skip()
        return self.text.startswith(literal, self.position)

    def accept(self, literal: str) -> bool:
        if self.peek(literal):
            self.position += len(literal)
            return True
        return False

    def expect(self, literal: str) -> None:
        if not self.accept(literal):
            raise self.fail(repr(literal))

    def peek_word(self, word: str) -> bool:
        self.skip()
        match = _NAME.match(self.text, self.position)
        return bool(match) and match.group(0) == word

    def name(self, what: str = "a name") -> tuple[str, int]:
        self.skip()
        match = _NAME.match(self.text, self.position)
        if not match:
            raise self.fail(what)
        start = self.position
        self.position = match.end()
        return match.group(0), start

    def keyword(self, choices: Iterable[str]) -> str:
        choices = tuple(choices)
        self.skip()
        match = _NAME.match(self.text, self.position)
        if not match or match.group(0) not in choices:
            raise self.fail(" or ".join(repr(choice) for choice in choices))
        self.position = match.end()
        return match.group(0)

    def integer(self) -> int:
        self.skip()
        negative = self.accept("-")
        self.skip()
        match = _NUMBER.match(self.text, self.position)
        if not match:
            raise self.fail("an integer")
        self.position = match.end()
        value = int(match.group(0))
        return -value if negative else value

    def string(self) -> str:
        self.skip()
        match = _STRING.match(self.text, self.position)
        if not match:
            raise self.fail("a quoted string")
        self.position = match.end()
        return match.group(1)

    # -- expressions --------------------------------------------------------

    def expression(self) -> RationalFn:
        value = self.term()
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.peek("-") and not self.peek("->"):
                self.position += 1
                value = value - self.term()
            else:
                return value

    def term(self) -> RationalFn:
        value = self.unary()
        while True:
            if self.accept("*"):
                value = value * self.unary()
            elif self.peek("/"):
                self.skip()
                start = self.position
                self.position += 1
                divisor = self.unary()
                if divisor.is_zero():
                    raise SpecError("division by zero", *self.location(start))
                value = value / divisor
            else:
                return value

    def unary(self) -> RationalFn:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> RationalFn:
        base = self.atom()
        if self.accept("^"):
            self.skip()
            start = self.position
            exponent = self.integer()
            if exponent < 0 and base.is_zero():
                raise SpecError("zero raised to a negative power", *self.location(start))
            return base**exponent
        return base

    def atom(self) -> RationalFn:
        self.skip()
        if self.accept("("):
            value = self.expression()
            self.expect(")")
            return value
        match = _NUMBER.match(self.text, self.position)
        if match:
            self.position = match.end()
            return RationalFn.coerce(int(match.group(0)))
        match = re.compile(r"[A-Za-z_][A-Za-z0-9_]*").match(self.text, self.position)
        if match:
            symbol = match.group(0)
            if symbol not in EXPRESSION_SYMBOLS:
                raise UnknownSymbol(symbol, *self.location(), kind="variable")
            self.position = match.end()
            return var(symbol)
        raise self.fail("a number, a variable or '('")


def parse_expression(text: str) -> RationalFn:
    """Parse one arithmetic expression over x0..x3, c and l."""
    reader = _Reader(text)
    value = reader.expression()
    if not reader.at_end():
        raise reader.fail("end of expression")
    return value


# ---------------------------------------------------------------------------
# declarations


class _Parser:
    def __init__(self, text: str, algebra_names: Iterable[str], geometry_names: Iterable[str]):
        self.reader = _Reader(text)
        self.algebras = set(algebra_names)
        self.geometries = set(geometry_names)

    def declare(self, name: str, start: int, table: set) -> None:
        if name in self.algebras or name in self.geometries:
            raise DuplicateName(name, *self.reader.location(start))
        table.add(name)

    def resolve(self, name: str, start: int, tables: tuple[set, ...], kind: str) -> None:
        if not any(name in table for table in tables):
            raise UnknownSymbol(name, *self.reader.location(start), kind=kind)

    def document(self) -> SpecDocument:
        declarations = []
        reader = self.reader
        while not reader.at_end():
            keyword = reader.keyword(("algebra", "geometry", "contract", "dual"))
            declarations.append(getattr(self, keyword)())
        return SpecDocument(tuple(declarations))

    # -- algebra ---------------------------------------------------------------

    def slot(self, spatial: bool) -> Slot:
        reader = self.reader
        if reader.peek_word("expr"):
            reader.name()
            reader.expect("(")
            fields = [self.field()]
            while spatial and reader.accept("|"):
                fields.append(self.field())
            reader.expect(")")
            if len(fields) != (3 if spatial else 1):
                raise reader.fail("three '|'-separated vector fields")
            return Slot(1, None, tuple(fields))
        sign = -1 if reader.accept("-") else 1
        symbol, start = reader.name("a generator family")
        if symbol not in FAMILY_SYMBOLS or symbol == "J" or (symbol.startswith("H") != (not spatial)):
            raise UnknownSymbol(symbol, *reader.location(start), kind="generator family for this slot")
        return Slot(sign, symbol, ())

    def field(self) -> tuple[RationalFn, ...]:
        reader = self.reader
        components = [reader.expression()]
        for _ in range(3):
            reader.expect(",")
            components.append(reader.expression())
        return tuple(components)

    def algebra(self) -> AlgebraDecl:
        reader = self.reader
        name, start = reader.name("an algebra name")
        reader.expect("{")
        slots = []
        for keyword in ALGEBRA_SLOTS:
            reader.keyword((keyword,))
            slots.append(self.slot(spatial=keyword != "time"))
            reader.expect(";")
        reader.keyword(("rot",))
        rotation, rotation_start = reader.name("'J'")
        if rotation != "J":
            raise UnknownSymbol(rotation, *reader.location(rotation_start), kind="rotation family")
        reader.accept(";")
        reader.expect("}")
        self.declare(name, start, self.algebras)
        return AlgebraDecl(name, *slots)

    # -- geometry --------------------------------------------------------------

    def index(self) -> int:
        reader = self.reader
        reader.expect("[")
        reader.skip()
        start = reader.position
        value = reader.integer()
        if not 0 <= value <= 3:
            raise SpecError(f"index {value} is outside 0..3", *reader.location(start))
        reader.expect("]")
        return value

    def geometry(self) -> GeometryDecl:
        reader = self.reader
        name, start = reader.name("a geometry name")
        reader.expect("{")
        algebra = None
        components = {"g": {}, "h": {}, "gamma": {}}
        domain, ranks, signature, curvature = [], None, None, None
        while not reader.accept("}"):
            keyword = reader.keyword(("algebra", "g", "h", "gamma", "domain", "ranks", "signature", "curvature"))
            if keyword == "algebra":
                algebra, algebra_start = reader.name("an algebra name")
                self.resolve(algebra, algebra_start, (self.algebras,), "algebra")
            elif keyword in ("g", "h", "gamma"):
                indices = tuple(self.index() for _ in range(3 if keyword == "gamma" else 2))
                reader.expect("=")
                value = reader.expression()
                components[keyword][indices] = value
                mirrored = indices[:-2] + (indices[-1], indices[-2])
                components[keyword][mirrored] = value
            elif keyword == "domain":
                poly = reader.expression()
                sign = 1 if reader.accept(">") else -1 if reader.accept("<") else None
                if sign is None:
                    raise reader.fail("'>' or '<'")
                reader.skip()
                if reader.integer() != 0:
                    raise reader.fail("0")
                domain.append((poly, sign))
            elif keyword == "ranks":
                first = reader.integer()
                reader.expect(",")
                ranks = (first, reader.integer())
            elif keyword == "signature":
                signature = reader.string()
            else:
                numerator = reader.integer()
                denominator = reader.integer() if reader.accept("/") else 1
                if denominator == 0:
                    raise reader.fail("a nonzero denominator")
                curvature = Fraction(numerator, denominator)
            reader.expect(";")
        if algebra is None:
            raise reader.fail("an 'algebra NAME;' line before '}'")
        self.declare(name, start, self.geometries)
        canonical = {key: tuple(sorted(values.items())) for key, values in components.items()}
        return GeometryDecl(
            name, algebra, canonical["g"], canonical["h"], canonical["gamma"], tuple(domain), ranks, signature, curvature
        )

    # -- contraction -----------------------------------------------------------

    def scale(self) -> ScaleDecl:
        reader = self.reader
        sign = -1 if reader.accept("-") else 1
        orders = {"c": 0, "l": 0}
        while True:
            reader.skip()
            factor_start = reader.position
            if reader.accept("("):
                reader.skip()
                match = re.compile(r"[cl](?:_r)?\s*/\s*[cl](?:_r)?").match(reader.text, reader.position)
                ratio = re.sub(r"\s", "", match.group(0)) if match else None
                if ratio not in RATIOS:
                    raise reader.fail("one of " + ", ".join(RATIOS))
                reader.position = match.end()
                reader.expect(")")
                reader.expect("^")
                parameter, direction = RATIOS[ratio]
                orders[parameter] += direction * reader.integer()
            elif reader.integer() != 1:
                raise reader.fail_at("1 or a ratio such as (c_r/c)^2", factor_start)
            if not reader.accept("*"):
                return ScaleDecl(sign, orders["c"], orders["l"])

    def contract(self) -> RecipeDecl:
        reader = self.reader
        source, source_start = reader.name("a source name")
        self.resolve(source, source_start, (self.algebras, self.geometries), "algebra or geometry")
        is_algebra = source in self.algebras
        target = None
        if reader.accept("->"):
            target, target_start = reader.name("a target name")
            self.resolve(target, target_start, (self.algebras if is_algebra else self.geometries,), "target")
        reader.skip()
        brace_start = reader.position
        reader.expect("{")
        rule, scales, expected, pre = None, {}, "contracts", None
        while not reader.accept("}"):
            keyword = reader.keyword(("rule", "scale", "expect", "pre"))
            if keyword == "rule":
                rule, rule_start = reader.name("a rule name")
                if rule not in RULES:
                    raise UnknownSymbol(rule, *reader.location(rule_start), kind="rule")
            elif keyword == "scale":
                slot = reader.keyword(ALGEBRA_SLOTS if is_algebra else GEOMETRY_SLOTS)
                reader.expect("=")
                scales[slot] = self.scale()
            elif keyword == "expect":
                expected = reader.keyword(("contracts", "blocked"))
            else:
                pre = reader.keyword(INVOLUTION_NAMES)
            reader.expect(";")
        if rule is None:
            raise reader.fail("a 'rule NAME;' line before '}'")
        if expected == "contracts" and target is None:
            raise SpecSyntaxError("'-> TARGET' for a contracting recipe", "'{'", *reader.location(brace_start))
        if pre is not None and not is_algebra:
            raise reader.fail("no 'pre' involution on a geometry recipe")
        order = ALGEBRA_SLOTS if is_algebra else GEOMETRY_SLOTS
        return RecipeDecl(source, target, rule, tuple((slot, scales[slot]) for slot in order if slot in scales), expected, pre)

    # -- duality ---------------------------------------------------------------

    def dual(self) -> DualDecl:
        reader = self.reader
        left, left_start = reader.name("a geometry name")
        self.resolve(left, left_start, (self.geometries,), "geometry")
        reader.expect("<->")
        right, right_start = reader.name("a geometry name")
        self.resolve(right, right_start, (self.geometries,), "geometry")
        signs = {"g": 1, "h": 1}
        while reader.peek_word("sign"):
            reader.name()
            which = reader.keyword(("g", "h"))
            reader.expect("=")
            reader.skip()
            sign_start = reader.position
            if reader.integer() != -1:
                raise reader.fail_at("-1", sign_start)
            signs[which] = -1
        reader.expect(";")
        return DualDecl(left, right, signs["g"], signs["h"])


def parse_spec(
    text: str,
    algebra_names: Iterable[str] = ALGEBRA_NAMES,
    geometry_names: Iterable[str] = GEOMETRY_NAMES,
) -> SpecDocument:
    """Parse a whole spec document; raises on the first error, with no side effects."""
    return _Parser(text, algebra_names, geometry_names).document()
