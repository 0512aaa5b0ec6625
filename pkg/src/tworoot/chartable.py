"""Ingested character tables of (nonabelian) finite groups and class functions on them.

Tables are data, never computed here.  ``validate`` checks every relation
exactly and either returns a certificate or raises naming the broken one.

File format (``#`` starts a comment, class indices are 0-based)::

    group D30
    order 30
    classes 9
    class 0 size 1 elemorder 1 inverse 0
    ...
    irr 0: 1, 1, ...
    fun chi: 16, -2, ...
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .cyclotomic import (
    Cyclotomic,
    CyclotomicSyntaxError,
    Witness,
    divisors,
    format_cyclotomic,
    parse_cyclotomic,
    two_root_decomposition,
)


@dataclass(frozen=True)
class ConjugacyClass:
    size: int
    elemorder: int
    inverse: int


@dataclass(frozen=True)
class CharacterTable:
    name: str
    order: int
    classes: tuple[ConjugacyClass, ...]
    irreducibles: tuple[tuple[Cyclotomic, ...], ...]
    functions: dict[str, tuple[Cyclotomic, ...]] = field(default_factory=dict, compare=False, hash=False)

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def irr(self, i: int) -> "ClassFunction":
        return ClassFunction(self, self.irreducibles[i], f"irr{i}")

    def function(self, name: str) -> "ClassFunction":
        if name not in self.functions:
            raise KeyError(f"table {self.name} has no function {name!r}")
        return ClassFunction(self, self.functions[name], name)

    def class_function(self, values, name: str = "") -> "ClassFunction":
        return ClassFunction(self, tuple(_as_cyc(v) for v in values), name)


@dataclass(frozen=True)
class ClassFunction:
    table: CharacterTable
    values: tuple[Cyclotomic, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.values) != self.table.num_classes:
            raise ValueError(f"{len(self.values)} values for {self.table.num_classes} classes")

    @property
    def degree(self) -> Cyclotomic:
        return self.values[0]

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        _same_table(self, other)
        return ClassFunction(self.table, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        _same_table(self, other)
        return ClassFunction(self.table, tuple(a - b for a, b in zip(self.values, other.values)))

    def __rmul__(self, m: int) -> "ClassFunction":
        return ClassFunction(self.table, tuple(v * m for v in self.values))


def _as_cyc(v) -> Cyclotomic:
    return v if isinstance(v, Cyclotomic) else Cyclotomic.rational(Fraction(v))


def _same_table(f: ClassFunction, h: ClassFunction) -> None:
    if f.table is not h.table and f.table != h.table:
        raise ValueError("class functions live on different tables")


# -- parsing -----------------------------------------------------------------


class TableSyntaxError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class TableValidationError(ValueError):
    """A table relation failed; ``relation`` names it, ``where`` locates it."""

    def __init__(self, relation: str, where: str):
        self.relation = relation
        self.where = where
        super().__init__(f"{relation} fails at {where}")


_CLASS = re.compile(r"class\s+(\d+)\s+size\s+(\d+)\s+elemorder\s+(\d+)\s+inverse\s+(\d+)$")
_ROW = re.compile(r"(irr|fun)\s+(\S+?)\s*:\s*(.*)$")


def parse_table(text: str) -> CharacterTable:
    name = None
    order = None
    k = None
    classes: dict[int, ConjugacyClass] = {}
    irr: dict[int, tuple[Cyclotomic, ...]] = {}
    funs: dict[str, tuple[Cyclotomic, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word = line.split()[0]
        if word == "group":
            name = line[len("group"):].strip() or None
            if name is None:
                raise TableSyntaxError(lineno, "missing group name")
        elif word in ("order", "classes"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise TableSyntaxError(lineno, f"expected '{word} <integer>'")
            if word == "order":
                order = int(parts[1])
            else:
                k = int(parts[1])
        elif word == "class":
            m = _CLASS.match(line)
            if not m:
                raise TableSyntaxError(lineno, "expected 'class <idx> size <s> elemorder <o> inverse <idx>'")
            idx, s, o, inv = map(int, m.groups())
            if idx in classes:
                raise TableSyntaxError(lineno, f"class {idx} defined twice")
            classes[idx] = ConjugacyClass(s, o, inv)
        elif word in ("irr", "fun"):
            m = _ROW.match(line)
            if not m:
                raise TableSyntaxError(lineno, f"expected '{word} <id>: <values>'")
            kind, key, body = m.groups()
            try:
                vals = tuple(parse_cyclotomic(t) for t in body.split(","))
            except CyclotomicSyntaxError as exc:
                raise TableSyntaxError(lineno, str(exc)) from None
            if kind == "irr":
                if not key.isdigit():
                    raise TableSyntaxError(lineno, f"irreducible index {key!r} is not an integer")
                if int(key) in irr:
                    raise TableSyntaxError(lineno, f"irr {key} defined twice")
                irr[int(key)] = vals
            else:
                if key in funs:
                    raise TableSyntaxError(lineno, f"function {key} defined twice")
                funs[key] = vals
        else:
            raise TableSyntaxError(lineno, f"unknown directive {word!r}")
    last = len(text.splitlines())
    if name is None or order is None or k is None:
        raise TableSyntaxError(last, "group, order and classes are required")
    if sorted(classes) != list(range(k)):
        raise TableSyntaxError(last, f"expected classes 0..{k - 1}, got {sorted(classes)}")
    if sorted(irr) != list(range(len(irr))):
        raise TableSyntaxError(last, "irreducibles must be numbered 0, 1, 2, ...")
    for i, row in list(irr.items()) + list(funs.items()):
        if len(row) != k:
            raise TableSyntaxError(last, f"row {i} has {len(row)} values, expected {k}")
    return CharacterTable(name, order, tuple(classes[i] for i in range(k)),
                          tuple(irr[i] for i in range(len(irr))), funs)


def format_table(t: CharacterTable, comments: dict[str, str] | None = None) -> str:
    out = [f"group {t.name}", f"order {t.order}", f"classes {t.num_classes}"]
    for i, c in enumerate(t.classes):
        out.append(f"class {i} size {c.size} elemorder {c.elemorder} inverse {c.inverse}")
    for i, row in enumerate(t.irreducibles):
        out.append(f"irr {i}: " + ", ".join(format_cyclotomic(v) for v in row))
    for name, row in t.functions.items():
        if comments and name in comments:
            out.append(f"# {comments[name]}")
        out.append(f"fun {name}: " + ", ".join(format_cyclotomic(v) for v in row))
    return "\n".join(out) + "\n"


def load_bundled(name: str) -> CharacterTable:
    """One of the tables shipped in tworoot/data, e.g. ``"dihedral30"``."""
    text = resources.files("tworoot").joinpath("data", f"{name}.tbl").read_text()
    return parse_table(text)


BUNDLED = ("dihedral30", "sl23", "a5")


# -- validation --------------------------------------------------------------


@dataclass(frozen=True)
class TableCertificate:
    name: str
    order: int
    degrees: tuple[int, ...]
    relations: tuple[str, ...]


def _weighted_product(t: CharacterTable, f, h) -> Cyclotomic:
    total = Cyclotomic.rational(0)
    for c, a, b in zip(t.classes, f, h):
        total = total + a * b.conjugate() * c.size
    return total


def validate(t: CharacterTable) -> TableCertificate:
    k = t.num_classes
    cls = t.classes
    if sum(c.size for c in cls) != t.order:
        raise TableValidationError("class sizes sum to |G|", f"sum {sum(c.size for c in cls)} != {t.order}")
    if cls[0].size != 1 or cls[0].elemorder != 1 or cls[0].inverse != 0:
        raise TableValidationError("identity class", "class 0")
    for i, c in enumerate(cls):
        if c.size < 1 or t.order % c.size:
            raise TableValidationError("class size divides |G|", f"class {i}")
        if c.elemorder < 1 or t.order % c.elemorder:
            raise TableValidationError("element order divides |G|", f"class {i}")
        if not 0 <= c.inverse < k:
            raise TableValidationError("inverse map", f"class {i}")
        j = c.inverse
        if cls[j].inverse != i or cls[j].size != c.size or cls[j].elemorder != c.elemorder:
            raise TableValidationError("inverse map", f"classes {i} and {j}")
    if len(t.irreducibles) != k:
        raise TableValidationError("number of irreducibles equals number of classes",
                                   f"{len(t.irreducibles)} rows, {k} classes")
    degrees = []
    for i, row in enumerate(t.irreducibles):
        d = row[0].as_rational()
        if d is None or d.denominator != 1 or d < 1:
            raise TableValidationError("degree is a positive integer", f"irr {i}")
        degrees.append(int(d))
        for c_idx, c in enumerate(cls):
            if row[c.inverse] != row[c_idx].conjugate():
                raise TableValidationError("value at inverse class is the conjugate", f"irr {i}, class {c_idx}")
    for i in range(k):
        for j in range(i, k):
            ip = _weighted_product(t, t.irreducibles[i], t.irreducibles[j])
            if ip != (t.order if i == j else 0):
                raise TableValidationError("row orthogonality", f"pair ({i},{j})")
    if sum(d * d for d in degrees) != t.order:
        raise TableValidationError("sum of squared degrees equals |G|", f"{sum(d * d for d in degrees)}")
    rels = ("class sizes", "identity class", "inverse map", "conjugate at inverse",
            "row orthogonality", "degree sum")
    return TableCertificate(t.name, t.order, tuple(degrees), rels)


# -- class-function operations -----------------------------------------------


def inner_product(f: ClassFunction, h: ClassFunction) -> Fraction | Cyclotomic:
    """(1/|G|) sum_c |c| f(c) conj(h(c)); a Fraction whenever the value is rational."""
    _same_table(f, h)
    val = _weighted_product(f.table, f.values, h.values) * Fraction(1, f.table.order)
    r = val.as_rational()
    return r if r is not None else val


@dataclass(frozen=True)
class GenCharCheck:
    is_generalized: bool
    coefficients: tuple[int, ...] | None
    products: tuple[Fraction | Cyclotomic, ...]

    def __bool__(self) -> bool:
        return self.is_generalized


def is_generalized_character(f: ClassFunction) -> GenCharCheck:
    """Integrality of every [f, chi_i]; on success f is rebuilt from the coefficients."""
    t = f.table
    prods = tuple(inner_product(f, t.irr(i)) for i in range(t.num_classes))
    ok = all(isinstance(p, Fraction) and p.denominator == 1 for p in prods)
    if not ok:
        return GenCharCheck(False, None, prods)
    coeffs = tuple(int(p) for p in prods)
    rebuilt = [Cyclotomic.rational(0)] * t.num_classes
    for c, row in zip(coeffs, t.irreducibles):
        rebuilt = [r + v * c for r, v in zip(rebuilt, row)]
    assert tuple(rebuilt) == f.values, "reconstruction failed on a table that should be complete"
    return GenCharCheck(True, coeffs, prods)


def two_root_on_nonidentity(f: ClassFunction) -> dict[int, Witness] | None:
    out = {}
    for i, v in enumerate(f.values[1:], 1):
        w = two_root_decomposition(v)
        if w is None:
            return None
        out[i] = w
    return out


def table_spectrum(t: CharacterTable) -> set[int]:
    spec = {1}
    for c in t.classes:
        spec.update(divisors(c.elemorder))
    return spec
