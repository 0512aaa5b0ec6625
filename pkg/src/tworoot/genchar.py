"""Generalized characters of finite abelian groups.

A generalized character is an integer vector indexed by
``enumerate_characters(G)``.  Everything here is exact; values are
assembled as exponent-count vectors and reduced once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .abelian import (
    AbelianGroup,
    GroupElement,
    LinearCharacter,
    coordinate_array,
    element_order,
    enumerate_characters,
    enumerate_elements,
    exponent_table,
    subgroup_elements,
    subgroup_structure,
)
from .cyclotomic import Cyclotomic, Witness, as_root_of_unity, factorize, two_root_decomposition

SMALL_ORDER_LIMIT = 21


@dataclass(frozen=True)
class GeneralizedCharacter:
    group: AbelianGroup
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != self.group.order:
            raise ValueError(f"{self.group} needs {self.group.order} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_characters(cls, G: AbelianGroup, terms: dict[LinearCharacter, int]) -> "GeneralizedCharacter":
        coeffs = [0] * G.order
        for lam, c in terms.items():
            coeffs[G.index(GroupElement(lam.exponents))] += c
        return cls(G, tuple(coeffs))

    @classmethod
    def irreducible(cls, G: AbelianGroup, index: int) -> "GeneralizedCharacter":
        coeffs = [0] * G.order
        coeffs[index] = 1
        return cls(G, tuple(coeffs))

    @property
    def degree(self) -> int:
        return sum(self.coeffs)

    def _same(self, other: "GeneralizedCharacter") -> None:
        if other.group != self.group:
            raise ValueError("generalized characters live on different groups")

    def __add__(self, other: "GeneralizedCharacter") -> "GeneralizedCharacter":
        self._same(other)
        return GeneralizedCharacter(self.group, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "GeneralizedCharacter") -> "GeneralizedCharacter":
        return self + (-other)

    def __neg__(self) -> "GeneralizedCharacter":
        return GeneralizedCharacter(self.group, tuple(-a for a in self.coeffs))

    def __rmul__(self, m: int) -> "GeneralizedCharacter":
        return GeneralizedCharacter(self.group, tuple(m * a for a in self.coeffs))

    def shift(self, m: int) -> "GeneralizedCharacter":
        """self + m * rho_G."""
        return GeneralizedCharacter(self.group, tuple(a + m for a in self.coeffs))

    def normalized(self) -> "GeneralizedCharacter":
        """Shift by a multiple of rho so the least coefficient is 0."""
        return self.shift(-min(self.coeffs))


def regular_character(G: AbelianGroup) -> GeneralizedCharacter:
    return GeneralizedCharacter(G, (1,) * G.order)


def _exponent_counts(chi: GeneralizedCharacter, j: int) -> list[int]:
    """Multiplicity of each zeta_e^k in chi(g_j)."""
    G = chi.group
    counts = [0] * G.exponent
    col = exponent_table(G)[:, j]
    for c, k in zip(chi.coeffs, col):
        if c:
            counts[k] += c
    return counts


def evaluate(chi: GeneralizedCharacter, g: GroupElement) -> Cyclotomic:
    G = chi.group
    return Cyclotomic.from_exponents(G.exponent, _exponent_counts(chi, G.index(g)))


def values(chi: GeneralizedCharacter) -> list[Cyclotomic]:
    """chi(g) for every g in enumeration order."""
    G = chi.group
    return [Cyclotomic.from_exponents(G.exponent, _exponent_counts(chi, j)) for j in range(G.order)]


def inner_product(chi1: GeneralizedCharacter, chi2: GeneralizedCharacter) -> Fraction:
    """(1/|G|) sum_g chi1(g) * conj(chi2(g)), computed over the group."""
    chi1._same(chi2)
    G = chi1.group
    e = G.exponent
    acc = np.zeros(e, dtype=object)
    a = np.array(chi1.coeffs, dtype=object)
    b = np.array(chi2.coeffs, dtype=object)
    T = exponent_table(G)
    for j in range(G.order):
        col = T[:, j]
        # chi1(g) conj(chi2(g)) = sum_{lam, mu} a_lam b_mu zeta^(k_lam - k_mu)
        diff = (col[:, None] - col[None, :]) % e
        np.add.at(acc, diff.ravel(), np.outer(a, b).ravel())
    total = Cyclotomic.from_exponents(e, [int(x) for x in acc]).as_rational()
    if total is None:
        raise ArithmeticError("inner product is not rational")
    result = total / G.order
    dot = sum(x * y for x, y in zip(chi1.coeffs, chi2.coeffs))
    assert result == dot, (result, dot)
    return result


def restrict(chi: GeneralizedCharacter, generators) -> GeneralizedCharacter:
    """Restriction to <generators>, expressed over Irr(H) of its invariant-factor model.

    The embedding H -> G is the basis returned by ``subgroup_structure``.
    """
    G = chi.group
    H, basis = subgroup_structure(G, list(generators))
    e = G.exponent
    h_elems = [_embed(G, basis, h) for h in enumerate_elements(H)]
    TH = exponent_table(H)
    scale = e // H.exponent
    chi_counts = [_exponent_counts(chi, G.index(x)) for x in h_elems]
    coeffs = []
    for i in range(H.order):
        acc = [0] * e
        for j, counts in enumerate(chi_counts):
            shift = int(TH[i, j]) * scale
            for k, c in enumerate(counts):
                if c:
                    acc[(k - shift) % e] += c
        val = Cyclotomic.from_exponents(e, acc).as_rational()
        if val is None or (val / H.order).denominator != 1:
            raise ArithmeticError(f"non-integral restriction coefficient {val}/{H.order}")
        coeffs.append(int(val / H.order))
    return GeneralizedCharacter(H, tuple(coeffs))


def _embed(G: AbelianGroup, basis, h: GroupElement) -> GroupElement:
    x = G.identity()
    for c, b in zip(h.coords, basis):
        x = G.add(x, G.scale(c, b))
    return x


@lru_cache(maxsize=200_000)
def _decompose_counts(e: int, counts: tuple[int, ...]) -> Witness | None:
    return two_root_decomposition(Cyclotomic.from_exponents(e, counts))


def two_root_values(chi: GeneralizedCharacter) -> dict[GroupElement, Witness] | None:
    """Witness for every nonidentity value, or None if some value has none."""
    G = chi.group
    out = {}
    for j, g in enumerate(enumerate_elements(G)):
        if j == 0:
            continue
        w = _decompose_counts(G.exponent, tuple(_exponent_counts(chi, j)))
        if w is None:
            return None
        out[g] = w
    return out


# -- types and shapes ---------------------------------------------------------


@dataclass(frozen=True)
class TypeKL:
    """chi = base*rho + sum(plus) - sum(minus), plus and minus disjoint."""

    k: int
    l: int
    base: int
    plus: tuple[int, ...] = ()
    minus: tuple[int, ...] = ()

    def reconstruct(self, n: int) -> tuple[int, ...]:
        c = [self.base] * n
        for i in self.plus:
            c[i] += 1
        for i in self.minus:
            c[i] -= 1
        return tuple(c)

    def __str__(self) -> str:
        return f"({self.k},{self.l})"


def types_of(chi: GeneralizedCharacter) -> list[TypeKL]:
    """Every representation base*rho + (distinct) - (distinct)."""
    c = chi.coeffs
    lo, hi = min(c), max(c)
    out = []
    for a in range(hi - 1, lo + 2):
        plus = tuple(i for i, x in enumerate(c) if x == a + 1)
        minus = tuple(i for i, x in enumerate(c) if x == a - 1)
        out.append(TypeKL(len(plus), len(minus), a, plus, minus))
    return out


def type_of(chi: GeneralizedCharacter) -> TypeKL | None:
    reps = types_of(chi)
    if not reps:
        return None
    return min(reps, key=lambda t: (t.k + t.l, t.k))


SHAPE_RANK = {
    "Standard": 0,
    "OutlierI": 1,
    "OutlierII": 2,
    "OutlierIII": 3,
    "OutlierIV": 4,
    "SmallExceptional": 5,
}


@dataclass(frozen=True)
class Classification:
    """Which form of the abelian classification a character takes.

    ``indices`` lists the irreducibles with nonzero sign, those carrying
    ``sign`` first.  For Standard, ``deltas`` pairs with ``indices``
    (a repeated index encodes 2*lambda).
    """

    tag: str
    base: int | None = None
    sign: int | None = None
    deltas: tuple[int, ...] = ()
    indices: tuple[int, ...] = ()
    k: int | None = None

    @property
    def is_two_root(self) -> bool:
        return self.tag != "NotTwoRoot"

    def __str__(self) -> str:
        if self.tag == "NotTwoRoot":
            return self.tag
        fields_ = [self.tag, f"base={self.base}"]
        if self.tag == "Standard":
            fields_.append("deltas=" + ",".join(map(str, self.deltas)))
        else:
            fields_.append(f"sign={self.sign:+d}")
        if self.k is not None:
            fields_.append(f"k={self.k}")
        fields_.append("indices=" + ",".join(map(str, self.indices)))
        return " ".join(fields_)


NOT_TWO_ROOT = Classification("NotTwoRoot")


class TheoremViolation(Exception):
    """A two-root generalized character that fits none of the allowed shapes."""

    def __init__(self, chi: GeneralizedCharacter):
        self.coeffs = chi.coeffs
        self.group = chi.group
        super().__init__(f"no allowed shape for {chi.group} coefficients {list(chi.coeffs)}")


def shapes(chi: GeneralizedCharacter) -> list[Classification]:
    """Every allowed shape that fits chi, ignoring the value condition."""
    c = chi.coeffs
    n = len(c)
    out = []
    for a in range(max(c) - 2, min(c) + 3):
        r = [x - a for x in c]
        if any(abs(x) > 2 for x in r):
            continue
        nz = [i for i, x in enumerate(r) if x]
        if any(abs(r[i]) == 2 for i in nz):
            if len(nz) == 1:
                s = r[nz[0]] // 2
                out.append(Classification("Standard", a, None, (s, s), (nz[0], nz[0])))
            continue
        plus = [i for i in nz if r[i] > 0]
        minus = [i for i in nz if r[i] < 0]
        k, l = len(plus), len(minus)
        if k + l <= 2:
            idx = tuple(plus + minus)
            deltas = tuple([1] * k + [-1] * l) + (0,) * (2 - k - l)
            out.append(Classification("Standard", a, None, deltas, idx))
            continue
        big, small = (plus, minus) if k >= l else (minus, plus)
        sign = 1 if k >= l else -1
        kb, ks = len(big), len(small)
        tag = {(3, 0): "OutlierI", (2, 1): "OutlierII", (4, 0): "OutlierIII", (3, 1): "OutlierIV"}.get((kb, ks))
        if tag is not None:
            out.append(Classification(tag, a, sign, (), tuple(big + small)))
        elif ks == 0 and 5 <= kb <= 7 and n <= SMALL_ORDER_LIMIT:
            out.append(Classification("SmallExceptional", a, sign, (), tuple(big), kb))
    return out


def classify(chi: GeneralizedCharacter) -> Classification:
    """Shape of a two-root generalized character, or NotTwoRoot.

    Raises TheoremViolation when chi is two-root but fits no shape.
    """
    if two_root_values(chi) is None:
        return NOT_TWO_ROOT
    return classify_shape(chi)


def classify_shape(chi: GeneralizedCharacter) -> Classification:
    """The preferred shape, assuming chi is already known to be two-root."""
    cands = shapes(chi)
    if not cands:
        raise TheoremViolation(chi)
    # ties go to the least index set, which -chi shares, so negation flips only the sign
    return min(cands, key=lambda s: (SHAPE_RANK[s.tag], len(set(s.indices)), sorted(s.indices)))


# -- degree congruences for p-elements ---------------------------------------


@dataclass(frozen=True)
class CongruenceReport:
    part: str
    prime: int
    applicable: bool
    modulus: int | None = None
    residue: int | None = None  # +1 or -1 when the congruence holds
    holds: bool | None = None
    detail: str = ""


def _p_elements(G: AbelianGroup, p: int) -> list[GroupElement]:
    out = []
    for g in enumerate_elements(G)[1:]:
        o = element_order(G, g)
        while o % p == 0:
            o //= p
        if o == 1:
            out.append(g)
    return out


def _pm_one(deg: int, m: int) -> int | None:
    if (deg - 1) % m == 0:
        return 1
    if (deg + 1) % m == 0:
        return -1
    return None


def check_degree_congruence(chi: GeneralizedCharacter, part: str, p: int) -> CongruenceReport:
    """Degree congruences forced by root-of-unity values on p-elements.

    part "i": if chi(x) is a root of unity for some nonidentity p-element x,
    chi(1) = +-1 mod p.  part "ii": if chi is a root of unity on every
    nonidentity p-element, chi(1) = +-1 mod |P| (mod |P|/2 when p = 2 and
    |P| >= 4), P the Sylow p-subgroup.
    """
    G = chi.group
    if G.order % p or len(factorize(p)) != 1 or factorize(p)[0][1] != 1:
        return CongruenceReport(part, p, False, detail=f"{p} is not a prime divisor of |G|")
    pel = _p_elements(G, p)
    hits = [g for g in pel if as_root_of_unity(evaluate(chi, g)) is not None]
    deg = chi.degree
    if part == "i":
        if not hits:
            return CongruenceReport(part, p, False, detail="no p-element with a root-of-unity value")
        r = _pm_one(deg, p)
        return CongruenceReport(part, p, True, p, r, r is not None, f"witness {hits[0]}")
    if part == "ii":
        if len(hits) != len(pel):
            return CongruenceReport(part, p, False, detail="some p-element value is not a root of unity")
        size = len(pel) + 1
        m = size // 2 if p == 2 and size >= 4 else size
        r = _pm_one(deg, m)
        return CongruenceReport(part, p, True, m, r, r is not None)
    raise ValueError(f"unknown part {part!r}")
