"""Finite abelian groups in invariant-factor form and their dual groups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from math import gcd

import numpy as np

from .cyclotomic import Cyclotomic, factorize, lcm, zeta


@dataclass(frozen=True)
class AbelianGroup:
    """C_{n1} x ... x C_{nr} with n1 | n2 | ... | nr, every ni >= 2."""

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(int(n) for n in self.factors)
        object.__setattr__(self, "factors", fs)
        if any(n < 2 for n in fs):
            raise ValueError(f"invariant factors must be >= 2: {fs}")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise ValueError(f"not in invariant-factor form: {fs}")

    @classmethod
    def from_factors(cls, factors) -> "AbelianGroup":
        """Canonicalize any list of cyclic orders, e.g. (6, 2) -> C2 x C6."""
        by_prime: dict[int, list[int]] = {}
        for n in factors:
            if n < 1:
                raise ValueError(f"bad cyclic order {n}")
            for p, e in factorize(n):
                by_prime.setdefault(p, []).append(p**e)
        cols = [sorted(v, reverse=True) for v in by_prime.values()]
        rank = max((len(c) for c in cols), default=0)
        inv = []
        for i in range(rank):
            inv.append(reduce(lambda a, c: a * (c[i] if i < len(c) else 1), cols, 1))
        return cls(tuple(sorted(inv)))

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        """``"12"`` for C12, ``"2x6"`` for C2 x C6; ``"1"`` is trivial."""
        try:
            parts = [int(t) for t in text.lower().replace("*", "x").split("x")]
        except ValueError:
            raise ValueError(f"bad group syntax {text!r}") from None
        return cls.from_factors([p for p in parts if p != 1])

    @cached_property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, self.factors, 1)

    @cached_property
    def exponent(self) -> int:
        return reduce(lcm, self.factors, 1)

    @property
    def rank(self) -> int:
        return len(self.factors)

    def identity(self) -> "GroupElement":
        return GroupElement((0,) * self.rank)

    def element(self, *coords: int) -> "GroupElement":
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {coords}")
        return GroupElement(tuple(c % n for c, n in zip(coords, self.factors)))

    def character(self, *exps: int) -> "LinearCharacter":
        if len(exps) != self.rank:
            raise ValueError(f"expected {self.rank} exponents, got {exps}")
        return LinearCharacter(tuple(a % n for a, n in zip(exps, self.factors)))

    def add(self, g: "GroupElement", h: "GroupElement") -> "GroupElement":
        return GroupElement(tuple((a + b) % n for a, b, n in zip(g.coords, h.coords, self.factors)))

    def scale(self, m: int, g: "GroupElement") -> "GroupElement":
        return GroupElement(tuple((m * a) % n for a, n in zip(g.coords, self.factors)))

    def index(self, g: "GroupElement") -> int:
        """Position of g in the lexicographic enumeration."""
        i = 0
        for c, n in zip(g.coords, self.factors):
            i = i * n + c
        return i

    def name(self) -> str:
        if not self.factors:
            return "1"
        return "x".join(str(n) for n in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "C1"
        return " x ".join(f"C{n}" for n in self.factors)


@dataclass(frozen=True, order=True)
class GroupElement:
    coords: tuple[int, ...]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coords)) + ")"


@dataclass(frozen=True, order=True)
class LinearCharacter:
    exponents: tuple[int, ...]

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.exponents)) + "]"


def _check(G: AbelianGroup, coords: tuple[int, ...]) -> None:
    if len(coords) != G.rank or any(not 0 <= c < n for c, n in zip(coords, G.factors)):
        raise ValueError(f"{coords} is not a reduced coordinate tuple for {G}")


def element_order(G: AbelianGroup, g: GroupElement) -> int:
    _check(G, g.coords)
    return reduce(lcm, (n // gcd(c, n) for c, n in zip(g.coords, G.factors)), 1)


def character_exponent(G: AbelianGroup, lam: LinearCharacter, g: GroupElement) -> int:
    """k with lam(g) = zeta_e^k, e = exponent(G)."""
    e = G.exponent
    return sum(a * c * (e // n) for a, c, n in zip(lam.exponents, g.coords, G.factors)) % e


def character_value(G: AbelianGroup, lam: LinearCharacter, g: GroupElement) -> Cyclotomic:
    _check(G, lam.exponents)
    _check(G, g.coords)
    return zeta(G.exponent, character_exponent(G, lam, g))


def enumerate_elements(G: AbelianGroup) -> list[GroupElement]:
    return [GroupElement(c) for c in itertools.product(*(range(n) for n in G.factors))]


def enumerate_characters(G: AbelianGroup) -> list[LinearCharacter]:
    return [LinearCharacter(c) for c in itertools.product(*(range(n) for n in G.factors))]


@lru_cache(maxsize=256)
def coordinate_array(G: AbelianGroup) -> np.ndarray:
    """All elements as rows, lexicographic order."""
    if not G.factors:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(*(range(n) for n in G.factors))), dtype=np.int64)


@lru_cache(maxsize=256)
def exponent_table(G: AbelianGroup) -> np.ndarray:
    """T[i, j] = k with chi_i(g_j) = zeta_e^k (characters x elements)."""
    X = coordinate_array(G)
    if not G.factors:
        return np.zeros((1, 1), dtype=np.int64)
    scale = np.array([G.exponent // n for n in G.factors], dtype=np.int64)
    T = (X * scale) @ X.T % G.exponent
    T.setflags(write=False)
    return T


def subgroup_elements(G: AbelianGroup, generators) -> list[GroupElement]:
    """Closure of the generators under addition, sorted lexicographically."""
    for g in generators:
        _check(G, g.coords)
    seen = {G.identity()}
    frontier = [G.identity()]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = G.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def subgroup_structure(G: AbelianGroup, generators) -> tuple[AbelianGroup, tuple[GroupElement, ...]]:
    """Invariant-factor type of <generators> together with a matching basis.

    Returns (H, basis) where basis[i] in G has order H.factors[i] and
    coords -> sum coords[i] * basis[i] is an isomorphism H -> <generators>.
    """
    elems = subgroup_elements(G, generators)
    size = len(elems)
    if size == 1:
        return AbelianGroup(()), ()
    # Sylow parts, each decomposed greedily into cyclic factors
    cyclic: dict[int, list[tuple[int, GroupElement]]] = {}
    for p, _ in factorize(size):
        P = [x for x in elems if _is_power_of(element_order(G, x), p)]
        span = {G.identity()}
        chosen = []
        while len(span) < len(P):
            best = None
            for y in P:
                oy = element_order(G, y)
                cyc = {G.scale(m, y) for m in range(oy)}
                if cyc & span != {G.identity()}:
                    continue
                if best is None or oy > best[0]:
                    best = (oy, y)
            if best is None:
                raise ArithmeticError("greedy basis search failed")
            oy, y = best
            chosen.append((oy, y))
            span = {G.add(s, G.scale(m, y)) for s in span for m in range(oy)}
        cyclic[p] = sorted(chosen, key=lambda t: -t[0])
    rank = max(len(v) for v in cyclic.values())
    factors = []
    basis = []
    for i in range(rank):
        n = 1
        g = G.identity()
        for v in cyclic.values():
            if i < len(v):
                n *= v[i][0]
                g = G.add(g, v[i][1])
        factors.append(n)
        basis.append(g)
    order = sorted(range(rank), key=lambda i: factors[i])
    return AbelianGroup(tuple(factors[i] for i in order)), tuple(basis[i] for i in order)


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def find_separating_element(G: AbelianGroup, lam1: LinearCharacter, lam2: LinearCharacter,
                            lam3: LinearCharacter) -> GroupElement | None:
    """First g (lexicographically) on which the three characters take distinct values."""
    if len({lam1, lam2, lam3}) != 3:
        raise ValueError("characters must be mutually distinct")
    for lam in (lam1, lam2, lam3):
        _check(G, lam.exponents)
    T = exponent_table(G)
    r1, r2, r3 = (T[G.index(GroupElement(l.exponents))] for l in (lam1, lam2, lam3))
    ok = (r1 != r2) & (r1 != r3) & (r2 != r3)
    if not ok.any():
        return None
    return GroupElement(tuple(int(c) for c in coordinate_array(G)[int(np.argmax(ok))]))


def order_spectrum(G: AbelianGroup) -> set[int]:
    return {element_order(G, g) for g in enumerate_elements(G)}


def abelian_groups_of_order(n: int) -> list[AbelianGroup]:
    """All isomorphism types of order n, sorted by factor tuple."""
    per_prime = []
    for p, e in factorize(n) if n > 1 else ():
        per_prime.append([[p**k for k in part] for part in _partitions(e)])
    groups = []
    for combo in itertools.product(*per_prime):
        groups.append(AbelianGroup.from_factors([q for part in combo for q in part]))
    if n == 1:
        groups = [AbelianGroup(())]
    return sorted(set(groups), key=lambda G: (len(G.factors), G.factors))


def _partitions(e: int, largest: int | None = None):
    if e == 0:
        yield []
        return
    largest = e if largest is None else largest
    for k in range(min(e, largest), 0, -1):
        for rest in _partitions(e - k, k):
            yield [k] + rest


def abelian_groups_up_to(bound: int) -> list[AbelianGroup]:
    return [G for n in range(1, bound + 1) for G in abelian_groups_of_order(n)]
