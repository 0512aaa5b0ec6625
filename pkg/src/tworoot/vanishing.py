"""Vanishing sums of roots of unity.

All vanishing tests are exact: every term zeta_L^k is mapped to the integer
coordinate vector of x^k mod Phi_L, so a sub-multiset vanishes iff the sum
of its rows is the zero vector.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from .cyclotomic import Cyclotomic, RootOfUnity, _reduce, euler_phi, lcm, prime_divisors

MAX_MINIMALITY_WEIGHT = 20
MAX_ENUM_WEIGHT = 8
MAX_ENUM_ORDER = 60
_CHUNK = 1 << 16


@dataclass(frozen=True)
class RootSum:
    """A multiset of roots of unity, stored sorted."""

    terms: tuple[RootOfUnity, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(sorted(self.terms)))

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> "RootSum":
        """RootSum.of((5, 1), (5, 2)) is zeta_5 + zeta_5^2."""
        return cls(tuple(RootOfUnity.of(n, k) for n, k in pairs))

    @property
    def weight(self) -> int:
        return len(self.terms)

    @property
    def conductor(self) -> int:
        return reduce(lcm, (t.order for t in self.terms), 1)

    def rotate(self, eps: RootOfUnity) -> "RootSum":
        return RootSum(tuple(t * eps for t in self.terms))

    def __add__(self, other: "RootSum") -> "RootSum":
        return RootSum(self.terms + other.terms)

    def __str__(self) -> str:
        return "{" + ", ".join(str(t) for t in self.terms) + "}"


def sum_value(s: RootSum) -> Cyclotomic:
    L = s.conductor
    counts = [0] * L
    for t in s.terms:
        counts[t.exponent_at(L)] += 1
    return Cyclotomic.from_exponents(L, counts)


@lru_cache(maxsize=128)
def _root_vectors(L: int) -> np.ndarray:
    """Row k holds the coordinates of zeta_L^k in the power basis mod Phi_L."""
    rows = []
    for k in range(L):
        e = [0] * (k + 1)
        e[k] = 1
        rows.append(_reduce(L, e))
    R = np.array(rows, dtype=np.int64).reshape(L, euler_phi(L))
    R.setflags(write=False)
    return R


def _term_matrix(terms) -> np.ndarray:
    L = reduce(lcm, (t.order for t in terms), 1)
    R = _root_vectors(L)
    return R[[t.exponent_at(L) for t in terms]]


def is_minimal_vanishing(s: RootSum) -> bool:
    """Sum is zero, weight >= 1, and no proper nonempty sub-multiset sums to zero."""
    w = s.weight
    if w > MAX_MINIMALITY_WEIGHT:
        raise ValueError(f"weight {w} exceeds the exhaustive-check guard {MAX_MINIMALITY_WEIGHT}")
    if w == 0:
        return False
    V = _term_matrix(s.terms)
    if V.sum(axis=0).any():
        return False
    # a proper vanishing part forces a vanishing complement, so sizes up to w//2 suffice
    return not _first_vanishing(V, range(1, w // 2 + 1))


def _first_vanishing(V: np.ndarray, sizes) -> tuple[int, ...] | None:
    w = V.shape[0]
    for k in sizes:
        combos = itertools.combinations(range(w), k)
        while True:
            block = np.array(list(itertools.islice(combos, _CHUNK)), dtype=np.int64)
            if block.size == 0:
                break
            hit = ~V[block].sum(axis=1).any(axis=1)
            if hit.any():
                return tuple(int(i) for i in block[int(np.argmax(hit))])
    return None


# -- decomposition -----------------------------------------------------------


class LemmaViolation(Exception):
    """A minimal part over at most two primes that is not a rotated prime cycle."""


@dataclass(frozen=True)
class Decomposition:
    """Partition into minimal vanishing parts.

    ``rotations[i]`` is eps with parts[i] = eps * {zeta_p^j} when that
    structure was checked, else None.
    """

    parts: tuple[RootSum, ...]
    primes: tuple[int, ...]
    rotations: tuple[tuple[RootOfUnity, int] | None, ...]

    def __str__(self) -> str:
        lines = []
        for part, rot in zip(self.parts, self.rotations):
            tail = f"  rotation={rot[0]} cycle={rot[1]}" if rot else ""
            lines.append(f"{part}{tail}")
        return "\n".join(lines)


def prime_cycle(p: int, eps: RootOfUnity = RootOfUnity(1, 0)) -> RootSum:
    return RootSum(tuple(RootOfUnity.of(p, i) * eps for i in range(p)))


def as_rotated_cycle(part: RootSum) -> tuple[RootOfUnity, int] | None:
    """(eps, p) with part = eps * {zeta_p^i : i < p}, eps the least term."""
    p = part.weight
    if p < 2 or len(prime_divisors(p)) != 1 or prime_divisors(p)[0] != p:
        return None
    eps = part.terms[0]
    return (eps, p) if prime_cycle(p, eps) == part else None


def decompose(s: RootSum) -> Decomposition:
    """Split a vanishing multiset into minimal vanishing parts.

    Parts are peeled off smallest first (lexicographic in term order among
    equal sizes); a smallest vanishing sub-multiset is automatically minimal.
    """
    if s.weight == 0:
        return Decomposition((), (), ())
    V = _term_matrix(s.terms)
    if V.sum(axis=0).any():
        raise ValueError(f"{s} does not sum to zero")
    primes = tuple(sorted({p for t in s.terms for p in prime_divisors(t.order)}))
    remaining = list(range(s.weight))
    parts = []
    while remaining:
        sub = V[remaining]
        idx = _first_vanishing(sub, range(1, len(remaining) + 1))
        assert idx is not None
        chosen = [remaining[i] for i in idx]
        parts.append(RootSum(tuple(s.terms[i] for i in chosen)))
        remaining = [i for i in remaining if i not in chosen]
    rotations = []
    for part in parts:
        rot = as_rotated_cycle(part)
        if rot is None and len(primes) <= 2:
            raise LemmaViolation(f"minimal part {part} over primes {primes} is not a rotated prime cycle")
        rotations.append(rot)
    return Decomposition(tuple(parts), primes, tuple(rotations))


# -- enumeration -------------------------------------------------------------


def canonical_rotation(s: RootSum) -> RootSum:
    """Least (in sorted-term order) rotation of s that contains 1."""
    if s.weight == 0:
        return s
    return min((s.rotate(t.inverse()) for t in set(s.terms)), key=lambda r: r.terms)


def enumerate_minimal_vanishing(weight: int, order_bound: int) -> list[RootSum]:
    """Rotation classes of minimal vanishing sums of the given weight, term orders dividing N."""
    w, N = weight, order_bound
    if not 1 <= w <= MAX_ENUM_WEIGHT:
        raise ValueError(f"weight must be in 1..{MAX_ENUM_WEIGHT}")
    if not 1 <= N <= MAX_ENUM_ORDER:
        raise ValueError(f"order bound must be in 1..{MAX_ENUM_ORDER}")
    R = _root_vectors(N)
    classes = set()
    if w == 1:
        return []
    # rotate so one term is 1; the other w-1 exponents are nondecreasing
    combos = itertools.combinations_with_replacement(range(N), w - 1)
    while True:
        block = np.array(list(itertools.islice(combos, _CHUNK)), dtype=np.int64)
        if block.size == 0:
            break
        sums = R[block].sum(axis=1) + R[0]
        for row in block[~sums.any(axis=1)]:
            s = RootSum(tuple(RootOfUnity.of(N, int(k)) for k in (0, *row)))
            if is_minimal_vanishing(s):
                classes.add(canonical_rotation(s))
    return sorted(classes, key=lambda r: r.terms)
