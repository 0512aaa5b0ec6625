"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A value is stored at some order ``n`` as rational coordinates in the power
basis ``1, z, ..., z^(phi(n)-1)`` of Q[x]/Phi_n(x).  Binary operations lift
both operands to the lcm of their orders.  Coordinates are kept as integer
numerators over one shared positive denominator.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

TWO_PI = 2.0 * math.pi
PRUNE_TOL = 1e-6


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n`` as ``((p, e), ...)`` with p ascending."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(p for p, _ in factorize(n))


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**i for d in ds for i in range(e + 1)]
    return sorted(ds)


def _mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    # den is monic
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            q[i - dd] = c
            for j, d in enumerate(den):
                num[i - dd + j] -= c * d
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    num: list[int] = [1]
    den: list[int] = [1]
    for d in divisors(n):
        mu = _mobius(n // d)
        if mu:
            factor = [-1] + [0] * (d - 1) + [1]
            if mu > 0:
                num = _poly_mul(num, factor)
            else:
                den = _poly_mul(den, factor)
    return tuple(_poly_divexact(num, den))


@lru_cache(maxsize=None)
def _modulus(n: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    phi = cyclotomic_polynomial(n)
    return len(phi) - 1, tuple((j, c) for j, c in enumerate(phi[:-1]) if c)


def _reduce(n: int, vec: Iterable[int]) -> list[int]:
    """Reduce a coefficient list in powers of x modulo Phi_n."""
    deg, terms = _modulus(n)
    v = list(vec)
    for i in range(len(v) - 1, deg - 1, -1):
        c = v[i]
        if c:
            base = i - deg
            for j, pc in terms:
                v[base + j] -= c * pc
    if len(v) < deg:
        v.extend([0] * (deg - len(v)))
    del v[deg:]
    return v


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    g = den
    for x in nums:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if g != 1:
        nums = [x // g for x in nums]
        den //= g
    return tuple(nums), den


def _descend_coprime(n: int, p: int, nums: Sequence[int]) -> list[int] | None:
    """Coordinates over Q(zeta_{n/p}) when p exactly divides n, else None."""
    m = n // p
    u = pow(p, -1, m) if m > 1 else 0
    v = (1 - u * p) // m  # zeta_n = zeta_m^u * zeta_p^v
    cols = [[0] * m for _ in range(p)]
    for i, c in enumerate(nums):
        if c:
            cols[(v * i) % p][(u * i) % m] += c
    last = cols[p - 1]
    red = []
    for t in range(p - 1):
        col = _reduce(m, [a - b for a, b in zip(cols[t], last)])
        if t and any(col):
            return None
        red.append(col)
    return red[0]


def _minimal_form(n: int, nums: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    changed = True
    while changed and n > 1:
        changed = False
        for p, e in factorize(n):
            if e >= 2:
                if all(c == 0 for i, c in enumerate(nums) if i % p):
                    nums = nums[::p]
                    n //= p
                    changed = True
                    break
            else:
                r = _descend_coprime(n, p, nums)
                if r is not None:
                    nums = tuple(r)
                    n //= p
                    changed = True
                    break
    return n, nums


class Cyclotomic:
    """An element of Q(zeta_order) in reduced power-basis form."""

    __slots__ = ("order", "_nums", "_den", "_key")

    def __init__(self, order: int, coeffs: Sequence[int | Fraction] = ()):
        if order < 1:
            raise ValueError("order must be positive")
        deg = euler_phi(order)
        fr = [Fraction(c) for c in coeffs]
        if len(fr) > deg:
            # accept unreduced input and reduce it
            den = 1
            for c in fr:
                den = lcm(den, c.denominator)
            ints = _reduce(order, [int(c * den) for c in fr])
        else:
            fr += [Fraction(0)] * (deg - len(fr))
            den = 1
            for c in fr:
                den = lcm(den, c.denominator)
            ints = [int(c * den) for c in fr]
        self.order = order
        self._nums, self._den = _normalize(ints, den)
        self._key = None

    @classmethod
    def _raw(cls, order: int, nums: Sequence[int], den: int = 1) -> "Cyclotomic":
        obj = object.__new__(cls)
        obj.order = order
        obj._nums, obj._den = _normalize(list(nums), den)
        obj._key = None
        return obj

    @classmethod
    def from_exponents(cls, n: int, counts: Sequence[int] | dict[int, int]) -> "Cyclotomic":
        """sum_k counts[k] * zeta_n^k for integer multiplicities."""
        full = [0] * n
        items = counts.items() if isinstance(counts, dict) else enumerate(counts)
        for k, c in items:
            if c:
                full[k % n] += int(c)
        return cls._raw(n, _reduce(n, full))

    @classmethod
    def rational(cls, r: int | Fraction) -> "Cyclotomic":
        r = Fraction(r)
        return cls._raw(1, [r.numerator], r.denominator)

    # -- coordinates -------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._nums)

    def lift(self, n: int) -> "Cyclotomic":
        """Same value re-expressed at order n (a multiple of self.order)."""
        if n == self.order:
            return self
        if n % self.order:
            raise ValueError(f"cannot lift order {self.order} to {n}")
        step = n // self.order
        full = [0] * n
        for i, c in enumerate(self._nums):
            if c:
                full[i * step] = c
        return Cyclotomic._raw(n, _reduce(n, full), self._den)

    def _common(self, other: "Cyclotomic") -> tuple["Cyclotomic", "Cyclotomic"]:
        if self.order == other.order:
            return self, other
        n = lcm(self.order, other.order)
        return self.lift(n), other.lift(n)

    def minimal(self) -> tuple[int, tuple[Fraction, ...]]:
        """(conductor, coordinates) of the canonical form at minimal order."""
        return self._canonical()[0], tuple(Fraction(x, self._den) for x in self._canonical()[1])

    def _canonical(self) -> tuple[int, tuple[int, ...], int]:
        if self._key is None:
            n, nums = _minimal_form(self.order, self._nums)
            self._key = (n, nums, self._den)
        return self._key

    @property
    def conductor(self) -> int:
        return self._canonical()[0]

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, RootOfUnity):
            return x.value()
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.rational(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(other)
        den = lcm(a._den, b._den)
        fa, fb = den // a._den, den // b._den
        return Cyclotomic._raw(a.order, [x * fa + y * fb for x, y in zip(a._nums, b._nums)], den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.order, [-x for x in self._nums], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(other)
        if a.order == 1:
            return Cyclotomic._raw(1, [a._nums[0] * b._nums[0]], a._den * b._den)
        prod = _poly_mul(a._nums, b._nums)
        return Cyclotomic._raw(a.order, _reduce(a.order, prod), a._den * b._den)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are only defined for roots of unity")
        out = Cyclotomic.rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Cyclotomic":
        n = self.order
        full = [0] * n
        for i, c in enumerate(self._nums):
            if c:
                full[(-i) % n] += c
        return Cyclotomic._raw(n, _reduce(n, full), self._den)

    def galois(self, a: int) -> "Cyclotomic":
        """Image under zeta_n -> zeta_n^a, gcd(a, n) = 1."""
        n = self.order
        if gcd(a, n) != 1:
            raise ValueError(f"{a} is not a unit mod {n}")
        full = [0] * n
        for i, c in enumerate(self._nums):
            if c:
                full[(a * i) % n] += c
        return Cyclotomic._raw(n, _reduce(n, full), self._den)

    def abs_square(self) -> "Cyclotomic":
        return self * self.conjugate()

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self._nums)

    def as_rational(self) -> Fraction | None:
        if any(self._nums[1:]):
            return None
        return Fraction(self._nums[0] if self._nums else 0, self._den)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return a._den == b._den and a._nums == b._nums

    def __hash__(self) -> int:
        n, nums, den = self._canonical()
        if n == 1:
            return hash(Fraction(nums[0], den))
        return hash((n, nums, den))

    def __complex__(self) -> complex:
        return complex_approximation(self)

    def __repr__(self) -> str:
        return f"Cyclotomic({format_cyclotomic(self)!r})"

    def __str__(self) -> str:
        return format_cyclotomic(self)


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """zeta_order^exponent with ``order`` the exact multiplicative order."""

    order: int
    exponent: int

    def __post_init__(self):
        if self.order < 1 or not 0 <= self.exponent < self.order:
            raise ValueError(f"bad root of unity ({self.order}, {self.exponent})")
        if gcd(self.exponent, self.order) != 1 and self.order != 1:
            raise ValueError(f"({self.order}, {self.exponent}) is not in lowest terms")

    @classmethod
    def of(cls, n: int, k: int) -> "RootOfUnity":
        """Canonical form of zeta_n^k."""
        k %= n
        g = gcd(k, n)
        return cls(n // g, k // g)

    def value(self) -> Cyclotomic:
        return zeta(self.order, self.exponent)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        n = lcm(self.order, other.order)
        return RootOfUnity.of(n, self.exponent * (n // self.order) + other.exponent * (n // other.order))

    def __neg__(self) -> "RootOfUnity":
        return self * RootOfUnity(2, 1)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity.of(self.order, -self.exponent)

    conjugate = inverse

    def power(self, k: int) -> "RootOfUnity":
        return RootOfUnity.of(self.order, self.exponent * k)

    def exponent_at(self, n: int) -> int:
        """k with self == zeta_n^k; n must be a multiple of the order."""
        if n % self.order:
            raise ValueError(f"order {self.order} does not divide {n}")
        return self.exponent * (n // self.order)

    def __complex__(self) -> complex:
        return cmath.exp(2j * math.pi * self.exponent / self.order)

    def __str__(self) -> str:
        if self.order == 1:
            return "1"
        if self.order == 2:
            return "-1"
        if self.exponent == 1:
            return f"E({self.order})"
        return f"E({self.order})^{self.exponent}"


ONE = RootOfUnity(1, 0)


@dataclass(frozen=True)
class Witness:
    """A certificate that a value is 0, one root, or a sum of two roots."""

    roots: tuple[RootOfUnity, ...]

    @property
    def kind(self) -> str:
        return ("zero", "one", "two")[len(self.roots)]

    def value(self) -> Cyclotomic:
        total = Cyclotomic.rational(0)
        for r in self.roots:
            total = total + r.value()
        return total

    def is_doubled(self) -> bool:
        """True for 2*eps."""
        return len(self.roots) == 2 and self.roots[0] == self.roots[1]

    def __str__(self) -> str:
        if not self.roots:
            return "0"
        return " + ".join(str(r) for r in self.roots)


# -- module-level operations ------------------------------------------------


def zeta(n: int, k: int = 1) -> Cyclotomic:
    if n < 1:
        raise ValueError("n must be positive")
    k %= n
    if k < euler_phi(n):
        nums = [0] * euler_phi(n)
        nums[k] = 1
        return Cyclotomic._raw(n, nums)
    full = [0] * (k + 1)
    full[k] = 1
    return Cyclotomic._raw(n, _reduce(n, full))


def add(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a + b


def negate(a: Cyclotomic) -> Cyclotomic:
    return -a


def multiply(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a * b


def conjugate(a: Cyclotomic) -> Cyclotomic:
    return a.conjugate()


def as_rational_integer(a: Cyclotomic) -> int | None:
    r = a.as_rational()
    if r is None or r.denominator != 1:
        return None
    return r.numerator


@lru_cache(maxsize=4096)
def _unit_powers(n: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * math.pi * i / n) for i in range(euler_phi(n)))


def complex_approximation(a: Cyclotomic) -> complex:
    pw = _unit_powers(a.order)
    total = 0j
    for x, z in zip(a._nums, pw):
        if x:
            total += x * z
    return total / a._den


def as_root_of_unity(a: Cyclotomic) -> RootOfUnity | None:
    """The root of unity equal to ``a``, or None."""
    if a._den != 1:
        return None
    z = complex_approximation(a)
    if abs(abs(z) - 1.0) > PRUNE_TOL:
        return None
    # every root of unity in Q(zeta_n) has order dividing lcm(2, n)
    L = lcm(2, a.order)
    k = round(cmath.phase(z) * L / TWO_PI) % L
    cand = RootOfUnity.of(L, k)
    if abs(complex(cand) - z) > PRUNE_TOL:
        return None
    return cand if cand.value() == a else None


def _admissible_root(r: RootOfUnity, base: int) -> bool:
    # generates an extension of degree <= 2 over Q(zeta_base)
    return euler_phi(lcm(r.order, base)) <= 2 * euler_phi(base)


def candidate_bound(n: int) -> int:
    """Common multiple of all candidate root orders for a value of order n."""
    return 12 * lcm(2, n)


def two_root_decomposition(a: Cyclotomic) -> Witness | None:
    """Write ``a`` as 0, one root of unity, or a sum of two roots of unity.

    For nonzero ``a`` the unordered pair {e1, e2} with e1 + e2 = a is unique
    (two unit circles meet in at most two points), so a rounded floating
    guess followed by an exact check decides the question.  Candidate roots
    have order dividing 12*lcm(2, n) and generate an extension of degree at
    most two over Q(zeta_lcm(2, n)).
    """
    if a.is_zero():
        return Witness(())
    r = as_root_of_unity(a)
    if r is not None:
        return Witness((r,))
    if a._den != 1:
        return None
    z = complex_approximation(a)
    mod = abs(z)
    if mod > 2.0 + PRUNE_TOL:
        return None
    base = lcm(2, a.order)
    L = candidate_bound(a.order)
    phase = cmath.phase(z)
    half = math.acos(min(mod / 2.0, 1.0))
    k1 = round((phase + half) * L / TWO_PI) % L
    k2 = round((phase - half) * L / TWO_PI) % L
    r1, r2 = sorted((RootOfUnity.of(L, k1), RootOfUnity.of(L, k2)))
    if abs(complex(r1) + complex(r2) - z) > PRUNE_TOL:
        return None
    if not (_admissible_root(r1, base) and _admissible_root(r2, base)):
        return None
    if r1.value() + r2.value() != a:
        return None
    return Witness((r1, r2))


# -- text syntax ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(E)|(.))")


class CyclotomicSyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list[str]:
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok.isspace():
            continue
        toks.append(tok)
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise CyclotomicSyntaxError(f"expected {expected or 'token'} in {self.text!r}, got {tok!r}")
        self.i += 1
        return tok

    def integer(self) -> int:
        tok = self.take()
        if not tok.isdigit():
            raise CyclotomicSyntaxError(f"expected integer in {self.text!r}, got {tok!r}")
        return int(tok)

    def parse(self) -> Cyclotomic:
        val = self.expr()
        if self.peek() is not None:
            raise CyclotomicSyntaxError(f"trailing input {self.peek()!r} in {self.text!r}")
        return val

    def expr(self) -> Cyclotomic:
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> Cyclotomic:
        val = self.unary()
        while self.peek() == "*":
            self.take()
            val = val * self.unary()
        return val

    def unary(self) -> Cyclotomic:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Cyclotomic:
        tok = self.peek()
        if tok == "E":
            self.take()
            self.take("(")
            n = self.integer()
            self.take(")")
            k = 1
            if self.peek() == "^":
                self.take()
                sign = 1
                if self.peek() == "-":
                    self.take()
                    sign = -1
                k = sign * self.integer()
            if n < 1:
                raise CyclotomicSyntaxError(f"E({n}) is undefined")
            return zeta(n, k)
        if tok == "(":
            self.take()
            val = self.expr()
            self.take(")")
        elif tok is not None and tok.isdigit():
            num = self.integer()
            if self.peek() == "/":
                self.take()
                d = self.integer()
                if d == 0:
                    raise CyclotomicSyntaxError("zero denominator")
                val = Cyclotomic.rational(Fraction(num, d))
            else:
                val = Cyclotomic.rational(num)
        else:
            raise CyclotomicSyntaxError(f"unexpected {tok!r} in {self.text!r}")
        if self.peek() == "^":
            self.take()
            val = val ** self.integer()
        return val


def parse_cyclotomic(text: str) -> Cyclotomic:
    """Parse ``E(n)^k`` style literals, e.g. ``2*E(5)^2 - E(5) + 1/2``."""
    if not text.strip():
        raise CyclotomicSyntaxError("empty expression")
    return _Parser(text).parse()


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_cyclotomic(a: Cyclotomic) -> str:
    """Canonical text at the minimal conductor, lowest power first."""
    n, nums, den = a._canonical()
    parts: list[str] = []
    for i, x in enumerate(nums):
        if not x:
            continue
        c = Fraction(x, den)
        if i == 0:
            body, mag = None, abs(c)
        else:
            body = f"E({n})" if i == 1 else f"E({n})^{i}"
            mag = abs(c)
        if body is None:
            s = _format_coeff(mag)
        elif mag == 1:
            s = body
        else:
            s = f"{_format_coeff(mag)}*{body}"
        if not parts:
            parts.append(s if c > 0 else f"-{s}")
        else:
            parts.append(("+ " if c > 0 else "- ") + s)
    return " ".join(parts) if parts else "0"
