"""Independent reference implementations used to cross-check the package.

Nothing here imports tworoot: each oracle recomputes its answer from
first principles (integer polynomials, floating complex values checked
against rounded lookup sets, plain itertools enumeration).
"""

from __future__ import annotations

import cmath
import itertools
import math
from functools import lru_cache, reduce

import numpy as np

# -- integer polynomials -----------------------------------------------------


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_div_exact(num, den):
    """num / den over Z, asserting a zero remainder; coefficient lists low degree first."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c, r = divmod(num[i + len(den) - 1], den[-1])
        assert r == 0
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    assert not any(num), "division left a remainder"
    return q


def cyclotomic_by_division(n: int) -> list[int]:
    """Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = poly_div_exact(poly, cyclotomic_by_division(d))
    return poly


def phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


# -- numeric sums of roots of unity --------------------------------------------

SCALE = 10**6


def keys(z: np.ndarray) -> np.ndarray:
    """Integer lookup keys for complex values rounded to 6 decimals."""
    re = np.rint(np.real(z) * SCALE).astype(np.int64)
    im = np.rint(np.imag(z) * SCALE).astype(np.int64)
    return re * (4 * SCALE + 1) + im


def pair_keys(M: int) -> np.ndarray:
    """Keys of 0, every M-th root of unity, and every sum of two of them."""
    roots = np.exp(2j * np.pi * np.arange(M) / M)
    pairs = (roots[:, None] + roots[None, :]).ravel()
    return np.unique(keys(np.concatenate([[0], roots, pairs])))


@lru_cache(maxsize=8)
def _pair_sums(M: int):
    roots = np.exp(2j * np.pi * np.arange(M) / M)
    a, b = np.triu_indices(M)
    return roots[a] + roots[b], a, b


def brute_two_root(value: complex, M: int) -> tuple[int, int] | None:
    """Exponents (a, b) with zeta_M^a + zeta_M^b == value numerically, or None."""
    sums, a, b = _pair_sums(M)
    i = int(np.argmin(np.abs(sums - value)))
    return (int(a[i]), int(b[i])) if abs(sums[i] - value) < 1e-9 else None


# -- naive two-root search -----------------------------------------------------


def group_tables(factors):
    """Elements, characters (both lexicographic) and the complex value matrix."""
    pts = list(itertools.product(*(range(n) for n in factors)))
    V = np.ones((len(pts), len(pts)), dtype=complex)
    for i, a in enumerate(pts):
        for j, g in enumerate(pts):
            V[i, j] = cmath.exp(2j * math.pi * sum(x * y / n for x, y, n in zip(a, g, factors)))
    return pts, V


def naive_two_root_search(factors, window: int = 4) -> set[tuple[int, ...]]:
    """Every coefficient vector in {0..window}^n with min 0 whose values off the
    identity are 0, a root of unity, or a sum of two, tested numerically against
    roots of order dividing 24 * exponent.
    """
    n = reduce(lambda a, b: a * b, factors, 1)
    exponent = reduce(math.lcm, factors, 1)
    good = pair_keys(24 * exponent)
    _, V = group_tables(factors)
    Z = V[:, 1:]
    out = set()
    grid = np.array(list(itertools.product(range(window + 1), repeat=n)), dtype=np.int64)
    grid = grid[grid.min(axis=1) == 0]
    for start in range(0, len(grid), 1 << 16):
        C = grid[start:start + (1 << 16)]
        if n == 1:
            ok = np.ones(len(C), dtype=bool)
        else:
            ok = np.isin(keys(C @ Z), good).all(axis=1)
        out.update(tuple(int(x) for x in row) for row in C[ok])
    return out


# -- vanishing sub-multisets ---------------------------------------------------


def numeric_vanishes(angles) -> bool:
    return abs(sum(cmath.exp(2j * math.pi * t) for t in angles)) < 1e-9


def brute_minimal(fracs) -> bool:
    """fracs: terms as fractions of a full turn.  Minimal vanishing by enumeration."""
    if not fracs or not numeric_vanishes(fracs):
        return False
    w = len(fracs)
    for r in range(1, w):
        for sub in itertools.combinations(range(w), r):
            if numeric_vanishes([fracs[i] for i in sub]):
                return False
    return True


# -- prime graphs ----------------------------------------------------------------


def primes_of(m: int) -> set[int]:
    out, p = set(), 2
    while p * p <= m:
        while m % p == 0:
            out.add(p)
            m //= p
        p += 1
    if m > 1:
        out.add(m)
    return out


def components_by_bfs(vertices, edges) -> list[set[int]]:
    adj = {v: set() for v in vertices}
    for p, q in edges:
        adj[p].add(q)
        adj[q].add(p)
    seen, out = set(), []
    for v in sorted(vertices):
        if v in seen:
            continue
        comp, todo = set(), [v]
        while todo:
            x = todo.pop()
            if x in comp:
                continue
            comp.add(x)
            todo.extend(adj[x] - comp)
        seen |= comp
        out.append(comp)
    return out
