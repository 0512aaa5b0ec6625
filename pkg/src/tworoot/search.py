"""Exhaustive search for two-root generalized characters of abelian groups.

Up to adding multiples of rho, a two-root character has coefficients in a
window {a, a+1, a+2}.  We shift so the least coefficient is 0 and enumerate
every assignment whose value counts (a0, a1, a2) pass the norm inequality,
reject numerically, and confirm survivors exactly.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .abelian import AbelianGroup, abelian_groups_up_to, exponent_table
from .cyclotomic import PRUNE_TOL, Witness, candidate_bound, prime_divisors
from .genchar import (
    Classification,
    GeneralizedCharacter,
    TheoremViolation,
    classify_shape,
    shapes,
    two_root_values,
    types_of,
)

DEFAULT_MAX_ORDER = 24
_CHUNK = 1 << 14


@dataclass(frozen=True, order=True)
class CountTriple:
    a0: int
    a1: int
    a2: int

    @property
    def n(self) -> int:
        return self.a0 + self.a1 + self.a2

    def norm_excess(self) -> int:
        """4(n-1) minus the left side; admissible iff >= 0."""
        return 4 * (self.n - 1) - (self.a0 * self.a1 + self.a1 * self.a2 + 4 * self.a0 * self.a2)

    @property
    def admissible(self) -> bool:
        return self.n >= 1 and self.norm_excess() >= 0

    def centred_norm(self) -> float:
        """sum over Irr of (c - mean)^2 for values 0, 1, 2 with these counts."""
        n = self.n
        return (n * (self.a1 + 4 * self.a2) - (self.a1 + 2 * self.a2) ** 2) / n


def admissible_count_triples(n: int) -> list[CountTriple]:
    """All count triples summing to n that satisfy the norm inequality.

    For values a, a+1, a+2 with counts a0, a1, a2, shifting so chi(1) = 0
    and bounding sum_{g != 1} |chi(g)|^2 <= 4(n - 1) gives
    n * sum (c - mean)^2 = a0 a1 + a1 a2 + 4 a0 a2 <= 4(n - 1).
    """
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    for a0 in range(n + 1):
        for a1 in range(n - a0 + 1):
            t = CountTriple(a0, a1, n - a0 - a1)
            if t.admissible:
                out.append(t)
    return out


# -- numeric prefilter -------------------------------------------------------


def _numeric_two_root(V: np.ndarray, L: int, tol: float = PRUNE_TOL) -> np.ndarray:
    """Row mask: every entry is within tol of 0, a root, or a sum of two roots of order | L.

    The two candidate roots are phase +- acos(|v|/2) snapped to the L-grid;
    a genuine witness always snaps to itself, so a rejection at distance
    > tol is safe.
    """
    a = np.abs(V)
    phase = np.angle(V)
    step = 2 * np.pi / L
    one = np.exp(1j * step * np.round(phase / step))
    ok = (a < tol) | (np.abs(one - V) < tol)
    half = np.arccos(np.clip(a / 2, 0.0, 1.0))
    r1 = np.exp(1j * step * np.round((phase + half) / step))
    r2 = np.exp(1j * step * np.round((phase - half) / step))
    ok |= np.abs(r1 + r2 - V) < tol
    return ok.all(axis=1)


@lru_cache(maxsize=64)
def _value_matrix(G: AbelianGroup) -> np.ndarray:
    """Z[i, j] = chi_i(g_j) as complex numbers, identity column dropped."""
    T = exponent_table(G)
    return np.exp(2j * np.pi * T[:, 1:] / G.exponent)


def _triple_candidates(n: int, t: CountTriple):
    """Yield coefficient arrays (chunks) with a2 twos, a1 ones, a0 zeros."""
    buf = []
    for twos in itertools.combinations(range(n), t.a2):
        rest = [i for i in range(n) if i not in twos]
        for ones in itertools.combinations(rest, t.a1):
            row = [0] * n
            for i in twos:
                row[i] = 2
            for i in ones:
                row[i] = 1
            buf.append(row)
            if len(buf) >= _CHUNK:
                yield np.array(buf, dtype=np.int64)
                buf = []
    if buf:
        yield np.array(buf, dtype=np.int64)


@dataclass
class ItemStats:
    candidates: int = 0
    numeric_rejected: int = 0
    numeric_accepted: int = 0
    exact_rejected: int = 0
    audited: int = 0

    def merge(self, other: "ItemStats") -> None:
        for f in ("candidates", "numeric_rejected", "numeric_accepted", "exact_rejected", "audited"):
            setattr(self, f, getattr(self, f) + getattr(other, f))


class PruningError(AssertionError):
    """The numeric prefilter rejected a genuine solution (audit failure)."""


def _search_item(G: AbelianGroup, t: CountTriple, audit_fraction: float, seed: int):
    n = G.order
    Z = _value_matrix(G)
    L = candidate_bound(G.exponent)
    rng = np.random.default_rng([seed, t.a0, t.a1, t.a2, *G.factors])
    stats = ItemStats()
    found = []
    for C in _triple_candidates(n, t):
        stats.candidates += len(C)
        if n == 1:
            mask = np.ones(len(C), dtype=bool)
        else:
            mask = _numeric_two_root(C @ Z, L)
        stats.numeric_accepted += int(mask.sum())
        stats.numeric_rejected += int((~mask).sum())
        for row in C[mask]:
            chi = GeneralizedCharacter(G, tuple(int(x) for x in row))
            if two_root_values(chi) is None:
                stats.exact_rejected += 1
            else:
                found.append(chi.coeffs)
        rejects = np.flatnonzero(~mask)
        if audit_fraction > 0 and len(rejects):
            picks = rejects[rng.random(len(rejects)) < audit_fraction]
            for i in picks:
                stats.audited += 1
                chi = GeneralizedCharacter(G, tuple(int(x) for x in C[i]))
                if two_root_values(chi) is not None:
                    raise PruningError(f"numeric prefilter rejected a solution on {G}: {chi.coeffs}")
    return found, stats


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class Solution:
    coeffs: tuple[int, ...]
    classification: Classification
    witnesses: tuple[Witness, ...]  # one per nonidentity element, enumeration order
    negation: int  # index of the min-zero normalization of -chi

    def character(self, G: AbelianGroup) -> GeneralizedCharacter:
        return GeneralizedCharacter(G, self.coeffs)


@dataclass
class SearchReport:
    group: AbelianGroup
    solutions: list[Solution]
    stats: ItemStats = field(default_factory=ItemStats)
    elapsed: float = 0.0

    def characters(self) -> list[GeneralizedCharacter]:
        return [s.character(self.group) for s in self.solutions]

    def coefficient_set(self) -> set[tuple[int, ...]]:
        return {s.coeffs for s in self.solutions}


def search_two_root(G: AbelianGroup, max_order: int = DEFAULT_MAX_ORDER, jobs: int = 1,
                    audit_fraction: float = 0.01, seed: int = 0) -> SearchReport:
    """All two-root generalized characters of G up to multiples of rho."""
    n = G.order
    if n > max_order:
        raise ValueError(f"|G| = {n} exceeds the search bound {max_order}")
    start = time.perf_counter()
    items = [t for t in admissible_count_triples(n) if t.a0 >= 1]
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_search_item, [G] * len(items), items,
                                    [audit_fraction] * len(items), [seed] * len(items)))
    else:
        results = [_search_item(G, t, audit_fraction, seed) for t in items]
    stats = ItemStats()
    coeff_list = []
    for found, st in results:
        stats.merge(st)
        coeff_list.extend(found)
    coeff_list.sort()
    position = {c: i for i, c in enumerate(coeff_list)}
    solutions = []
    for c in coeff_list:
        chi = GeneralizedCharacter(G, c)
        wit = two_root_values(chi)
        neg = tuple(max(c) - x for x in c)
        solutions.append(Solution(c, classify_shape(chi), tuple(wit.values()), position[neg]))
    return SearchReport(G, solutions, stats, time.perf_counter() - start)


@lru_cache(maxsize=None)
def cached_search(G: AbelianGroup, max_order: int = DEFAULT_MAX_ORDER) -> SearchReport:
    """Sweep cache; one search per group per process."""
    return search_two_root(G, max_order=max(max_order, G.order))


# -- verification drivers ----------------------------------------------------


@dataclass
class Verdict:
    claim: str
    passed: bool
    lines: list[str] = field(default_factory=list)
    counterexample: tuple | None = None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


def _coprime_to_30(n: int) -> bool:
    return not set(prime_divisors(n)) & {2, 3, 5} if n > 1 else True


def verify_main_theorem(bound: int = 21, jobs: int = 1) -> Verdict:
    """Every two-root solution fits an allowed shape; coprime-to-30 orders are Standard only."""
    v = Verdict("main-theorem", True)
    for G in abelian_groups_up_to(bound):
        try:
            rep = _search_for_sweep(G, bound, jobs)
        except TheoremViolation as exc:
            v.passed = False
            v.counterexample = (G.name(), exc.coeffs)
            v.lines.append(f"group={G.name()} violation coeffs={list(exc.coeffs)}")
            return v
        tags = sorted({s.classification.tag for s in rep.solutions})
        v.lines.append(f"group={G.name()} solutions={len(rep.solutions)} tags={','.join(tags)}")
        if _coprime_to_30(G.order) and tags != ["Standard"]:
            v.passed = False
            bad = next(s for s in rep.solutions if s.classification.tag != "Standard")
            v.counterexample = (G.name(), bad.coeffs)
            v.lines.append(f"group={G.name()} non-standard solution {list(bad.coeffs)}")
    return v


def _search_for_sweep(G: AbelianGroup, bound: int, jobs: int) -> SearchReport:
    if jobs > 1:
        return search_two_root(G, max_order=max(bound, G.order), jobs=jobs)
    return cached_search(G, max(DEFAULT_MAX_ORDER, bound))


def _signed_sizes(chi: GeneralizedCharacter) -> set[int]:
    """k such that chi = a*rho +- (k distinct irreducibles) for some a."""
    return {t.k + t.l for t in types_of(chi) if t.k == 0 or t.l == 0}


def _corollary_shape(chi: GeneralizedCharacter) -> str | None:
    n = chi.group.order
    if any(s.tag == "OutlierIV" for s in shapes(chi)):
        return "OutlierIV"
    sizes = _signed_sizes(chi)
    for order, k in ((21, 5), (16, 6), (15, 7)):
        if n == order and k in sizes:
            return f"k={k}"
    return None


def verify_corollary13(bound: int = 24, jobs: int = 1) -> Verdict:
    v = Verdict("corollary-13", True)
    doubled_checked = 0
    for G in abelian_groups_up_to(bound):
        rep = _search_for_sweep(G, bound, jobs)
        for sol in rep.solutions:
            chi = sol.character(G)
            sizes = _signed_sizes(chi)
            if 6 in sizes and G.order > 16 or 7 in sizes and G.order > 15:
                v.passed = False
                v.counterexample = (G.name(), sol.coeffs)
                v.lines.append(f"group={G.name()} size bound broken by {list(sol.coeffs)}")
            shape = _corollary_shape(chi)
            if shape is not None:
                doubled_checked += 1
                if not all(w.is_doubled() for w in sol.witnesses):
                    v.passed = False
                    v.counterexample = (G.name(), sol.coeffs)
                    v.lines.append(f"group={G.name()} {shape} value not 2*eps for {list(sol.coeffs)}")
    v.lines.append(f"doubled-value solutions checked={doubled_checked}")
    return v


LEMMA16_FORBIDDEN = {
    (15,): {(5, 0), (0, 5), (6, 0), (0, 6)},
    (21,): {(3, 0), (0, 3), (4, 0), (0, 4)},
}


def solutions_with_type(G: AbelianGroup, kl: tuple[int, int]) -> list[tuple[int, ...]]:
    rep = cached_search(G, max(DEFAULT_MAX_ORDER, G.order))
    out = []
    for sol in rep.solutions:
        if any((t.k, t.l) == kl for t in types_of(sol.character(G))):
            out.append(sol.coeffs)
    return out


def verify_lemma16() -> Verdict:
    v = Verdict("lemma-16", True)
    for factors, forbidden in LEMMA16_FORBIDDEN.items():
        G = AbelianGroup(factors)
        for kl in sorted(forbidden):
            hits = solutions_with_type(G, kl)
            v.lines.append(f"group={G.name()} type=({kl[0]},{kl[1]}) solutions={len(hits)}")
            if hits:
                v.passed = False
                v.counterexample = (G.name(), hits[0])
    C15 = AbelianGroup((15,))
    seven = solutions_with_type(C15, (7, 0)) + solutions_with_type(C15, (0, 7))
    v.lines.append(f"group=15 type=(7,0)|(0,7) solutions={len(seven)}")
    if not seven:
        v.passed = False
    return v
