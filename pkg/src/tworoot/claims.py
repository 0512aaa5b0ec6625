"""The reproduction manifest: one stable claim id per checked statement.

Each runner returns a Verdict.  Anchors are the labels of the results being
checked; ``ANCHORS`` is the frozen list the manifest must cover.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable

from .abelian import (
    AbelianGroup,
    abelian_groups_of_order,
    abelian_groups_up_to,
    character_exponent,
    enumerate_characters,
    order_spectrum,
    find_separating_element,
)
from .chartable import (
    is_generalized_character,
    load_bundled,
    table_spectrum,
    two_root_on_nonidentity,
    validate,
)
from .cyclotomic import RootOfUnity, prime_divisors
from .genchar import GeneralizedCharacter, check_degree_congruence, shapes, types_of
from .prime_graph import (
    VIOLATION,
    check_theorem15,
    check_theorem17,
    components,
    graph_from_spectrum,
    pi_partition,
    proposition6_class_function,
)
from .search import (
    DEFAULT_MAX_ORDER,
    Verdict,
    admissible_count_triples,
    cached_search,
    solutions_with_type,
    verify_corollary13,
    verify_lemma16,
    verify_main_theorem,
)
from .vanishing import (
    RootSum,
    decompose,
    enumerate_minimal_vanishing,
    is_minimal_vanishing,
    prime_cycle,
)

ANCHORS = (
    "Lemma 8",
    "Lemma 9",
    "Lemma 11",
    "Proposition 10",
    "Lemma 12",
    "norm inequality",
    "coefficient spread",
    "count-triple inequality",
    "discriminant",
    "small-order bound",
    "Theorem 5",
    "Corollary 13",
    "Proposition 6",
    "C15:C2 example",
    "SL(2,3) example",
    "Lemma 14",
    "type (k,l)",
    "twenty types",
    "Theorem 15",
    "Lemma 16",
    "Theorem 17",
)


@dataclass(frozen=True)
class Claim:
    id: str
    anchor: str
    run: Callable[["RunConfig"], Verdict]


@dataclass(frozen=True)
class RunConfig:
    jobs: int = 1
    max_order: int = DEFAULT_MAX_ORDER
    sweep_bound: int = 21
    corollary_bound: int = 24
    lemma11_w4_bound: int = 60
    lemma11_w6_bound: int = 30
    lemma12_bound: int = 81
    prop10_bound: int = 27
    random_sums: int = 500
    seed: int = 0


# -- abelian sweep claims ------------------------------------------------------


def _main_theorem(cfg: RunConfig) -> Verdict:
    return verify_main_theorem(cfg.sweep_bound, jobs=cfg.jobs)


def _corollary13(cfg: RunConfig) -> Verdict:
    return verify_corollary13(cfg.corollary_bound, jobs=cfg.jobs)


def _lemma16(cfg: RunConfig) -> Verdict:
    v = verify_lemma16()
    # the C15 sanity inversion is reported by its own claim
    v.lines = [l for l in v.lines if "(7,0)" not in l]
    v.passed = not any(not l.endswith("solutions=0") for l in v.lines)
    return v


C12_KERNEL3 = (0, 3, 6, 9)


def find_example(G: AbelianGroup, predicate) -> tuple[int, ...] | None:
    rep = cached_search(G, max(DEFAULT_MAX_ORDER, G.order))
    for sol in rep.solutions:
        chi = sol.character(G)
        if predicate(chi):
            return sol.coeffs
    return None


def _shape_predicate(tag: str, k: int | None = None, support=None):
    def pred(chi: GeneralizedCharacter) -> bool:
        for s in shapes(chi):
            if s.tag != tag or (k is not None and s.k != k):
                continue
            if support is None or sorted(s.indices) == sorted(support):
                return True
        return False

    return pred


EXAMPLES = (
    ("example-c12-iv", (12,), "OutlierIV", None, C12_KERNEL3),
    ("example-c15-i", (15,), "OutlierI", None, None),
    ("example-c15-ii", (15,), "OutlierII", None, None),
    ("example-c9-iii", (9,), "OutlierIII", None, None),
    ("example-c21-k5", (21,), "SmallExceptional", 5, None),
    ("example-c15-k7", (15,), "SmallExceptional", 7, None),
)


def example_verdict(claim: str, factors, tag: str, k, support) -> Verdict:
    G = AbelianGroup(factors)
    hit = find_example(G, _shape_predicate(tag, k, support))
    label = tag + (f" k={k}" if k else "")
    if hit is None:
        return Verdict(claim, False, [f"group={G.name()} shape={label} found=no"])
    return Verdict(claim, True, [f"group={G.name()} shape={label} found=yes coeffs={','.join(map(str, hit))}"])


def _example_runner(claim, factors, tag, k, support):
    return lambda cfg: example_verdict(claim, factors, tag, k, support)


def _twenty_types(cfg: RunConfig) -> Verdict:
    allowed = {(0, 0), (1, 1), (1, 0), (0, 1), (2, 0), (0, 2), (2, 1), (1, 2), (3, 1), (1, 3),
               (3, 0), (0, 3), (4, 0), (0, 4), (5, 0), (0, 5), (6, 0), (0, 6), (7, 0), (0, 7)}
    v = Verdict("twenty-types", True)
    outside = 0
    doubled = 0
    for G in abelian_groups_up_to(cfg.sweep_bound):
        for sol in cached_search(G, max(DEFAULT_MAX_ORDER, G.order)).solutions:
            chi = sol.character(G)
            if not any((t.k, t.l) in allowed for t in types_of(chi)):
                outside += 1
                c = sorted(chi.coeffs)
                if c[-1] - c[0] == 2 and (c.count(c[0]) == 1 or c.count(c[-1]) == 1):
                    doubled += 1
                v.lines.append(f"group={G.name()} outside coeffs={','.join(map(str, chi.coeffs))}")
    v.passed = outside == 0
    v.lines.append(f"outside={outside} of_form_a*rho+-2*lambda={doubled}")
    return v


def _norm_bound(cfg: RunConfig) -> Verdict:
    """Sweep solutions satisfy n * sum (c - mean)^2 <= 4(n - 1) and spread <= 2."""
    v = Verdict("norm-bound", True)
    count = 0
    for G in abelian_groups_up_to(cfg.sweep_bound):
        n = G.order
        for sol in cached_search(G, max(DEFAULT_MAX_ORDER, n)).solutions:
            c = sol.coeffs
            count += 1
            if n * sum(x * x for x in c) - sum(c) ** 2 > 4 * (n - 1) or max(c) - min(c) > 2:
                v.passed = False
                v.lines.append(f"group={G.name()} coeffs={list(c)}")
    v.lines.append(f"solutions={count}")
    return v


def _count_triples(cfg: RunConfig) -> Verdict:
    v = Verdict("count-triples", True)
    for n in range(1, cfg.max_order + 1):
        triples = set(admissible_count_triples(n))
        # spread bound: a0, a2 >= 2 never admissible
        bad = [t for t in triples if t.a0 >= 2 and t.a2 >= 2]
        if bad:
            v.passed = False
            v.lines.append(f"n={n} both-ends>=2 admissible {bad[0]}")
        # a2 = 0: a0 >= 5 forces a1 <= 16
        for t in triples:
            if t.a2 == 0 and t.a0 >= 5 and t.a1 > 16:
                v.passed = False
                v.lines.append(f"n={n} small-order bound broken by {t}")
    v.lines.append(f"orders=1..{cfg.max_order}")
    return v


def _count_triple_unit(cfg: RunConfig) -> Verdict:
    """a0 = 1 (or a2 = 1) forces the other end count to be at most 3."""
    v = Verdict("count-triple-unit-end", True)
    for n in range(2, cfg.max_order + 1):
        for t in admissible_count_triples(n):
            if (t.a0 == 1 and t.a2 > 3) or (t.a2 == 1 and t.a0 > 3):
                v.passed = False
                v.lines.append(f"n={n} admissible {t.a0},{t.a1},{t.a2}")
    return v


# -- vanishing sums ------------------------------------------------------------


def _lemma11_w4(cfg: RunConfig) -> Verdict:
    v = Verdict("lemma-11-weight-4", True)
    lo = cfg.lemma11_w4_bound // 2 + 1
    for N in range(lo, cfg.lemma11_w4_bound + 1):
        found = enumerate_minimal_vanishing(4, N)
        if found:
            v.passed = False
            v.lines.append(f"N={N} classes={len(found)} first={found[0]}")
    v.lines.append(f"weight=4 N<={cfg.lemma11_w4_bound} classes=0" if v.passed else "weight=4 classes found")
    return v


def weight6_classes(bound: int) -> list[RootSum]:
    classes = set()
    for N in range(bound // 2 + 1, bound + 1):
        classes.update(enumerate_minimal_vanishing(6, N))
    return sorted(classes, key=lambda r: r.terms)


WEIGHT6_WITH_ZETA6_SQUARED = RootSum.of((6, 1), (6, 2), (5, 1), (5, 2), (5, 3), (5, 4))


def _lemma11_w6_unique(cfg: RunConfig) -> Verdict:
    found = weight6_classes(cfg.lemma11_w6_bound)
    lines = [f"weight=6 N<={cfg.lemma11_w6_bound} classes={len(found)}"] + [f"class {s}" for s in found]
    return Verdict("lemma-11-weight-6-unique", len(found) == 1, lines)


def _lemma11_w6_stated(cfg: RunConfig) -> Verdict:
    from .vanishing import canonical_rotation, sum_value

    found = weight6_classes(cfg.lemma11_w6_bound)
    value = sum_value(WEIGHT6_WITH_ZETA6_SQUARED)
    ok = len(found) == 1 and value.is_zero() and canonical_rotation(WEIGHT6_WITH_ZETA6_SQUARED) == found[0]
    return Verdict("lemma-11-weight-6-stated-sum", ok,
                   [f"stated={WEIGHT6_WITH_ZETA6_SQUARED} value={value}", f"found={found[0] if found else '-'}"])


def random_two_prime_sum(rng: random.Random, max_weight: int = 10) -> RootSum:
    """A union of rotated p- and q-cycles with all orders p^a q^b."""
    p, q = rng.sample((2, 3, 5, 7), 2)
    N = p ** rng.randint(1, 2) * q ** rng.randint(1, 2)
    terms: list[RootOfUnity] = []
    while True:
        r = rng.choice((p, q))
        if len(terms) + r > max_weight:
            if terms:
                return RootSum(tuple(terms))
            continue
        eps = RootOfUnity.of(N, rng.randrange(N))
        terms.extend(prime_cycle(r, eps).terms)
        if rng.random() < 0.35:
            return RootSum(tuple(terms))


def _lemma8_9(cfg: RunConfig) -> Verdict:
    rng = random.Random(cfg.seed)
    v = Verdict("lemma-8-9", True)
    for i in range(cfg.random_sums):
        s = random_two_prime_sum(rng)
        try:
            d = decompose(s)
        except Exception as exc:  # LemmaViolation or a bug: both are failures here
            v.passed = False
            v.lines.append(f"sample={i} {s} error={exc}")
            continue
        if any(r is None for r in d.rotations) or not all(is_minimal_vanishing(p) for p in d.parts):
            v.passed = False
            v.lines.append(f"sample={i} {s} bad decomposition")
    v.lines.append(f"samples={cfg.random_sums} seed={cfg.seed}")
    return v


# -- abelian group facts -------------------------------------------------------


def _lemma12(cfg: RunConfig) -> Verdict:
    v = Verdict("lemma-12", True)
    checked = 0
    for n in range(1, cfg.lemma12_bound + 1, 2):
        for G in abelian_groups_of_order(n):
            chars = enumerate_characters(G)
            for l1, l2, l3 in itertools.combinations(chars, 3):
                g = find_separating_element(G, l1, l2, l3)
                checked += 1
                vals = g and {character_exponent(G, l, g) for l in (l1, l2, l3)}
                if g is None or len(vals) != 3:
                    v.passed = False
                    v.lines.append(f"group={G.name()} triple={l1},{l2},{l3} unseparated")
                    return v
    v.lines.append(f"odd orders<={cfg.lemma12_bound} triples={checked}")
    return v


def p_groups_up_to(bound: int) -> list[tuple[int, AbelianGroup]]:
    out = []
    for G in abelian_groups_up_to(bound):
        ps = prime_divisors(G.order) if G.order > 1 else ()
        if len(ps) == 1:
            out.append((ps[0], G))
    return out


def _prop10(cfg: RunConfig) -> Verdict:
    v = Verdict("proposition-10", True)
    applied = {"i": 0, "ii": 0}
    for p, G in p_groups_up_to(cfg.prop10_bound):
        for sol in cached_search(G, max(DEFAULT_MAX_ORDER, G.order)).solutions:
            chi = sol.character(G)
            for part in ("i", "ii"):
                r = check_degree_congruence(chi, part, p)
                if r.applicable:
                    applied[part] += 1
                    if not r.holds:
                        v.passed = False
                        v.lines.append(f"group={G.name()} part={part} coeffs={list(chi.coeffs)}")
    v.lines.append(f"p-groups<={cfg.prop10_bound} applicable part_i={applied['i']} part_ii={applied['ii']}")
    return v


# -- character-table corpus ----------------------------------------------------


def _d30_example(cfg: RunConfig) -> Verdict:
    t = load_bundled("dihedral30")
    validate(t)
    f = t.function("example")
    gc = is_generalized_character(f)
    wit = two_root_on_nonidentity(f)
    vals = {v.as_rational() for v in f.values[1:]}
    comps = components(graph_from_spectrum(table_spectrum(t)))
    ok = (f.degree == 16 and bool(gc) and wit is not None and vals == {0, 1, -2}
          and comps == [frozenset({2}), frozenset({3, 5})])
    lines = [
        f"degree={f.degree} generalized={bool(gc)} coefficients={','.join(map(str, gc.coefficients or ()))}",
        f"two_root={wit is not None} values={','.join(str(x) for x in sorted(vals))}",
        "components=" + " ".join("{" + ",".join(map(str, sorted(c))) + "}" for c in comps),
    ]
    return Verdict("example-dihedral30", ok, lines)


def _sl23_example(cfg: RunConfig) -> Verdict:
    t = load_bundled("sl23")
    validate(t)
    f = t.function("perm8_constituent")
    vals = [v.as_rational() for v in f.values[1:]]
    ok = f.degree == 7 and all(x in (1, -1) for x in vals) and bool(is_generalized_character(f))
    return Verdict("example-sl23", ok, [f"degree={f.degree} nonidentity={','.join(map(str, vals))}"])


def _prop6(cfg: RunConfig) -> Verdict:
    lines = []
    d30 = load_bundled("dihedral30")
    f = proposition6_class_function(d30, [{2}, {3, 5}], [0, 1])
    ok1 = f.degree == 16 and bool(is_generalized_character(f))
    lines.append(f"table=D30 values=0,1 degree={f.degree} generalized={ok1}")
    a5 = load_bundled("a5")
    comps = components(graph_from_spectrum(table_spectrum(a5)))
    h = proposition6_class_function(a5, comps, [0, 1, 2])
    distinct = {v for v in h.values[1:]}
    ok2 = len(distinct) == 3 and bool(is_generalized_character(h))
    lines.append(f"table=A5 components={len(comps)} values=0,1,2 degree={h.degree} "
                 f"distinct={len(distinct)} generalized={bool(is_generalized_character(h))}")
    return Verdict("proposition-6", ok1 and ok2, lines)


def corpus_pairs(cfg: RunConfig):
    """(label, graph, degree, primes >= 5) for every two-root function in the corpus."""
    pairs = []
    for name in ("dihedral30", "sl23", "a5"):
        t = load_bundled(name)
        g = graph_from_spectrum(table_spectrum(t))
        funcs = [t.function(k) for k in t.functions]
        comps = components(g)
        if len(comps) > 1:
            vals = list(range(len(comps)))
            funcs.append(proposition6_class_function(t, comps, vals))
        for f in funcs:
            if two_root_on_nonidentity(f) is None or not is_generalized_character(f):
                continue
            d = f.degree.as_rational()
            pairs.append((f"{t.name}:{f.name}", g, int(d), [p for p in g.vertices if p >= 5]))
    for G in abelian_groups_up_to(cfg.sweep_bound):
        if G.order == 1:
            continue
        g = graph_from_spectrum(order_spectrum(G))
        primes = [p for p in g.vertices if p >= 5]
        for sol in cached_search(G, max(DEFAULT_MAX_ORDER, G.order)).solutions:
            pairs.append((f"{G.name()}:{','.join(map(str, sol.coeffs))}", g, sum(sol.coeffs), primes))
    return pairs


def _lemma14(cfg: RunConfig) -> Verdict:
    v = Verdict("lemma-14", True)
    pairs = corpus_pairs(cfg)
    for label, g, deg, primes in pairs:
        part = pi_partition(deg, primes)
        if part.unlabelled:
            v.passed = False
            v.lines.append(f"{label} degree={deg} unlabelled={part.unlabelled}")
    v.lines.append(f"pairs={len(pairs)}")
    return v


def _theorem15(cfg: RunConfig) -> Verdict:
    v = Verdict("theorem-15", True)
    pairs = corpus_pairs(cfg)
    for label, g, deg, primes in pairs:
        r = check_theorem15(g, pi_partition(deg, primes))
        if not r:
            v.passed = False
            v.lines.append(f"{label} crossing={r.crossing_edges}")
    v.lines.append(f"pairs={len(pairs)}")
    return v


def _theorem17(cfg: RunConfig) -> Verdict:
    v = Verdict("theorem-17", True)
    pairs = corpus_pairs(cfg)
    seen = {}
    for label, g, deg, primes in pairs:
        r = check_theorem17(g, pi_partition(deg, primes))
        seen[r] = seen.get(r, 0) + 1
        if r == VIOLATION:
            v.passed = False
            v.lines.append(f"{label} violation")
    v.lines.append("outcomes " + " ".join(f"{k}={seen[k]}" for k in sorted(seen)))
    return v


def _type_notation(cfg: RunConfig) -> Verdict:
    """Every reported type reconstructs its character and the shapes agree with it."""
    v = Verdict("type-notation", True)
    count = 0
    for G in abelian_groups_up_to(cfg.sweep_bound):
        for sol in cached_search(G, max(DEFAULT_MAX_ORDER, G.order)).solutions:
            for t in types_of(sol.character(G)):
                count += 1
                if t.reconstruct(G.order) != sol.coeffs:
                    v.passed = False
                    v.lines.append(f"group={G.name()} type {t} does not rebuild {sol.coeffs}")
    v.lines.append(f"representations={count}")
    return v


CLAIMS: tuple[Claim, ...] = (
    Claim("main-theorem", "Theorem 5", _main_theorem),
    *(Claim(cid, "Theorem 5", _example_runner(cid, f, tag, k, sup)) for cid, f, tag, k, sup in EXAMPLES),
    Claim("corollary-13", "Corollary 13", _corollary13),
    Claim("lemma-16", "Lemma 16", _lemma16),
    Claim("twenty-types", "twenty types", _twenty_types),
    Claim("type-notation", "type (k,l)", _type_notation),
    Claim("norm-bound", "norm inequality; coefficient spread", _norm_bound),
    Claim("count-triples", "count-triple inequality; small-order bound", _count_triples),
    Claim("count-triple-unit-end", "discriminant", _count_triple_unit),
    Claim("lemma-11-weight-4", "Lemma 11", _lemma11_w4),
    Claim("lemma-11-weight-6-unique", "Lemma 11", _lemma11_w6_unique),
    Claim("lemma-11-weight-6-stated-sum", "Lemma 11", _lemma11_w6_stated),
    Claim("lemma-8-9", "Lemma 8; Lemma 9", _lemma8_9),
    Claim("lemma-12", "Lemma 12", _lemma12),
    Claim("proposition-10", "Proposition 10", _prop10),
    Claim("example-dihedral30", "C15:C2 example", _d30_example),
    Claim("example-sl23", "SL(2,3) example", _sl23_example),
    Claim("proposition-6", "Proposition 6", _prop6),
    Claim("lemma-14", "Lemma 14", _lemma14),
    Claim("theorem-15", "Theorem 15", _theorem15),
    Claim("theorem-17", "Theorem 17", _theorem17),
)
