"""Acceptance suite: one marked group of tests per criterion, summarised at the end of the run."""

import pytest

from oracles import naive_two_root_search
from tworoot.abelian import abelian_groups_up_to
from tworoot.claims import CLAIMS, EXAMPLES, RunConfig, corpus_pairs, example_verdict
from tworoot.genchar import classify
from tworoot.prime_graph import VIOLATION, check_theorem15, check_theorem17, pi_partition
from tworoot.search import DEFAULT_MAX_ORDER, cached_search, search_two_root

CFG = RunConfig()
BY_ID = {c.id: c for c in CLAIMS}


def run_claim(cid):
    v = BY_ID[cid].run(CFG)
    assert v.passed, "\n".join(v.lines[-20:])
    return v


@pytest.mark.criterion(1, "classification sweep over abelian groups of order <= 21")
def test_classification_sweep():
    run_claim("main-theorem")


@pytest.mark.criterion(1, "classification sweep over abelian groups of order <= 21")
def test_sweep_coprime_to_30_is_standard():
    checked = 0
    for G in abelian_groups_up_to(CFG.sweep_bound):
        if G.order % 2 and G.order % 3 and G.order % 5:
            for sol in cached_search(G, DEFAULT_MAX_ORDER).solutions:
                assert classify(sol.character(G)).tag == "Standard", (G.name(), sol.coeffs)
                checked += 1
    assert checked > 0


@pytest.mark.criterion(2, "explicit outlier and exceptional examples are rediscovered")
@pytest.mark.parametrize("cid,factors,tag,k,support", EXAMPLES, ids=[e[0] for e in EXAMPLES])
def test_example_is_found(cid, factors, tag, k, support):
    v = example_verdict(cid, factors, tag, k, support)
    assert v.passed, v.lines


@pytest.mark.criterion(3, "forbidden types are absent on C15 and C21")
def test_forbidden_types_absent():
    v = run_claim("lemma-16")
    assert len(v.lines) == 8 and all(l.endswith("solutions=0") for l in v.lines)


@pytest.mark.criterion(4, "size bounds for k = 6, 7 and doubled values for the four shapes")
def test_shape_size_bounds_sweep():
    run_claim("corollary-13")


@pytest.mark.criterion(5, "minimal vanishing sums of weight 4 and 6")
def test_weight4_none():
    run_claim("lemma-11-weight-4")


@pytest.mark.criterion(5, "minimal vanishing sums of weight 4 and 6")
def test_weight6_one_class():
    run_claim("lemma-11-weight-6-unique")


@pytest.mark.criterion(5, "minimal vanishing sums of weight 4 and 6")
def test_weight6_class_equals_zeta6_squared_sum():
    run_claim("lemma-11-weight-6-stated-sum")


@pytest.mark.criterion(6, "random two-prime vanishing sums split into prime cycles")
def test_two_prime_decomposition():
    v = run_claim("lemma-8-9")
    assert v.lines[-1] == f"samples={CFG.random_sums} seed={CFG.seed}"


@pytest.mark.criterion(7, "separating elements for character triples of odd order <= 81")
def test_separating_elements():
    run_claim("lemma-12")


@pytest.mark.criterion(8, "degree congruences on abelian p-groups of order <= 27")
def test_degree_congruences():
    run_claim("proposition-10")


@pytest.mark.criterion(9, "dihedral group of order 30 corpus")
def test_dihedral30():
    run_claim("example-dihedral30")


@pytest.mark.criterion(10, "SL(2,3) degree-7 constituent takes values +-1")
def test_sl23():
    run_claim("example-sl23")


@pytest.mark.criterion(11, "CRT construction on disconnected prime graphs")
def test_crt_construction():
    v = run_claim("proposition-6")
    assert "degree=16" in v.lines[0] and "distinct=3" in v.lines[1]


@pytest.mark.criterion(12, "pruned search equals a naive window search for orders <= 9")
@pytest.mark.parametrize("G", [G for G in abelian_groups_up_to(9)], ids=lambda G: G.name())
def test_search_matches_naive(G):
    assert search_two_root(G).coefficient_set() == naive_two_root_search(G.factors)


@pytest.mark.criterion(13, "prime-graph checkers never report a violation on the corpus")
def test_prime_graph_checkers():
    pairs = corpus_pairs(CFG)
    assert pairs
    for label, g, deg, primes in pairs:
        part = pi_partition(deg, primes)
        assert check_theorem15(g, part), label
        assert check_theorem17(g, part) != VIOLATION, label
