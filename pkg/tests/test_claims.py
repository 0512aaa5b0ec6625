import pytest

from tworoot.claims import ANCHORS, CLAIMS, RunConfig

FROZEN_IDS = (
    "main-theorem", "example-c12-iv", "example-c15-i", "example-c15-ii", "example-c9-iii",
    "example-c21-k5", "example-c15-k7", "corollary-13", "lemma-16", "twenty-types", "type-notation",
    "norm-bound", "count-triples", "count-triple-unit-end", "lemma-11-weight-4",
    "lemma-11-weight-6-unique", "lemma-11-weight-6-stated-sum", "lemma-8-9", "lemma-12",
    "proposition-10", "example-dihedral30", "example-sl23", "proposition-6", "lemma-14",
    "theorem-15", "theorem-17",
)

BY_ID = {c.id: c for c in CLAIMS}


def test_claim_ids_are_stable():
    assert tuple(c.id for c in CLAIMS) == FROZEN_IDS


def test_anchor_drift():
    used = {a for c in CLAIMS for a in c.anchor.split("; ")}
    assert used == set(ANCHORS)
    assert len(ANCHORS) == len(set(ANCHORS))


@pytest.mark.parametrize("cid", ["example-c12-iv", "example-c9-iii", "example-dihedral30",
                                 "example-sl23", "proposition-6", "lemma-11-weight-4"])
def test_fast_claims_pass(cid):
    v = BY_ID[cid].run(RunConfig())
    assert v.passed and v.claim == cid and v.lines


def test_small_configuration_runs():
    cfg = RunConfig(sweep_bound=8, corollary_bound=8, random_sums=20, lemma12_bound=15, prop10_bound=9)
    for cid in ("main-theorem", "corollary-13", "lemma-8-9", "lemma-12", "proposition-10",
                "norm-bound", "theorem-15", "theorem-17", "lemma-14", "type-notation"):
        v = BY_ID[cid].run(cfg)
        assert v.passed, (cid, v.lines[-5:])


def test_count_triple_unit_end_has_counterexample():
    # known failure: the unit-end bound has counterexamples, which the runner reports
    v = BY_ID["count-triple-unit-end"].run(RunConfig())
    assert not v.passed
    assert any("n=24" in l for l in v.lines)
