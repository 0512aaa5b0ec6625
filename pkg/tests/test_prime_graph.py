import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import components_by_bfs, primes_of
from tworoot.abelian import abelian_groups_up_to, order_spectrum
from tworoot.chartable import load_bundled, table_spectrum, validate
from tworoot.prime_graph import (
    DISCONNECTED,
    NOT_APPLICABLE,
    VIOLATION,
    PiPartition,
    PrimeGraph,
    check_theorem15,
    check_theorem17,
    components,
    graph_from_spectrum,
    induced,
    pi_part,
    pi_partition,
    proposition6_class_function,
    proposition6_degree,
    restrict_to,
)

spectra = st.sets(st.integers(2, 400), max_size=8).map(lambda s: s | {1})


def G(vertices, edges=()):
    return PrimeGraph(frozenset(vertices), frozenset(frozenset(e) for e in edges))


def test_graph_from_spectrum_examples():
    g = graph_from_spectrum({1, 2, 3, 5, 15})
    assert g.vertices == {2, 3, 5} and g.sorted_edges() == [(3, 5)]
    g = graph_from_spectrum({1, 2, 3, 5, 6, 10, 15, 30})
    assert g.sorted_edges() == [(2, 3), (2, 5), (3, 5)]
    g = graph_from_spectrum({1, 2, 3})
    assert g.vertices == {2, 3} and not g.edges


def test_graph_from_spectrum_errors():
    with pytest.raises(ValueError):
        graph_from_spectrum(set())
    with pytest.raises(ValueError):
        graph_from_spectrum({2, 3})
    with pytest.raises(ValueError):
        G({2, 3}, [(2, 7)])


@given(spectra)
def test_graph_matches_definition(spec):
    g = graph_from_spectrum(spec)
    verts = set().union(*(primes_of(m) for m in spec))
    assert g.vertices == verts
    for p in verts:
        for q in verts:
            if p < q:
                assert (frozenset({p, q}) in g.edges) == any(m % (p * q) == 0 for m in spec)


@given(spectra, spectra)
def test_graph_is_monotone(a, b):
    small, big = graph_from_spectrum(a), graph_from_spectrum(a | b)
    assert small.edges <= big.edges and small.vertices <= big.vertices


@given(spectra, st.sets(st.sampled_from([2, 3, 5, 7, 11]), max_size=3))
def test_components_partition_and_match_bfs(spec, remove):
    g = induced(graph_from_spectrum(spec), remove)
    comps = components(g)
    assert sorted(v for c in comps for v in c) == sorted(g.vertices)
    want = components_by_bfs(g.vertices, g.sorted_edges())
    assert [set(c) for c in comps] == want
    assert [min(c) for c in comps] == sorted(min(c) for c in comps)


@given(spectra)
def test_removing_isolated_vertices_commutes(spec):
    g = graph_from_spectrum(spec)
    isolated = {v for v in g.vertices if not any(v in e for e in g.edges)}
    left = components(induced(g, isolated))
    right = [c for c in components(g) if not c <= isolated]
    assert left == right


def test_components_examples():
    d30 = load_bundled("dihedral30")
    assert components(graph_from_spectrum(table_spectrum(d30))) == [{2}, {3, 5}]
    tri = G({2, 3, 5}, [(2, 3), (2, 5), (3, 5)])
    g = induced(tri, {2})
    assert g.sorted_edges() == [(3, 5)] and components(g) == [{3, 5}]
    assert components(G(set())) == []
    assert restrict_to(tri, {3, 5}) == g


@pytest.mark.parametrize("grp", abelian_groups_up_to(36), ids=lambda g: g.name())
def test_abelian_prime_graphs_are_complete(grp):
    g = graph_from_spectrum(order_spectrum(grp))
    ps = sorted(g.vertices)
    assert len(g.edges) == len(ps) * (len(ps) - 1) // 2
    assert len(components(g)) <= 1


def test_pi_partition_examples():
    assert pi_partition(16, [5]).labels == {5: 1}
    assert pi_partition(16, [7]).labels == {7: 2}
    part = pi_partition(10, [7])
    assert part.labels == {} and part.unlabelled == (7,)
    assert "7:none" in str(part)
    with pytest.raises(ValueError):
        pi_partition(10, [3])
    with pytest.raises(ValueError):
        pi_partition(10, [9])


@given(st.integers(-1000, 1000), st.sets(st.sampled_from([5, 7, 11, 13, 17, 19, 23]), min_size=1))
def test_pi_partition_labels_are_residues(deg, primes):
    part = pi_partition(deg, primes)
    assert set(part.labels) | set(part.unlabelled) == primes
    for p, a in part.labels.items():
        assert (deg - a) % p == 0 and -2 <= a <= 2
    for p in part.unlabelled:
        assert all((deg - a) % p for a in range(-2, 3))


def test_crossing_edge_check_examples():
    g = G({5, 7, 11}, [(5, 7)])
    assert check_theorem15(g, PiPartition(0, {5: 1, 7: 1, 11: 0}))
    r = check_theorem15(g, PiPartition(0, {5: 1, 7: 2, 11: 0}))
    assert not r and r.crossing_edges == ((5, 7),)
    assert check_theorem15(G({2, 3}, [(2, 3)]), PiPartition(0, {}))


def test_crossing_edge_check_ignores_two_and_three():
    g = G({2, 3, 5, 7}, [(2, 5), (3, 7), (2, 3)])
    assert check_theorem15(g, PiPartition(0, {5: 1, 7: 2}))


def test_crossing_edge_check_requires_exact_cover():
    with pytest.raises(ValueError):
        check_theorem15(G({5, 7}), PiPartition(0, {5: 1}))


def test_connectivity_check_examples():
    g = G({2, 3, 5, 7})
    assert check_theorem17(g, PiPartition(0, {5: 1, 7: 1})) == NOT_APPLICABLE
    g = G({3, 5, 7, 11}, [(3, 5)])
    assert check_theorem17(g, PiPartition(0, {5: 0, 7: 1, 11: 2})) == DISCONNECTED
    g = G({2, 5, 7, 11}, [(5, 7), (7, 11)])
    assert check_theorem17(g, PiPartition(0, {5: 0, 7: 1, 11: 2})) == VIOLATION


def test_pi_part():
    assert pi_part(60, {2}) == 4
    assert pi_part(60, {3, 5}) == 15
    assert pi_part(60, {7}) == 1


def test_crt_degree_examples():
    assert proposition6_degree([{2}, {3, 5}], [0, 1], 30) == 16
    for a in range(-3, 12):
        assert proposition6_degree([{2, 3}], [a], 12) == a % 12
    assert proposition6_degree([{2}, {3}, {5}], [0, 1, 2], 30) == 22
    assert proposition6_degree([], [], 1) == 0


@given(st.permutations([0, 1, 2]), st.sampled_from([30, 60, 90, 150]))
def test_crt_degree_is_least_solution(vals, order):
    comps = [{2}, {3}, {5}]
    a = proposition6_degree(comps, vals, order)
    ok = [x for x in range(order) if all((x - v) % pi_part(order, c) == 0 for c, v in zip(comps, vals))]
    assert a == ok[0]


def test_crt_degree_errors():
    with pytest.raises(ValueError):
        proposition6_degree([{2}, {3, 5}], [1, 1], 30)
    with pytest.raises(ValueError):
        proposition6_degree([{2}, {3}], [0, 1], 30)
    with pytest.raises(ValueError):
        proposition6_degree([{2, 3}, {3, 5}], [0, 1], 30)
    with pytest.raises(ValueError):
        proposition6_degree([{2}], [0, 1], 30)


def test_crt_class_function_dihedral():
    t = load_bundled("dihedral30")
    f = proposition6_class_function(t, [{2}, {3, 5}], [0, 1])
    assert f.degree == 16
    for c, v in zip(t.classes[1:], f.values[1:]):
        assert v == (0 if c.elemorder == 2 else 1)


def test_crt_class_function_rejects_straddling_classes():
    t = load_bundled("sl23")  # has elements of order 6
    validate(t)
    with pytest.raises(ValueError):
        proposition6_class_function(t, [{2}, {3}], [0, 1])


def test_crt_class_function_trivial_table():
    from tworoot.chartable import parse_table

    t = parse_table("group 1\norder 1\nclasses 1\nclass 0 size 1 elemorder 1 inverse 0\nirr 0: 1\n")
    f = proposition6_class_function(t, [], [5])
    assert f.values == (5,)
