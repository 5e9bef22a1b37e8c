import itertools

import pytest
from hypothesis import given

from src.corpus import CorpusEntry
from src.errors import ClassMismatchError, LimitExceededError
from src.graphs.canonical import is_isomorphic
from src.graphs.digraph import ClassTag, Digraph, remove_loops
from src.graphs.enumerate import class_members
from src.homs.homs import (
    VertexMap,
    compose,
    count_homs,
    enumerate_homs,
    gamma_component,
    hom_images,
    identity_map,
    is_hom,
    is_strict_hom,
    restrict,
)
from src.homs.lovasz import compare_lovasz, find_separating_graph, lovasz_vector

from tests.strategies import digraphs

CHAIN = Digraph.from_arcs(2, [(0, 1)], loops=[0, 1])


def test_chain_counts():
    assert count_homs(CHAIN, CHAIN) == 3
    assert count_homs(CHAIN, CHAIN, strict=True) == 1


def test_maps_come_in_lexicographic_order():
    images = [m.images for m in enumerate_homs(CHAIN, CHAIN)]
    assert images == sorted(images)
    assert images == [(0, 0), (0, 1), (1, 1)]


def test_source_size_limit():
    big = Digraph.from_arcs(9, [])
    with pytest.raises(LimitExceededError):
        count_homs(big, CHAIN)


def _strict_equals_hom_on_both(n_max: int) -> None:
    graphs = list(class_members(ClassTag.ALL_DIGRAPHS, n_max))
    for g, h in itertools.product(graphs, repeat=2):
        strict = set(hom_images(g, h, strict=True))
        both = set(hom_images(g, h)) & set(hom_images(remove_loops(g), remove_loops(h)))
        assert strict == both, (g.describe(), h.describe())


def test_strict_homs_are_homs_of_both_graphs_and_their_loop_free_parts():
    _strict_equals_hom_on_both(2)


@pytest.mark.slow
def test_strict_homs_are_homs_of_both_parts_on_three_vertices():
    _strict_equals_hom_on_both(3)


@given(digraphs(n_max=4), digraphs(n_max=4))
def test_strict_homs_are_homs_of_both_parts_on_four_vertices(g: Digraph, h: Digraph):
    strict = set(hom_images(g, h, strict=True))
    both = set(hom_images(g, h)) & set(hom_images(remove_loops(g), remove_loops(h)))
    assert strict == both


def test_strict_homs_into_reflexive_targets():
    posets = list(class_members(ClassTag.POSET, 4))
    for g, h in itertools.product(posets, repeat=2):
        assert set(hom_images(g, h, strict=True)) == set(hom_images(remove_loops(g), remove_loops(h)))


@given(digraphs(n_max=4), digraphs(n_max=4))
def test_strictness_means_singleton_fiber_components(g: Digraph, h: Digraph):
    for m in enumerate_homs(g, h):
        singletons = all(gamma_component(m, v) == 1 << v for v in range(g.n))
        assert is_strict_hom(m) == singletons


def test_gamma_component_follows_weak_connectivity():
    g = Digraph.from_arcs(3, [(0, 1)])
    point = Digraph.from_arcs(1, [], loops=[0])
    m = VertexMap(g, point, (0, 0, 0))
    assert gamma_component(m, 0) == 0b011
    assert gamma_component(m, 2) == 0b100
    with pytest.raises(ValueError):
        gamma_component(m, 3)


@given(digraphs(n_max=3), digraphs(n_max=3), digraphs(n_max=3))
def test_strict_homs_compose(g: Digraph, h: Digraph, k: Digraph):
    for first in enumerate_homs(g, h, strict=True):
        for second in enumerate_homs(h, k, strict=True):
            assert is_strict_hom(compose(first, second))


def test_non_isomorphic_posets_are_separated():
    posets = list(class_members(ClassTag.POSET, 3))
    for r, s in itertools.combinations(posets, 2):
        if r.n == s.n and is_isomorphic(r, s):
            continue
        assert find_separating_graph(r, s, ClassTag.ALL_DIGRAPHS, 3) is not None


@pytest.mark.slow
def test_non_isomorphic_posets_on_four_points_are_separated():
    posets = list(class_members(ClassTag.POSET, 4))
    for r, s in itertools.combinations(posets, 2):
        if r.n == s.n and is_isomorphic(r, s):
            continue
        assert find_separating_graph(r, s, ClassTag.ALL_DIGRAPHS, max(r.n, s.n)) is not None


@pytest.mark.parametrize("strict", [True, False])
def test_rearranged_pairs_are_dominated(pair_a: CorpusEntry, pair_b: CorpusEntry, strict: bool):
    for entry in (pair_a, pair_b):
        report = compare_lovasz(entry.r, entry.s, ClassTag.POSET, 4, strict)
        assert report.dominated
        assert report.scanned_by_size == {1: 1, 2: 2, 3: 5, 4: 16}


@pytest.mark.slow
@pytest.mark.parametrize("strict", [True, False])
def test_rearranged_pairs_are_dominated_on_five_points(pair_a: CorpusEntry, pair_b: CorpusEntry, strict: bool):
    for entry in (pair_a, pair_b):
        report = compare_lovasz(entry.r, entry.s, ClassTag.POSET, 5, strict)
        assert report.dominated
        assert report.scanned_by_size[5] == 63


def test_reversed_pair_is_not_dominated(pair_a: CorpusEntry):
    report = compare_lovasz(pair_a.s, pair_a.r, ClassTag.POSET, 3, strict=True)
    assert not report.dominated
    assert len(report.counterexamples) >= 1


def test_dominance_counterexamples_are_reported():
    single = Digraph.from_arcs(1, [], loops=[0])
    report = compare_lovasz(CHAIN, single, ClassTag.POSET, 2, strict=False)
    assert not report.dominated
    assert "counterexamples: 3" in report.format_table()


def test_compare_rejects_graphs_outside_the_class():
    cycle = Digraph.from_arcs(2, [(0, 1), (1, 0)], loops=[0, 1])
    with pytest.raises(ClassMismatchError):
        compare_lovasz(cycle, CHAIN, ClassTag.POSET, 2, strict=True)


@given(digraphs(n_max=4), digraphs(n_max=3))
def test_restriction_keeps_strictness(g: Digraph, h: Digraph):
    evens = sum(1 << v for v in range(g.n) if v % 2 == 0)
    for m in enumerate_homs(g, h, strict=True):
        part = restrict(m, evens)
        assert part.source.n == len(range(0, g.n, 2))
        assert is_strict_hom(part)


@given(digraphs(n_max=4))
def test_identity_is_a_strict_unit(g: Digraph):
    one = identity_map(g)
    assert is_strict_hom(one)
    for m in enumerate_homs(g, g):
        assert compose(one, m) == m
        assert compose(m, one) == m


def test_collapsing_a_chain_is_a_hom_but_not_strict():
    single = Digraph.from_arcs(1, [], loops=[0])
    [m] = list(enumerate_homs(CHAIN, single))
    assert is_hom(m)
    assert not is_strict_hom(m)


def test_lovasz_vector_follows_class_members():
    vector = lovasz_vector(CHAIN, ClassTag.POSET, 3)
    members = list(class_members(ClassTag.POSET, 3))
    assert len(vector) == len(members) == 1 + 2 + 5
    assert vector[0] == 2
