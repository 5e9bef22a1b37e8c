import random

import pytest
from hypothesis import given

from src.config import CONFIG
from src.corpus import CorpusEntry
from src.errors import ClassMismatchError
from src.graphs.digraph import ClassTag, Digraph, class_membership
from src.graphs.enumerate import class_members
from src.ev.ev import (
    EvVertex,
    alpha_map,
    check_erd_aid,
    ev_build,
    ev_vertex_count,
    ev_vertices,
    verify_aid,
    verify_simple_scheme,
)
from src.ev.witness import bug_witness, ev_arcs, ev_arcs_by_definition

from tests.strategies import digraphs, random_digraph


@given(digraphs(n_max=6))
def test_size_formula(r: Digraph):
    expected = sum(2 ** (r.in_nbrs(v).bit_count() + r.out_nbrs(v).bit_count()) for v in range(r.n))
    assert ev_vertex_count(r) == expected
    assert len(ev_vertices(r)) == expected


def test_corpus_ev_sizes(pair_a: CorpusEntry, pair_b: CorpusEntry):
    assert ev_build(pair_a.r, ClassTag.POSET).size == 12
    assert ev_build(pair_a.s, ClassTag.POSET).size == 13
    assert ev_build(pair_b.r, ClassTag.POSET).size == 16
    assert ev_build(pair_b.s, ClassTag.POSET).size == 18


def test_ev_build_rejects_graphs_outside_the_class():
    cycle = Digraph.from_arcs(2, [(0, 1), (1, 0)])
    with pytest.raises(ClassMismatchError):
        ev_build(cycle, ClassTag.TA)
    with pytest.raises(ClassMismatchError):
        ev_build(cycle, ClassTag.CO)


def _check_closure(n_max: int) -> None:
    for c in (ClassTag.POSET, ClassTag.STRICT_POSET, ClassTag.TA):
        for r in class_members(c, n_max):
            ev = ev_build(r, c)
            assert class_membership(ev.graph, c), (c.value, r.describe())
            assert verify_aid(ev), (c.value, r.describe())


def test_ev_graph_stays_in_its_class():
    _check_closure(3)


@pytest.mark.slow
def test_ev_graph_stays_in_its_class_on_four_points():
    _check_closure(4)


def test_aid_over_all_digraphs():
    for r in class_members(ClassTag.ALL_DIGRAPHS, 3):
        result = check_erd_aid(ev_build(r, ClassTag.ALL_DIGRAPHS))
        assert result.erd and result.aid, r.describe()


@pytest.mark.slow
def test_aid_over_all_digraphs_on_four_vertices():
    for r in class_members(ClassTag.ALL_DIGRAPHS, 4):
        result = check_erd_aid(ev_build(r, ClassTag.ALL_DIGRAPHS))
        assert result.erd and result.aid, r.describe()


@given(digraphs(n_max=4))
def test_arcs_project_onto_arcs(r: Digraph):
    ev = ev_build(r, ClassTag.ALL_DIGRAPHS)
    for i, j in ev.graph.arcs():
        a, b = ev.vertices[i], ev.vertices[j]
        assert r.has_arc(a.base, b.base)
        if i != j:
            assert b.down >> a.base & 1
            assert a.up >> b.base & 1
        if a.base == b.base:
            assert i == j


def _check_definition(c: ClassTag, n_max: int, m: int) -> None:
    for r in class_members(c, n_max):
        ev = ev_build(r, c)
        assert ev_arcs_by_definition(ev, m) == ev_arcs(ev), r.describe()


def test_arcs_match_the_definition_on_posets():
    _check_definition(ClassTag.POSET, 3, 4)


def test_arcs_match_the_definition_on_small_digraphs():
    _check_definition(ClassTag.ALL_DIGRAPHS, 2, 2)


@pytest.mark.slow
def test_arcs_match_the_definition_on_digraphs_with_three_vertices():
    _check_definition(ClassTag.ALL_DIGRAPHS, 3, 3)


def test_bug_witness_lifts_its_body_to_the_ev_vertex(pair_b: CorpusEntry):
    ev = ev_build(pair_b.r, ClassTag.POSET)
    for i in range(ev.size):
        iota = bug_witness(ev, i)
        assert alpha_map(iota, ev).images[0] == i


def test_bug_witness_over_random_digraphs():
    rng = random.Random(CONFIG.random_seed)
    for _ in range(20):
        ev = ev_build(random_digraph(rng, 4), ClassTag.ALL_DIGRAPHS)
        for i in range(ev.size):
            assert alpha_map(bug_witness(ev, i), ev).images[0] == i


def test_simple_scheme(pair_a: CorpusEntry, pair_b: CorpusEntry):
    assert verify_simple_scheme(ev_build(pair_a.r, ClassTag.POSET), 4)
    assert verify_simple_scheme(ev_build(pair_b.r, ClassTag.POSET), 4)


def test_simple_scheme_on_a_single_point():
    point = Digraph.from_arcs(1, [], loops=[0])
    assert verify_simple_scheme(ev_build(point, ClassTag.POSET), 3)


def test_simple_scheme_over_random_digraphs():
    rng = random.Random(CONFIG.random_seed)
    for _ in range(10):
        r = random_digraph(rng, 4)
        assert verify_simple_scheme(ev_build(r, ClassTag.ALL_DIGRAPHS), 3), r.describe()


def test_ev_vertex_text(pair_a: CorpusEntry):
    ev = ev_build(pair_a.r, ClassTag.POSET)
    x, m = pair_a.r.index("x"), pair_a.r.index("m")
    a = ev.parse_ev("( x, ∅, {m} )")
    assert a == EvVertex(x, 0, 1 << m)
    assert ev.format_ev(a) == "( x, {}, {m} )"
    with pytest.raises(ValueError):
        ev.parse_ev("( x, {q}, {} )")
