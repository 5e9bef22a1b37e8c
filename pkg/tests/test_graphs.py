from math import factorial
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import ClassMismatchError, GraphFormatError, LimitExceededError
from src.graphs.canonical import automorphism_count, canonical_form, is_isomorphic
from src.graphs.digraph import (
    ClassTag,
    Digraph,
    add_loops,
    class_membership,
    is_antisymmetric,
    neighborhoods,
    relabel,
    remove_loops,
    transitive_hull,
)
from src.graphs.enumerate import bug_graph, class_members, enumerate_class, undirected_bug
from src.graphs.io import GraphFile, dump_graph, load_graph, to_dot

from tests.strategies import digraphs


@given(digraphs())
def test_transitive_hull_is_idempotent(g: Digraph):
    hull = transitive_hull(g)
    assert transitive_hull(hull) == hull


@given(digraphs())
def test_transitive_hull_is_monotone(g: Digraph):
    hull = transitive_hull(g)
    assert all(hull.has_arc(u, v) for u, v in g.arcs())


@given(digraphs())
def test_hull_with_loops_is_a_poset_iff_antisymmetric(g: Digraph):
    hull = transitive_hull(g)
    assert class_membership(add_loops(hull), ClassTag.POSET) == is_antisymmetric(hull)


@given(digraphs())
def test_remove_loops_is_idempotent(g: Digraph):
    assert remove_loops(remove_loops(g)) == remove_loops(g)


@settings(max_examples=300)
@given(digraphs(n_max=6), st.randoms(use_true_random=False))
def test_canonical_form_is_invariant_under_relabeling(g: Digraph, rnd):
    order = list(range(g.n))
    rnd.shuffle(order)
    assert canonical_form(relabel(g, order)) == canonical_form(g)


def test_canonical_form_size_limit():
    g = Digraph.from_arcs(9, [])
    with pytest.raises(LimitExceededError):
        canonical_form(g)


@pytest.mark.parametrize("n,expected", [(1, 2), (2, 10), (3, 104)])
def test_digraph_counts(n: int, expected: int):
    assert len(list(enumerate_class(ClassTag.ALL_DIGRAPHS, n))) == expected


@pytest.mark.slow
def test_digraph_count_on_four_vertices():
    assert len(list(enumerate_class(ClassTag.ALL_DIGRAPHS, 4))) == 3044


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (3, 5), (4, 16), (5, 63)])
def test_poset_counts(n: int, expected: int):
    posets = list(enumerate_class(ClassTag.POSET, n))
    assert len(posets) == expected
    assert all(class_membership(p, ClassTag.POSET) for p in posets)


def test_strict_posets_are_posets_without_loops():
    strict = list(enumerate_class(ClassTag.STRICT_POSET, 4))
    assert len(strict) == 16
    assert all(g.loop_mask == 0 for g in strict)


def test_enumeration_has_no_isomorphic_duplicates():
    graphs = list(enumerate_class(ClassTag.TA, 3))
    for i, g in enumerate(graphs):
        assert not any(is_isomorphic(g, h) for h in graphs[i + 1 :])


def test_enumeration_limit():
    with pytest.raises(LimitExceededError):
        list(enumerate_class(ClassTag.ALL_DIGRAPHS, 5))


def test_undirected_tag_is_rejected_on_digraphs():
    g = Digraph.from_arcs(2, [(0, 1)])
    with pytest.raises(ClassMismatchError):
        class_membership(g, ClassTag.CO)


def test_class_members_streams_every_size():
    sizes = {g.n for g in class_members(ClassTag.POSET, 3)}
    assert sizes == {1, 2, 3}


def test_neighborhoods_exclude_loops():
    g = Digraph.from_arcs(3, [(0, 1), (2, 1)], loops=[1])
    assert neighborhoods(g, 1) == (0b101, 0)
    with pytest.raises(ValueError):
        neighborhoods(g, 3)


@pytest.mark.parametrize("c", [ClassTag.ALL_DIGRAPHS, ClassTag.TA, ClassTag.POSET, ClassTag.STRICT_POSET])
@pytest.mark.parametrize("m,n", [(m, n) for m in range(6) for n in range(6) if m + n <= 5])
def test_bug_automorphisms(c: ClassTag, m: int, n: int):
    g, _, _, _ = bug_graph(m, n, c)
    assert automorphism_count(g) == factorial(m) * factorial(n)


def test_bug_graph_lands_in_its_class():
    g, body, down, up = bug_graph(2, 1, ClassTag.POSET)
    assert class_membership(g, ClassTag.POSET)
    assert body == 0
    assert down == 0b110
    assert up == 0b1000


@pytest.mark.parametrize("m,expected", [(0, 1), (1, 2), (2, 2), (3, 6), (4, 24)])
def test_undirected_bug_automorphisms(m: int, expected: int):
    g, _, _ = undirected_bug(m)
    assert automorphism_count(g) == expected


def test_graph_file_keeps_labels_and_loops():
    g = Digraph.from_labeled_arcs(["x", "p", "m"], [("x", "m"), ("p", "m")], loops=True)
    graph_file = GraphFile.from_digraph(g, ClassTag.POSET)
    assert graph_file.loops == "all"
    assert graph_file.to_digraph() == g
    assert '"class":"poset"' in graph_file.dump()


def test_dot_clusters_and_order():
    g = Digraph.from_arcs(3, [(0, 1), (1, 2)])
    text = to_dot(g, name="G", clusters=[("left", [0, 1])])
    assert "subgraph cluster_0" in text
    assert text.index("n0 -> n1") < text.index("n1 -> n2")


def test_vertex_names():
    plain = Digraph.from_arcs(3, [(0, 1)])
    assert plain.index("2") == 2
    with pytest.raises(ValueError):
        plain.index("3")
    labeled = Digraph.from_labeled_arcs(["x", "1", "m"], [("x", "m")], loops=True)
    assert labeled.index("1") == 1
    assert labeled.index("m") == 2
    with pytest.raises(ValueError):
        labeled.index("0")


def test_graph_file_round_trip_and_bad_input(tmp_path: Path):
    g = Digraph.from_labeled_arcs(["x", "p", "m"], [("x", "m"), ("p", "m")], loops=True)
    path = tmp_path / "r.json"
    dump_graph(g, path, ClassTag.POSET)
    assert load_graph(path) == (g, ClassTag.POSET)
    for text in ("{not json", '{"labels": ["x"], "arcs": "none"}'):
        path.write_text(text)
        with pytest.raises(GraphFormatError):
            load_graph(path)
