import itertools
from pathlib import Path

import pytest

from src.corpus import CORPUS
from src.errors import ClassMismatchError, GraphFormatError, InvalidSpecError
from src.graphs.digraph import ClassTag, Digraph
from src.homs.homs import count_homs
from src.ev.ev import check_erd_aid
from src.ev.witness import ev_arcs, ev_arcs_by_definition
from src.rearrange.rearrange import RearrangementSpec
from src.scheme.certify import certify
from src.undirected.bugs import x1_aut_properties
from src.undirected.ev import UEvVertex, check_lift_sufficient_u, ev_build_u, uev_vertex_count
from src.undirected.rearrange import epsilon_from_rho_u, rearrange_u, validate_spec_u
from src.undirected.ugraph import (
    UGraph,
    UGraphFile,
    count_homs_u,
    enumerate_uclass,
    from_symmetric,
    is_in_co,
    load_ugraph,
    to_symmetric,
)

TRIANGLE = UGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
PATH = UGraph.from_edges(3, [(0, 1), (1, 2)])


def _ugraphs(n_max: int) -> list[UGraph]:
    return [g for n in range(1, n_max + 1) for g in enumerate_uclass(ClassTag.ALL_UGRAPHS, n)]


def _check_twin_counts(n_max: int) -> None:
    graphs = _ugraphs(n_max)
    for g, h in itertools.product(graphs, repeat=2):
        for strict in (False, True):
            assert count_homs_u(g, h, strict) == count_homs(to_symmetric(g), to_symmetric(h), strict)


def test_twin_counts():
    _check_twin_counts(3)


@pytest.mark.slow
def test_twin_counts_on_four_vertices():
    _check_twin_counts(4)


def test_undirected_graph_counts():
    assert [len(list(enumerate_uclass(ClassTag.ALL_UGRAPHS, n))) for n in range(1, 4)] == [2, 6, 20]


def test_bipartite_class():
    assert not is_in_co(TRIANGLE)
    assert is_in_co(PATH)
    assert is_in_co(UGraph.from_edges(3, [(0, 1), (1, 2)], loops=[0, 1, 2]))
    assert all(is_in_co(g) for g in enumerate_uclass(ClassTag.CO, 3))


def test_symmetric_twins():
    g = UGraph.from_edges(3, [(0, 1)], loops=[2])
    assert from_symmetric(to_symmetric(g)) == g
    with pytest.raises(ClassMismatchError):
        from_symmetric(Digraph.from_arcs(2, [(0, 1)]))


def test_size_formula():
    for g in _ugraphs(4):
        ev = ev_build_u(g)
        assert ev.size == uev_vertex_count(g) == sum(2 ** g.nbrs(v).bit_count() for v in range(g.n))


def test_aid_holds():
    for g in _ugraphs(4):
        assert check_erd_aid(ev_build_u(g)).aid, g.describe()
        if is_in_co(g):
            assert check_erd_aid(ev_build_u(g, ClassTag.CO)).aid, g.describe()


def test_co_rejects_odd_cycles():
    with pytest.raises(ClassMismatchError):
        ev_build_u(TRIANGLE, ClassTag.CO)
    with pytest.raises(ClassMismatchError):
        ev_build_u(PATH, ClassTag.POSET)


def test_arcs_match_the_definition():
    for g in _ugraphs(3):
        ev = ev_build_u(g)
        assert ev_arcs_by_definition(ev, 2) == ev_arcs(ev), g.describe()


def test_ev_vertices_are_pairs():
    ev = ev_build_u(PATH)
    assert [UEvVertex.from_triple(a) for a in ev.vertices][:2] == [UEvVertex(0, 0), UEvVertex(0, 0b10)]
    assert ev.format_vertex(1) == "( 0, {1} )"


def test_x1_automorphisms():
    report = x1_aut_properties()
    assert report.aut_x1 == 2
    assert report.aut_by_m == {0: 1, 2: 2, 3: 6, 4: 24}
    assert all(report.body_fixed.values())
    assert report.holds, report.format_report()
    assert any(pair.collide and pair.j_size == 4 and pair.rho_j_size == 2 for pair in report.pairs)
    assert any(pair.j_size == 2 for pair in report.pairs)


def test_rearrange_pair_a_mirror():
    entry = CORPUS.get("pair_a_undirected")
    assert entry is not None and entry.spec is not None
    r = from_symmetric(entry.r)
    s = rearrange_u(r, entry.spec)
    assert to_symmetric(s) == entry.s
    assert not is_in_co(s)
    e = epsilon_from_rho_u(r, entry.spec)
    assert len(set(e.images)) == e.source.size == 12
    assert check_lift_sufficient_u(e)
    assert certify(e, 3).all_hold


def test_undirected_spec_validation():
    r = UGraph.from_labeled_edges(["x", "m", "y", "v"], [("x", "m"), ("x", "v")])
    spec = RearrangementSpec.from_map(1 << 0, 1 << 2, 1 << 1, {0: 2})
    assert [v.rule for v in validate_spec_u(r, spec)] == ["neighborhood_not_covered"]
    with pytest.raises(InvalidSpecError):
        rearrange_u(r, spec)


def test_rearrange_moves_edges_to_beta():
    r = UGraph.from_labeled_edges(["x", "m", "y", "v"], [("x", "m"), ("x", "v"), ("y", "v")])
    spec = RearrangementSpec.from_map(1 << 0, 1 << 2, 1 << 1, {0: 2})
    s = rearrange_u(r, spec)
    assert s.has_edge(1, 2) and not s.has_edge(0, 1)
    assert s.has_edge(0, 3) and s.has_edge(2, 3)


def test_ugraph_file(tmp_path: Path):
    g = UGraph.from_labeled_edges(["a", "b", "c"], [("a", "b")])
    g = UGraph.from_edges(3, g.edges, loops=[2], labels=g.labels)
    path = tmp_path / "g.json"
    path.write_text(UGraphFile.from_ugraph(g).model_dump_json())
    loaded = load_ugraph(path)
    assert loaded == g
    assert loaded.labels == ("a", "b", "c")
    path.write_text('{"edges": ')
    with pytest.raises(GraphFormatError):
        load_ugraph(path)
