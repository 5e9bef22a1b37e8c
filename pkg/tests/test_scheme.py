import random
from pathlib import Path

import pytest

from src.config import CONFIG
from src.corpus import CORPUS, CorpusEntry
from src.errors import ClassMismatchError, GraphFormatError, NotStrictError
from src.graphs.digraph import ClassTag, Digraph
from src.graphs.enumerate import class_members
from src.ev.ev import ev_build
from src.homs.homs import VertexMap, identity_map
from src.scheme.certify import (
    certify,
    check_lift_empirical,
    induced_consistency,
    reconstruction_holds,
)
from src.scheme.epsilon import (
    EpsilonMap,
    check_base_separation,
    check_lift_sufficient,
    e_set,
    eta,
    identity_epsilon,
    reconstruct,
)
from src.scheme.io import dump_epsilon, load_epsilon
from src.scheme.search import find_inducing_epsilon, random_epsilon


def test_epsilon_a_certifies(epsilon_a: EpsilonMap):
    report = certify(epsilon_a, 4)
    assert report.all_hold, report.format_report()
    assert report.graphs_scanned == 24


def test_epsilon_b_flags(epsilon_b: EpsilonMap):
    report = certify(epsilon_b, 4)
    assert report.strict_hom
    assert not report.injective
    assert report.base_separation
    assert not report.lift_sufficient
    assert not report.lift_empirical
    assert not report.regularity_empirical
    assert report.eta_injective_empirical
    witnesses = report.witnesses["lift_empirical"]
    assert any(w.ev == ["( p, {x}, {} )", "( p, {x, y}, {} )"] for w in witnesses)


def test_base_separation(epsilon_a: EpsilonMap, epsilon_b: EpsilonMap):
    assert check_base_separation(epsilon_a)
    assert check_base_separation(epsilon_b)
    fence = CORPUS.get("flat_poset_family(3)")
    assert fence is not None
    assert not check_base_separation(fence.build_epsilon())


def test_merging_antichain_points_breaks_base_separation():
    antichain = Digraph.from_arcs(2, [], loops=[0, 1])
    ev = ev_build(antichain, ClassTag.POSET)
    assert ev.size == 2
    assert not check_base_separation(EpsilonMap(ev, ev, (0, 0)))
    assert check_base_separation(identity_epsilon(ev))


def test_failed_flags_carry_witnesses(epsilon_b: EpsilonMap):
    report = certify(epsilon_b, 3)
    for name, holds in report.flags().items():
        assert holds or report.witnesses.get(name), name


def test_regular_injective_schemes_need_an_injective_epsilon(epsilon_a: EpsilonMap, epsilon_b: EpsilonMap):
    for e in (epsilon_a, epsilon_b):
        report = certify(e, 4)
        if report.eta_injective_empirical and report.regularity_empirical:
            assert report.injective


def test_induced_maps_depend_only_on_the_lift(epsilon_a: EpsilonMap, epsilon_b: EpsilonMap):
    assert induced_consistency(epsilon_a, 4)
    assert induced_consistency(epsilon_b, 4)


def test_reconstruction(epsilon_a: EpsilonMap, epsilon_b: EpsilonMap):
    assert reconstruction_holds(epsilon_a, 4)
    assert reconstruction_holds(epsilon_b, 4)


def test_reconstruct_under_the_identity_returns_the_fiber(pair_b: CorpusEntry):
    r = pair_b.r
    e = identity_epsilon(ev_build(r, ClassTag.POSET))
    chain = Digraph.from_arcs(2, [(0, 1)], loops=[0, 1])
    xi = VertexMap(chain, r, (r.index("x"), r.index("p")))
    eta_map = eta(e, xi)
    assert eta_map.images == xi.images
    assert reconstruct(e, eta_map, r.index("x")) == 0b01
    assert reconstruct(e, eta_map, r.index("p")) == 0b10
    assert reconstruct(e, eta_map, r.index("m")) == 0


def test_reconstruct_moved_vertex(pair_a: CorpusEntry, epsilon_a: EpsilonMap):
    r = pair_a.r
    eta_map = eta(epsilon_a, identity_map(r))
    assert eta_map.as_labels() == ["y", "p", "m", "y"]
    assert reconstruct(epsilon_a, eta_map, r.index("x")) == 1 << r.index("x")
    with pytest.raises(ValueError):
        reconstruct(epsilon_a, eta_map, r.n)


def test_eta_on_the_chain(pair_b: CorpusEntry, epsilon_b: EpsilonMap):
    r = pair_b.r
    chain = Digraph.from_arcs(2, [(0, 1)], loops=[0, 1])
    xi = VertexMap(chain, r, (r.index("x"), r.index("p")))
    assert eta(epsilon_b, xi).as_labels() == ["x", "p"]
    assert e_set(epsilon_b, xi, chain) == 0b01


def test_eta_needs_a_strict_map(pair_b: CorpusEntry, epsilon_b: EpsilonMap):
    r = pair_b.r
    chain = Digraph.from_arcs(2, [(0, 1)], loops=[0, 1])
    collapsed = VertexMap(chain, r, (r.index("x"), r.index("x")))
    with pytest.raises(NotStrictError):
        eta(epsilon_b, collapsed)


def test_epsilon_map_validation(pair_a: CorpusEntry):
    poset = ev_build(pair_a.r, ClassTag.POSET)
    digraph = ev_build(pair_a.r, ClassTag.ALL_DIGRAPHS)
    with pytest.raises(ClassMismatchError):
        EpsilonMap(poset, digraph, tuple(range(poset.size)))
    with pytest.raises(ValueError):
        EpsilonMap(poset, poset, (0,))


def test_identity_is_certified(pair_a: CorpusEntry):
    report = certify(identity_epsilon(ev_build(pair_a.r, ClassTag.POSET)), 3)
    assert report.all_hold


def test_search_rediscovers_epsilon_a(pair_a: CorpusEntry, epsilon_a: EpsilonMap):
    found = [e.images for e in find_inducing_epsilon(pair_a.r, pair_a.s, ClassTag.POSET, 4)]
    assert epsilon_a.images in found


def test_search_finds_nothing_for_pair_b(pair_b: CorpusEntry):
    assert list(find_inducing_epsilon(pair_b.r, pair_b.s, ClassTag.POSET, 4)) == []


def test_search_rejects_graphs_outside_the_class(pair_a: CorpusEntry):
    cycle = Digraph.from_arcs(2, [(0, 1), (1, 0)], loops=[0, 1])
    with pytest.raises(ClassMismatchError):
        list(find_inducing_epsilon(cycle, pair_a.s, ClassTag.POSET, 2))


def _sample_implications(samples: int, n_max: int) -> int:
    rng = random.Random(CONFIG.random_seed)
    posets = list(class_members(ClassTag.POSET, 4))
    checked = 0
    for _ in range(samples):
        source = ev_build(rng.choice(posets), ClassTag.POSET)
        target = ev_build(rng.choice(posets), ClassTag.POSET)
        e = random_epsilon(source, target, rng, sufficient=True)
        if e is None or not check_lift_sufficient(e):
            continue
        checked += 1
        report = certify(e, n_max)
        assert report.lift_empirical, report.format_report()
        if report.base_separation:
            assert report.eta_injective_empirical, report.format_report()
    return checked


def test_local_conditions_imply_the_lift():
    assert _sample_implications(30, 3) > 0


@pytest.mark.slow
def test_local_conditions_imply_the_lift_on_more_samples():
    assert _sample_implications(200, 4) > 0


def test_random_epsilon_is_strict():
    rng = random.Random(CONFIG.random_seed)
    posets = list(class_members(ClassTag.POSET, 3))
    for _ in range(20):
        source = ev_build(rng.choice(posets), ClassTag.POSET)
        target = ev_build(rng.choice(posets), ClassTag.POSET)
        e = random_epsilon(source, target, rng)
        if e is not None:
            assert certify(e, 1).strict_hom


def test_lift_flag_alone(epsilon_b: EpsilonMap):
    result = check_lift_empirical(epsilon_b, 2)
    assert not result.holds
    assert result.maps_scanned > 0


def test_epsilon_file(tmp_path: Path, pair_a: CorpusEntry, pair_b: CorpusEntry, epsilon_a: EpsilonMap):
    path = tmp_path / "eps.json"
    dump_epsilon(epsilon_a, path)
    assert load_epsilon(path, pair_a.r, pair_a.s).images == epsilon_a.images
    with pytest.raises(GraphFormatError):
        load_epsilon(path, pair_b.r, pair_b.s)
    path.write_text('{"rows": [')
    with pytest.raises(GraphFormatError):
        load_epsilon(path, pair_a.r, pair_a.s)
