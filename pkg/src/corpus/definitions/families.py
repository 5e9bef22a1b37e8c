from src.corpus.registry import CORPUS, CorpusEntry, Expectations
from src.graphs.digraph import ClassTag, Digraph
from src.ev.ev import EvSystem, EvVertex, ev_build
from src.scheme.epsilon import EpsilonMap
from src.undirected.ev import ev_build_u
from src.undirected.ugraph import UGraph, to_symmetric

FLAT_EXPECTED = {
    "strict_hom": True,
    "lift_sufficient": False,
    "lift_empirical": True,
    "regularity_empirical": True,
}


def fence(k: int) -> Digraph:
    """the flat poset f0 < f1 > f2 < f3 ..., loops included"""
    arcs = [(i, i + 1) if i % 2 == 0 else (i + 1, i) for i in range(k - 1)]
    return Digraph.from_arcs(k, arcs, loops=range(k), labels=[f"f{i}" for i in range(k)])


def _basement_epsilon(source: EvSystem, target: EvSystem) -> EpsilonMap:
    """points with an upper neighbor go to the basement, points with a lower neighbor to the upper floor"""
    low, high = 0, 1
    images: list[int] = []
    for a in source.vertices:
        if a.up:
            image = EvVertex(low, 0, 1 << high)
        elif a.down:
            image = EvVertex(high, 1 << low, 0)
        else:
            image = EvVertex(low)
        images.append(target.lookup(image))
    return EpsilonMap(source, target, tuple(images))


@CORPUS.family("flat_poset_family", range(3, 7))
def flat_poset_family(k: int) -> CorpusEntry:
    r = fence(k)
    chain = Digraph.from_arcs(2, [(0, 1)], loops=range(2), labels=["0", "1"])
    return CorpusEntry(
        name=f"flat_poset_family({k})",
        description=f"fence on {k} points folded onto a 2-chain, lift holds while the local conditions fail",
        cls=ClassTag.POSET,
        r=r,
        s=chain,
        build_epsilon=lambda: _basement_epsilon(
            ev_build(r, ClassTag.POSET), ev_build(chain, ClassTag.POSET)
        ),
        expected=Expectations(n_max=5, flags=FLAT_EXPECTED),
    )


def path_graph(k: int) -> UGraph:
    return UGraph.from_edges(k, [(i, i + 1) for i in range(k - 1)], labels=[f"u{i}" for i in range(k)])


def _side_epsilon(source: EvSystem, target: EvSystem) -> EpsilonMap:
    images: list[int] = []
    for a in source.vertices:
        side = a.base % 2
        nbrs = 1 << (1 - side) if a.down else 0
        images.append(target.lookup(EvVertex(side, nbrs, nbrs)))
    return EpsilonMap(source, target, tuple(images))


@CORPUS.family("flat_bipartite_family", range(3, 7))
def flat_bipartite_family(k: int) -> CorpusEntry:
    path = path_graph(k)
    edge = UGraph.from_edges(2, [(0, 1)], labels=["0", "1"])
    return CorpusEntry(
        name=f"flat_bipartite_family({k})",
        description=f"path on {k} points folded onto an edge by its bipartition",
        cls=ClassTag.CO,
        r=to_symmetric(path),
        s=to_symmetric(edge),
        build_epsilon=lambda: _side_epsilon(
            ev_build_u(path, ClassTag.CO), ev_build_u(edge, ClassTag.CO)
        ),
        expected=Expectations(n_max=4, flags=FLAT_EXPECTED),
    )
