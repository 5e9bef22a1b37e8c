from src.corpus.definitions.pairs import ALL_FLAGS_HOLD
from src.corpus.registry import CORPUS, CorpusEntry, EpsilonRow, Expectations
from src.graphs.digraph import ClassTag
from src.rearrange.rearrange import RearrangementSpec
from src.undirected.rearrange import epsilon_from_rho_u
from src.undirected.ugraph import UGraph, to_symmetric


@CORPUS.entry("pair_a_undirected")
def pair_a_undirected() -> CorpusEntry:
    labels = ["x", "p", "m", "y"]
    r = UGraph.from_labeled_edges(labels, [("x", "m"), ("m", "p"), ("p", "y")])
    s = UGraph.from_labeled_edges(labels, [("p", "m"), ("p", "y"), ("m", "y")])
    spec = RearrangementSpec.from_map(1 << 0, 1 << 3, 1 << 2, {0: 3})
    rows = [
        EpsilonRow(source=a, target=b)
        for a, b in (
            ("( x, ∅ )", "( x, ∅ )"),
            ("( x, {m} )", "( y, {m} )"),
            ("( p, ∅ )", "( p, ∅ )"),
            ("( p, {m} )", "( p, {m} )"),
            ("( p, {y} )", "( p, {y} )"),
            ("( p, {m, y} )", "( p, {m, y} )"),
            ("( m, ∅ )", "( m, ∅ )"),
            ("( m, {x} )", "( m, {y} )"),
            ("( m, {p} )", "( m, {p} )"),
            ("( m, {x, p} )", "( m, {p, y} )"),
            ("( y, ∅ )", "( y, ∅ )"),
            ("( y, {p} )", "( y, {p} )"),
        )
    ]
    return CorpusEntry(
        name="pair_a_undirected",
        description="undirected twin of pair_a without loops, the move turns the path into a triangle and isolates x",
        cls=ClassTag.ALL_UGRAPHS,
        r=to_symmetric(r),
        s=to_symmetric(s),
        spec=spec,
        build_epsilon=lambda: epsilon_from_rho_u(r, spec, ClassTag.ALL_UGRAPHS),
        expected=Expectations(n_max=4, epsilon_rows=rows, flags=ALL_FLAGS_HOLD, ev_sizes=(12, 13)),
        notes="edges are the symmetric closure of the pair_a arcs, loops dropped",
    )
