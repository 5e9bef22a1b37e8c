from src.corpus.registry import CORPUS, CorpusEntry, EpsilonRow, Expectations, Trace, TraceRow
from src.graphs.digraph import ClassTag, Digraph
from src.ev.ev import ev_build
from src.rearrange.rearrange import RearrangementSpec, epsilon_explicit
from src.scheme.epsilon import identity_epsilon


def _move_x_to_y(r: Digraph) -> RearrangementSpec:
    x, y, m = r.index("x"), r.index("y"), r.index("m")
    return RearrangementSpec.from_map(1 << x, 1 << y, 1 << m, {x: y})


def _rows(*pairs: tuple[str, str]) -> list[EpsilonRow]:
    return [EpsilonRow(source=a, target=b) for a, b in pairs]


ALL_FLAGS_HOLD = {
    "strict_hom": True,
    "injective": True,
    "base_separation": True,
    "lift_sufficient": True,
    "lift_empirical": True,
    "regularity_empirical": True,
    "eta_injective_empirical": True,
}


@CORPUS.entry("pair_a")
def pair_a() -> CorpusEntry:
    r = Digraph.from_labeled_arcs(
        ["x", "p", "m", "y"], [("x", "m"), ("p", "m"), ("p", "y")], loops=True
    )
    s = Digraph.from_labeled_arcs(
        ["x", "p", "m", "y"], [("p", "m"), ("p", "y"), ("y", "m")], loops=True
    )
    spec = _move_x_to_y(r)
    rows = _rows(
        ("( x, ∅, ∅ )", "( x, ∅, ∅ )"),
        ("( x, ∅, {m} )", "( y, ∅, {m} )"),
        ("( p, ∅, {m} )", "( p, ∅, {m} )"),
        ("( p, ∅, {m, y} )", "( p, ∅, {m, y} )"),
    )
    rows.append(
        EpsilonRow(source="( p, ∅, {y} )", target="( p, ∅, {y} )", printed_source="( p, ∅, {m} )")
    )
    rows += _rows(
        ("( p, ∅, ∅ )", "( p, ∅, ∅ )"),
        ("( m, ∅, ∅ )", "( m, ∅, ∅ )"),
        ("( m, {x}, ∅ )", "( m, {y}, ∅ )"),
        ("( m, {x, p}, ∅ )", "( m, {y, p}, ∅ )"),
        ("( m, {p}, ∅ )", "( m, {p}, ∅ )"),
        ("( y, {p}, ∅ )", "( y, {p}, ∅ )"),
        ("( y, ∅, ∅ )", "( y, ∅, ∅ )"),
    )
    return CorpusEntry(
        name="pair_a",
        description="posets where moving x to y gives an injective epsilon satisfying the lift condition",
        cls=ClassTag.POSET,
        r=r,
        s=s,
        spec=spec,
        build_epsilon=lambda: epsilon_explicit(r, spec, ClassTag.POSET),
        expected=Expectations(
            n_max=4,
            epsilon_rows=rows,
            b_phi=["( x, ∅, {m} )"],
            flags=ALL_FLAGS_HOLD,
            ev_sizes=(12, 13),
        ),
        notes=(
            "graphs read off the ev-tables: N_out(x) = {m}, N_in(m) = {x, p}, N_in(y) = {p}; "
            "second pair of the table of rearranged poset pairs"
        ),
    )


@CORPUS.entry("pair_b")
def pair_b() -> CorpusEntry:
    labels = ["x", "p", "m", "y", "q"]
    r = Digraph.from_labeled_arcs(
        labels, [("x", "m"), ("x", "p"), ("y", "p"), ("y", "q")], loops=True
    )
    s = Digraph.from_labeled_arcs(
        labels, [("x", "p"), ("y", "p"), ("y", "q"), ("y", "m")], loops=True
    )
    spec = _move_x_to_y(r)
    rows = _rows(
        ("( x, ∅, ∅ )", "( x, ∅, ∅ )"),
        ("( x, ∅, {m} )", "( y, ∅, {m} )"),
        ("( x, ∅, {m, p} )", "( y, ∅, {p, m} )"),
        ("( x, ∅, {p} )", "( x, ∅, {p} )"),
        ("( y, ∅, ∅ )", "( y, ∅, ∅ )"),
        ("( y, ∅, {q} )", "( y, ∅, {q} )"),
        ("( y, ∅, {p, q} )", "( y, ∅, {p, q} )"),
        ("( y, ∅, {p} )", "( y, ∅, {p} )"),
        ("( m, ∅, ∅ )", "( m, ∅, ∅ )"),
        ("( m, {x}, ∅ )", "( m, {y}, ∅ )"),
        ("( p, ∅, ∅ )", "( p, ∅, ∅ )"),
        ("( p, {x}, ∅ )", "( p, {x, y}, ∅ )"),
        ("( p, {x, y}, ∅ )", "( p, {x, y}, ∅ )"),
        ("( p, {y}, ∅ )", "( p, {y}, ∅ )"),
        ("( q, ∅, ∅ )", "( q, ∅, ∅ )"),
        ("( q, {y}, ∅ )", "( q, {y}, ∅ )"),
    )
    traces = [
        Trace(
            name="C",
            labels=["0", "1"],
            covers=[("0", "1")],
            xi={"0": "x", "1": "p"},
            eta={"0": "x", "1": "p"},
            rows=[
                TraceRow(vertex="0", alpha="( x, ∅, {p} )", epsilon_alpha="( x, ∅, {p} )", alpha_eta="( x, ∅, {p} )"),
                TraceRow(vertex="1", alpha="( p, {x}, ∅ )", epsilon_alpha="( p, {x, y}, ∅ )", alpha_eta="( p, {x}, ∅ )"),
            ],
        ),
        Trace(
            name="V",
            labels=["00", "10", "01"],
            covers=[("00", "10"), ("00", "01")],
            xi={"00": "x", "10": "m", "01": "p"},
            eta={"00": "y", "10": "m", "01": "p"},
            rows=[
                TraceRow(vertex="00", alpha="( x, ∅, {m, p} )", epsilon_alpha="( y, ∅, {p, m} )", alpha_eta="( y, ∅, {p, m} )"),
                TraceRow(vertex="10", alpha="( m, {x}, ∅ )", epsilon_alpha="( m, {y}, ∅ )", alpha_eta="( m, {y}, ∅ )"),
                TraceRow(vertex="01", alpha="( p, {x}, ∅ )", epsilon_alpha="( p, {x, y}, ∅ )", alpha_eta="( p, {y}, ∅ )"),
            ],
        ),
        Trace(
            name="N",
            labels=["100", "001", "101", "011"],
            covers=[("100", "101"), ("001", "101"), ("001", "011")],
            xi={"100": "y", "001": "x", "101": "p", "011": "m"},
            rows=[
                TraceRow(vertex="100", alpha="( y, ∅, {p} )", epsilon_alpha="( y, ∅, {p} )", alpha_eta="( y, ∅, {p} )"),
                TraceRow(vertex="001", alpha="( x, ∅, {m, p} )", epsilon_alpha="( y, ∅, {p, m} )", alpha_eta="( y, ∅, {p, m} )"),
                TraceRow(vertex="101", alpha="( p, {x, y}, ∅ )", epsilon_alpha="( p, {x, y}, ∅ )", alpha_eta="( p, {y}, ∅ )"),
                TraceRow(vertex="011", alpha="( m, {x}, ∅ )", epsilon_alpha="( m, {y}, ∅ )", alpha_eta="( m, {y}, ∅ )"),
            ],
        ),
    ]
    return CorpusEntry(
        name="pair_b",
        description="posets where moving x to y identifies two ev-vertices over p",
        cls=ClassTag.POSET,
        r=r,
        s=s,
        spec=spec,
        build_epsilon=lambda: epsilon_explicit(r, spec, ClassTag.POSET),
        expected=Expectations(
            n_max=4,
            epsilon_rows=rows,
            b_phi=["( x, ∅, {m} )", "( x, ∅, {m, p} )"],
            traces=traces,
            flags={
                "strict_hom": True,
                "injective": False,
                "base_separation": True,
                "lift_sufficient": False,
                "lift_empirical": False,
                "regularity_empirical": False,
                "eta_injective_empirical": True,
            },
            ev_sizes=(16, 18),
        ),
        notes="graphs read off the ev-tables; sixth pair of the table of rearranged poset pairs",
    )


@CORPUS.entry("two_cycle_demo")
def two_cycle_demo() -> CorpusEntry:
    r = Digraph.from_labeled_arcs(["a", "b"], [("a", "b"), ("b", "a")])
    return CorpusEntry(
        name="two_cycle_demo",
        description="the 2-cycle over all digraphs: its ev-system contains a 2-cycle and keeps the lift identity",
        cls=ClassTag.ALL_DIGRAPHS,
        r=r,
        s=r,
        build_epsilon=lambda: identity_epsilon(ev_build(r, ClassTag.ALL_DIGRAPHS)),
        expected=Expectations(n_max=3, flags=ALL_FLAGS_HOLD, ev_sizes=(8, 8), aid=True),
    )
