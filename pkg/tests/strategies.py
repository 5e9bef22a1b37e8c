import random

from hypothesis import strategies as st

from src.graphs.digraph import Digraph


def random_digraph(rng: random.Random, n_max: int, loop_chance: float = 0.5, arc_chance: float = 0.35) -> Digraph:
    n = rng.randint(1, n_max)
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < arc_chance]
    loops = [v for v in range(n) if rng.random() < loop_chance]
    return Digraph.from_arcs(n, arcs, loops=loops, labels=[f"v{i}" for i in range(n)])


@st.composite
def digraphs(draw: st.DrawFn, n_min: int = 1, n_max: int = 5) -> Digraph:
    n = draw(st.integers(n_min, n_max))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=n, max_size=n))
    return Digraph(n, tuple(rows))
