from src.graphs.digraph import ClassTag, Digraph
from src.ev.ev import EvSystem, ev_build
from src.undirected.ev import ev_build_u
from src.undirected.ugraph import from_symmetric


def build_system(r: Digraph, c: ClassTag) -> EvSystem:
    """ev_build for directed classes, ev_build_u on the undirected twin otherwise"""
    if c.directed:
        return ev_build(r, c)
    return ev_build_u(from_symmetric(r), c)
