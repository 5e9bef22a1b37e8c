import itertools
import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import networkx as nx
from pydantic import BaseModel, ValidationError

from src.config import CONFIG
from src.errors import ClassMismatchError, GraphFormatError, LimitExceededError
from src.graphs.digraph import ClassTag, Digraph, VertexSet, bits, is_symmetric, mask_of
from src.graphs.enumerate import enumerate_symmetric

logger = logging.getLogger(__name__)

type Edge = tuple[int, int]


def _normalize(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class UGraph:
    """an undirected graph on 0..n-1; edges are sorted pairs, a loop is (v, v)"""

    n: int
    edges: frozenset[Edge]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"a graph needs at least one vertex, got n={self.n}")
        for u, v in self.edges:
            if not (0 <= u <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) is not a sorted pair of valid ids (n={self.n})")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError(f"expected {self.n} labels, got {len(self.labels)}")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        loops: Iterable[int] = (),
        labels: Iterable[str] | None = None,
    ) -> "UGraph":
        normalized = {_normalize(u, v) for u, v in edges} | {(v, v) for v in loops}
        return cls(n, frozenset(normalized), tuple(labels) if labels is not None else None)

    @classmethod
    def from_labeled_edges(
        cls, labels: list[str], edges: Iterable[tuple[str, str]], loops: bool = False
    ) -> "UGraph":
        ids = {name: i for i, name in enumerate(labels)}
        return cls.from_edges(
            len(labels),
            ((ids[u], ids[v]) for u, v in edges),
            loops=range(len(labels)) if loops else (),
            labels=labels,
        )

    @cached_property
    def adjacency(self) -> tuple[VertexSet, ...]:
        """open neighborhoods"""
        rows = [0] * self.n
        for u, v in self.edges:
            if u != v:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        return tuple(rows)

    @cached_property
    def loop_mask(self) -> VertexSet:
        return mask_of(u for u, v in self.edges if u == v)

    def nbrs(self, v: int) -> VertexSet:
        return self.adjacency[v]

    def has_loop(self, v: int) -> bool:
        return bool(self.loop_mask >> v & 1)

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def describe(self) -> str:
        edges = ", ".join(
            f"{self.label(u)}-{self.label(v)}" for u, v in self.sorted_edges() if u != v
        )
        loops = ", ".join(self.label(v) for v in bits(self.loop_mask))
        return f"n={self.n} edges=[{edges}] loops=[{loops}]"

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph


def to_symmetric(g: UGraph) -> Digraph:
    arcs = [(u, v) for u, v in g.edges] + [(v, u) for u, v in g.edges if u != v]
    return Digraph.from_arcs(g.n, arcs, labels=g.labels)


def from_symmetric(d: Digraph) -> UGraph:
    if not is_symmetric(d):
        raise ClassMismatchError("digraph is not symmetric and has no undirected twin")
    return UGraph.from_edges(d.n, ((u, v) for u, v in d.arcs() if u <= v), labels=d.labels)


def is_in_co(g: UGraph) -> bool:
    """no odd cycle once loops are removed"""
    graph = g.to_networkx()
    graph.remove_edges_from(nx.selfloop_edges(graph))
    return nx.is_bipartite(graph)


def enumerate_uclass(c: ClassTag, n: int) -> Iterator[UGraph]:
    for d in enumerate_symmetric(c, n):
        yield from_symmetric(d)


def _images(g: UGraph, h: UGraph, strict: bool) -> Iterator[tuple[int, ...]]:
    if g.n > CONFIG.hom_max_source:
        raise LimitExceededError(
            f"source graph has {g.n} vertices, enumeration limit is {CONFIG.hom_max_source}"
        )
    edges = g.sorted_edges()
    for images in itertools.product(range(h.n), repeat=g.n):
        if all(
            h.has_edge(images[u], images[v]) and (not strict or u == v or images[u] != images[v])
            for u, v in edges
        ):
            yield images


def count_homs_u(g: UGraph, h: UGraph, strict: bool = False) -> int:
    """brute force over all vertex maps, kept independent of the directed backtracking"""
    return sum(1 for _ in _images(g, h, strict))


class UGraphFile(BaseModel):
    """`{"labels": [...], "edges": [[0, 1]], "loops": [ids]}`"""

    labels: list[str] | None = None
    n: int | None = None
    edges: list[tuple[int, int]] = []
    loops: list[int] = []

    def to_ugraph(self) -> UGraph:
        n = len(self.labels) if self.labels is not None else self.n
        if n is None:
            raise GraphFormatError("graph file needs either `labels` or `n`")
        if n > CONFIG.graph_max_vertices:
            raise LimitExceededError(
                f"graph has {n} vertices, the limit is {CONFIG.graph_max_vertices}"
            )
        try:
            return UGraph.from_edges(n, self.edges, loops=self.loops, labels=self.labels)
        except ValueError as e:
            raise GraphFormatError(str(e)) from e

    @classmethod
    def from_ugraph(cls, g: UGraph) -> "UGraphFile":
        return cls(
            labels=list(g.labels) if g.labels is not None else None,
            n=None if g.labels is not None else g.n,
            edges=[(u, v) for u, v in g.sorted_edges() if u != v],
            loops=list(bits(g.loop_mask)),
        )


def load_ugraph(path: Path) -> UGraph:
    try:
        graph_file = UGraphFile.model_validate_json(path.read_text())
    except ValidationError as e:
        raise GraphFormatError(f"could not parse graph file {path}: {e}") from e
    return graph_file.to_ugraph()
