import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from enum import StrEnum
from functools import cached_property

import networkx as nx

from src.errors import ClassMismatchError

logger = logging.getLogger(__name__)

type VertexSet = int  # bitmask over the ids of one graph


def bits(mask: VertexSet) -> Iterator[int]:
    """ids contained in a vertex set, ascending"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(ids: Iterable[int]) -> VertexSet:
    mask = 0
    for v in ids:
        mask |= 1 << v
    return mask


def submasks(mask: VertexSet) -> Iterator[VertexSet]:
    """every subset of mask in ascending bit-pattern order, starting with the empty set"""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


class ClassTag(StrEnum):
    ALL_DIGRAPHS = "all"
    TA = "ta"
    POSET = "poset"
    STRICT_POSET = "strict_poset"
    ALL_UGRAPHS = "ugraph"
    CO = "co"

    @property
    def directed(self) -> bool:
        return self not in (ClassTag.ALL_UGRAPHS, ClassTag.CO)


@dataclass(frozen=True)
class Digraph:
    """
    a finite digraph on the ids 0..n-1. rows[v] is the bitmask of arc heads
    leaving v, loops included. labels are display names only and do not take
    part in equality.
    """

    n: int
    rows: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"a digraph needs at least one vertex, got n={self.n}")
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise ValueError(f"row {v} references ids outside 0..{self.n - 1}")
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise ValueError(f"expected {self.n} labels, got {len(self.labels)}")
            if len(set(self.labels)) != self.n:
                raise ValueError(f"labels must be unique: {list(self.labels)}")

    @classmethod
    def from_arcs(
        cls,
        n: int,
        arcs: Iterable[tuple[int, int]],
        loops: Iterable[int] = (),
        labels: Iterable[str] | None = None,
    ) -> "Digraph":
        rows = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) references an invalid id (n={n})")
            rows[u] |= 1 << v
        for v in loops:
            if not 0 <= v < n:
                raise ValueError(f"loop at invalid id {v} (n={n})")
            rows[v] |= 1 << v
        return cls(n, tuple(rows), tuple(labels) if labels is not None else None)

    @classmethod
    def from_labeled_arcs(
        cls, labels: list[str], arcs: Iterable[tuple[str, str]], loops: bool = False
    ) -> "Digraph":
        ids = {name: i for i, name in enumerate(labels)}
        return cls.from_arcs(
            len(labels),
            ((ids[u], ids[v]) for u, v in arcs),
            loops=range(len(labels)) if loops else (),
            labels=labels,
        )

    @cached_property
    def cols(self) -> tuple[int, ...]:
        """in-adjacency rows"""
        cols = [0] * self.n
        for u, row in enumerate(self.rows):
            for v in bits(row):
                cols[v] |= 1 << u
        return tuple(cols)

    @cached_property
    def loop_mask(self) -> VertexSet:
        return mask_of(v for v in range(self.n) if self.rows[v] >> v & 1)

    @property
    def full(self) -> VertexSet:
        return (1 << self.n) - 1

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def has_loop(self, v: int) -> bool:
        return bool(self.loop_mask >> v & 1)

    def arcs(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.rows):
            for v in bits(row):
                yield u, v

    def proper_arcs(self) -> Iterator[tuple[int, int]]:
        return ((u, v) for u, v in self.arcs() if u != v)

    def out_nbrs(self, v: int) -> VertexSet:
        return self.rows[v] & ~(1 << v)

    def in_nbrs(self, v: int) -> VertexSet:
        return self.cols[v] & ~(1 << v)

    def nbrs(self, v: int) -> VertexSet:
        return self.out_nbrs(v) | self.in_nbrs(v)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def index(self, name: str) -> int:
        if self.labels is not None and name in self.labels:
            return self.labels.index(name)
        if self.labels is None and name.isdigit() and int(name) < self.n:
            return int(name)
        raise ValueError(f"unknown vertex: {name}")

    def format_set(self, mask: VertexSet) -> str:
        return "{" + ", ".join(self.label(v) for v in bits(mask)) + "}"

    def describe(self) -> str:
        proper = ", ".join(f"{self.label(u)}->{self.label(v)}" for u, v in self.proper_arcs())
        loops = self.loop_mask
        if loops == self.full:
            loop_text = "all"
        elif loops == 0:
            loop_text = "none"
        else:
            loop_text = self.format_set(loops)
        return f"n={self.n} arcs=[{proper}] loops={loop_text}"

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.arcs())
        return graph


def remove_loops(g: Digraph) -> Digraph:
    return Digraph(g.n, tuple(row & ~(1 << v) for v, row in enumerate(g.rows)), g.labels)


def add_loops(g: Digraph, mask: VertexSet | None = None) -> Digraph:
    mask = g.full if mask is None else mask
    return Digraph(
        g.n,
        tuple(row | (1 << v if mask >> v & 1 else 0) for v, row in enumerate(g.rows)),
        g.labels,
    )


def transitive_hull(g: Digraph) -> Digraph:
    rows = list(g.rows)
    for k in range(g.n):
        for i in range(g.n):
            if rows[i] >> k & 1:
                rows[i] |= rows[k]
    return Digraph(g.n, tuple(rows), g.labels)


def relabel(g: Digraph, order: list[int] | tuple[int, ...]) -> Digraph:
    """new vertex k is old vertex order[k]"""
    position = [0] * g.n
    for k, old in enumerate(order):
        position[old] = k
    rows = [0] * g.n
    for k, old in enumerate(order):
        rows[k] = mask_of(position[w] for w in bits(g.rows[old]))
    labels = tuple(g.labels[old] for old in order) if g.labels is not None else None
    return Digraph(g.n, tuple(rows), labels)


def induced_subgraph(g: Digraph, mask: VertexSet) -> tuple[Digraph, list[int]]:
    ids = list(bits(mask))
    position = {v: k for k, v in enumerate(ids)}
    rows = tuple(mask_of(position[w] for w in bits(g.rows[v] & mask)) for v in ids)
    labels = tuple(g.label(v) for v in ids) if g.labels is not None else None
    return Digraph(len(ids), rows, labels), ids


def is_transitive(g: Digraph) -> bool:
    return all(
        g.rows[w] & ~g.rows[v] == 0 for v in range(g.n) for w in bits(g.rows[v])
    )


def is_antisymmetric(g: Digraph) -> bool:
    return all(not g.has_arc(v, u) for u, v in g.proper_arcs())


def is_acyclic(g: Digraph) -> bool:
    """true iff the loop-free part has no closed walk"""
    return transitive_hull(remove_loops(g)).loop_mask == 0


def is_symmetric(g: Digraph) -> bool:
    return all(g.rows[v] == g.cols[v] for v in range(g.n))


def is_symmetric_bipartite(g: Digraph) -> bool:
    """bipartiteness of the loop-free part of a symmetric digraph"""
    undirected = nx.Graph()
    undirected.add_nodes_from(range(g.n))
    undirected.add_edges_from(remove_loops(g).arcs())
    return nx.is_bipartite(undirected)


def class_membership(g: Digraph, c: ClassTag) -> bool:
    match c:
        case ClassTag.ALL_DIGRAPHS:
            return True
        case ClassTag.TA:
            return is_acyclic(g)
        case ClassTag.POSET:
            return g.loop_mask == g.full and is_antisymmetric(g) and is_transitive(g)
        case ClassTag.STRICT_POSET:
            return g.loop_mask == 0 and is_antisymmetric(g) and is_transitive(g)
        case _:
            raise ClassMismatchError(
                f"class {c.value} is undirected and cannot be tested on a digraph"
            )


def member_of(g: Digraph, c: ClassTag) -> bool:
    """class test that also accepts undirected tags, reading g as a symmetric digraph"""
    if c.directed:
        return class_membership(g, c)
    if not is_symmetric(g):
        return False
    return c == ClassTag.ALL_UGRAPHS or is_symmetric_bipartite(g)


def neighborhoods(g: Digraph, v: int) -> tuple[VertexSet, VertexSet]:
    if not 0 <= v < g.n:
        raise ValueError(f"invalid vertex id {v} (n={g.n})")
    return g.in_nbrs(v), g.out_nbrs(v)


def class_closure(g: Digraph, c: ClassTag) -> Digraph:
    """the smallest supergraph in the class for posets and strict posets; other classes leave g unchanged"""
    match c:
        case ClassTag.POSET:
            return add_loops(transitive_hull(g))
        case ClassTag.STRICT_POSET:
            return transitive_hull(g)
        case _:
            return g
