import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import StrEnum

import networkx as nx

from src.config import CONFIG
from src.errors import LimitExceededError
from src.graphs.digraph import Digraph, VertexSet, bits, induced_subgraph, mask_of

logger = logging.getLogger(__name__)


class MapKind(StrEnum):
    NONE = "none"
    HOM = "hom"
    STRICT = "strict"


@dataclass(eq=False)
class VertexMap:
    """a total map V(source) -> V(target) with a cached homomorphism classification"""

    source: Digraph
    target: Digraph
    images: tuple[int, ...]
    kind: MapKind | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if len(self.images) != self.source.n:
            raise ValueError(
                f"map has {len(self.images)} images for {self.source.n} source vertices"
            )
        if any(not 0 <= w < self.target.n for w in self.images):
            raise ValueError(f"map {self.images} leaves the target (n={self.target.n})")

    def __call__(self, v: int) -> int:
        return self.images[v]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexMap):
            return NotImplemented
        return (
            self.images == other.images
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self) -> int:
        return hash(self.images)

    def image_of(self, mask: VertexSet) -> VertexSet:
        return mask_of(self.images[v] for v in bits(mask))

    def preimage(self, w: int) -> VertexSet:
        return mask_of(v for v, image in enumerate(self.images) if image == w)

    def classify(self) -> MapKind:
        if self.kind is None:
            self.kind = _classify(self.source, self.target, self.images)
        return self.kind

    def describe(self) -> str:
        return ", ".join(
            f"{self.source.label(v)}->{self.target.label(w)}" for v, w in enumerate(self.images)
        )

    def as_labels(self) -> list[str]:
        return [self.target.label(w) for w in self.images]


def _classify(g: Digraph, h: Digraph, images: tuple[int, ...]) -> MapKind:
    strict = True
    for u, v in g.arcs():
        a, b = images[u], images[v]
        if not h.has_arc(a, b):
            return MapKind.NONE
        if u != v and a == b:
            strict = False
    return MapKind.STRICT if strict else MapKind.HOM


def is_hom(m: VertexMap) -> bool:
    return m.classify() != MapKind.NONE


def is_strict_hom(m: VertexMap) -> bool:
    return m.classify() == MapKind.STRICT


def identity_map(g: Digraph) -> VertexMap:
    return VertexMap(g, g, tuple(range(g.n)), MapKind.STRICT)


def compose(first: VertexMap, second: VertexMap) -> VertexMap:
    """second after first"""
    if first.target != second.source:
        raise ValueError("maps do not compose: target and source differ")
    return VertexMap(first.source, second.target, tuple(second.images[w] for w in first.images))


def restrict(m: VertexMap, mask: VertexSet) -> VertexMap:
    """m on the induced subgraph of its source spanned by mask, vertices in id order"""
    sub, ids = induced_subgraph(m.source, mask)
    return VertexMap(sub, m.target, tuple(m.images[v] for v in ids))


def _search(g: Digraph, h: Digraph, strict: bool) -> Iterator[tuple[int, ...]]:
    """
    backtracking over image arrays in lexicographic order. candidates for
    vertex v are cut down by every arc between v and an already mapped vertex.
    """
    if g.n > CONFIG.hom_max_source:
        raise LimitExceededError(
            f"source graph has {g.n} vertices, enumeration limit is {CONFIG.hom_max_source}"
        )
    n = g.n
    images = [0] * n

    def extend(v: int) -> Iterator[tuple[int, ...]]:
        if v == n:
            yield tuple(images)
            return
        candidates = h.full
        if g.has_loop(v):
            candidates &= h.loop_mask
        for u in range(v):
            image = images[u]
            if g.has_arc(u, v):
                candidates &= h.rows[image]
                if strict:
                    candidates &= ~(1 << image)
            if g.has_arc(v, u):
                candidates &= h.cols[image]
                if strict:
                    candidates &= ~(1 << image)
        for w in bits(candidates):
            images[v] = w
            yield from extend(v + 1)

    yield from extend(0)


def enumerate_homs(g: Digraph, h: Digraph, strict: bool = False) -> Iterator[VertexMap]:
    """H(g, h), or S(g, h) when strict, each map once in lexicographic order"""
    kind = MapKind.STRICT if strict else None
    for images in _search(g, h, strict):
        yield VertexMap(g, h, images, kind)


def count_homs(g: Digraph, h: Digraph, strict: bool = False) -> int:
    return sum(1 for _ in _search(g, h, strict))


def hom_images(g: Digraph, h: Digraph, strict: bool = False) -> Iterator[tuple[int, ...]]:
    """image arrays of enumerate_homs without wrapping them in VertexMap"""
    return _search(g, h, strict)


def gamma_component(m: VertexMap, v: int) -> VertexSet:
    """the weak component of v inside the fiber of m(v)"""
    if not 0 <= v < m.source.n:
        raise ValueError(f"invalid vertex id {v} (n={m.source.n})")
    fiber, ids = induced_subgraph(m.source, m.preimage(m.images[v]))
    component = nx.node_connected_component(
        fiber.to_networkx().to_undirected(), ids.index(v)
    )
    return mask_of(ids[k] for k in component)
