import logging
import re
from dataclasses import dataclass
from functools import cached_property

from pydantic import BaseModel

from src.config import CONFIG
from src.errors import ClassMismatchError, LimitExceededError, NotStrictError
from src.graphs.digraph import (
    ClassTag,
    Digraph,
    VertexSet,
    bits,
    class_membership,
    mask_of,
    member_of,
    submasks,
)
from src.graphs.enumerate import class_members
from src.homs.homs import VertexMap, compose, enumerate_homs, is_strict_hom

logger = logging.getLogger(__name__)

_EV_TEXT = re.compile(r"^\(\s*([^,\s]+)\s*,\s*\{([^}]*)\}\s*(?:,\s*\{([^}]*)\}\s*)?\)$")


@dataclass(frozen=True, order=True)
class EvVertex:
    """(base, down, up) with down inside the in-neighborhood and up inside the out-neighborhood of base"""

    base: int
    down: VertexSet = 0
    up: VertexSet = 0


@dataclass(frozen=True)
class EvSystem:
    """
    the ev-system of base_graph with respect to cls. vertices are kept in
    (base, down, up) order and graph is a digraph over their indices. an
    undirected system stores its pairs (v, D) as triples (v, D, D) over the
    symmetric base graph.
    """

    base_graph: Digraph
    cls: ClassTag
    vertices: tuple[EvVertex, ...]
    graph: Digraph

    @cached_property
    def index(self) -> dict[EvVertex, int]:
        return {a: i for i, a in enumerate(self.vertices)}

    @cached_property
    def phi(self) -> tuple[int, ...]:
        return tuple(a.base for a in self.vertices)

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def undirected(self) -> bool:
        return not self.cls.directed

    def fiber(self, v: int) -> list[int]:
        return [i for i, a in enumerate(self.vertices) if a.base == v]

    def lookup(self, a: EvVertex) -> int:
        i = self.index.get(a)
        if i is None:
            raise ValueError(f"{self.format_ev(a)} is not a vertex of this ev-system")
        return i

    def format_ev(self, a: EvVertex) -> str:
        g = self.base_graph
        if self.undirected:
            return f"( {g.label(a.base)}, {g.format_set(a.down)} )"
        return f"( {g.label(a.base)}, {g.format_set(a.down)}, {g.format_set(a.up)} )"

    def format_vertex(self, i: int) -> str:
        return self.format_ev(self.vertices[i])

    def parse_ev(self, text: str) -> EvVertex:
        """inverse of format_ev; `{}` and `∅` both denote the empty set"""
        match = _EV_TEXT.match(text.strip().replace("∅", "{}"))
        if match is None:
            raise ValueError(f"cannot parse ev-vertex: {text}")
        g = self.base_graph

        def parse_set(body: str | None) -> VertexSet:
            names = [part.strip() for part in (body or "").split(",") if part.strip()]
            return mask_of(g.index(name) for name in names)

        base = g.index(match.group(1))
        down = parse_set(match.group(2))
        up = down if self.undirected else parse_set(match.group(3))
        return EvVertex(base, down, up)

    def format_table(self) -> str:
        lines = [f"# ev-system of class {self.cls.value}: {self.size} vertices", ""]
        for v in range(self.base_graph.n):
            for i in self.fiber(v):
                loop = " (loop)" if self.graph.has_loop(i) else ""
                lines.append(f"{i:>4}  {self.format_vertex(i)}{loop}")
        return "\n".join(lines)


def ev_vertex_count(r: Digraph) -> int:
    return sum(
        2 ** (r.in_nbrs(v).bit_count() + r.out_nbrs(v).bit_count()) for v in range(r.n)
    )


def ev_vertices(r: Digraph) -> list[EvVertex]:
    total = ev_vertex_count(r)
    if total > CONFIG.ev_max_vertices:
        raise LimitExceededError(
            f"ev-system would have {total} vertices, the limit is {CONFIG.ev_max_vertices}"
        )
    return [
        EvVertex(v, down, up)
        for v in range(r.n)
        for down in submasks(r.in_nbrs(v))
        for up in submasks(r.out_nbrs(v))
    ]


def ev_build(r: Digraph, c: ClassTag) -> EvSystem:
    """
    arcs come from the closed-form characterization of each class:
    all digraphs and acyclic ones get a proper arc a -> b iff a.base is in
    b.down and b.base is in a.up, plus a loop wherever the base has one.
    posets and strict posets additionally need a.down <= b.down and b.up <= a.up,
    with loops everywhere for posets and nowhere for strict posets.
    """
    if not c.directed:
        raise ClassMismatchError(f"class {c.value} is undirected, use ev_build_u")
    if c != ClassTag.ALL_DIGRAPHS and not class_membership(r, c):
        raise ClassMismatchError(f"base graph is not a member of class {c.value}")

    vertices = ev_vertices(r)
    by_base: dict[int, list[int]] = {}
    for i, a in enumerate(vertices):
        by_base.setdefault(a.base, []).append(i)

    ordered = c in (ClassTag.POSET, ClassTag.STRICT_POSET)
    rows = [0] * len(vertices)
    for i, a in enumerate(vertices):
        for w in bits(a.up):
            for j in by_base[w]:
                b = vertices[j]
                if not b.down >> a.base & 1:
                    continue
                if ordered and (a.down & ~b.down or b.up & ~a.up):
                    continue
                rows[i] |= 1 << j
        match c:
            case ClassTag.POSET:
                rows[i] |= 1 << i
            case ClassTag.ALL_DIGRAPHS | ClassTag.TA if r.has_loop(a.base):
                rows[i] |= 1 << i

    system = EvSystem(r, c, tuple(vertices), Digraph(len(vertices), tuple(rows)))
    logger.debug("built ev-system of class %s with %d vertices", c.value, system.size)
    return system


def _check_base(xi: VertexMap, ev: EvSystem) -> None:
    if xi.target != ev.base_graph:
        raise ValueError("map does not land in the base graph of the ev-system")
    if not is_strict_hom(xi):
        raise NotStrictError(f"map ({xi.describe()}) is not a strict homomorphism")


def lift_indices(ev: EvSystem, g: Digraph, images: tuple[int, ...]) -> list[int] | None:
    """ev indices of the lift of an image array, None when a lifted triple is not an ev-vertex"""
    index = ev.index
    out: list[int] = []
    for v in range(g.n):
        down = mask_of(images[w] for w in bits(g.in_nbrs(v)))
        up = mask_of(images[w] for w in bits(g.out_nbrs(v)))
        i = index.get(EvVertex(images[v], down, up))
        if i is None:
            return None
        out.append(i)
    return out


def alpha_map(xi: VertexMap, ev: EvSystem) -> VertexMap:
    """v -> (xi(v), xi[N_in(v)], xi[N_out(v)]) as a map into the ev-graph"""
    _check_base(xi, ev)
    lifted = lift_indices(ev, xi.source, xi.images)
    if lifted is None:
        raise ClassMismatchError(
            "lifted triple is not an ev-vertex; an undirected system needs a symmetric source"
        )
    return VertexMap(xi.source, ev.graph, tuple(lifted))


def phi_map(ev: EvSystem) -> VertexMap:
    return VertexMap(ev.graph, ev.base_graph, ev.phi)


def verify_simple_scheme(ev: EvSystem, n_max: int) -> bool:
    """alpha_map(xi) is strict and phi after alpha_map(xi) is xi, for every G up to n_max and xi in S(G, R)"""
    phi = phi_map(ev)
    checked = 0
    for g in class_members(ev.cls, n_max):
        for xi in enumerate_homs(g, ev.base_graph, strict=True):
            alpha = alpha_map(xi, ev)
            checked += 1
            if not is_strict_hom(alpha) or compose(alpha, phi).images != xi.images:
                logger.warning(
                    "simple scheme fails on %s with map %s", g.describe(), xi.describe()
                )
                return False
    logger.info("simple scheme holds on %d maps (n <= %d)", checked, n_max)
    return True


class AidResult(BaseModel):
    erd: bool
    aid: bool


def check_erd_aid(ev: EvSystem) -> AidResult:
    """erd: the ev-graph lies in the class. aid: the lift of phi is the identity"""
    erd = member_of(ev.graph, ev.cls)
    phi = phi_map(ev)
    if not is_strict_hom(phi):
        return AidResult(erd=erd, aid=False)
    lifted = lift_indices(ev, ev.graph, ev.phi)
    return AidResult(erd=erd, aid=lifted == list(range(ev.size)))


def verify_aid(ev: EvSystem) -> bool:
    result = check_erd_aid(ev)
    if not result.erd:
        raise ClassMismatchError(f"ev-graph is not a member of class {ev.cls.value}")
    return result.aid
