import logging
from dataclasses import dataclass
from functools import cached_property

from pydantic import BaseModel

from src.errors import ClassMismatchError, NotStrictError
from src.ev.ev import EvSystem, lift_indices
from src.graphs.digraph import Digraph, VertexSet, bits, mask_of
from src.homs.homs import VertexMap, is_strict_hom

logger = logging.getLogger(__name__)


class Witness(BaseModel):
    """a concrete counterexample attached to a failed check"""

    detail: str
    graph: str | None = None
    xi: list[str] | None = None
    vertex: str | None = None
    ev: list[str] = []

    def format(self) -> str:
        parts = [self.detail]
        if self.graph is not None:
            parts.append(f"G: {self.graph}")
        if self.xi is not None:
            parts.append(f"xi: [{', '.join(self.xi)}]")
        if self.vertex is not None:
            parts.append(f"v: {self.vertex}")
        if self.ev:
            parts.append("ev: " + " | ".join(self.ev))
        return "; ".join(parts)


@dataclass(frozen=True)
class EpsilonMap:
    """a total map between the ev-vertices of R and S, both built for the same class"""

    source: EvSystem
    target: EvSystem
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.source.cls != self.target.cls:
            raise ClassMismatchError(
                f"ev-systems of different classes: {self.source.cls.value} and {self.target.cls.value}"
            )
        if len(self.images) != self.source.size:
            raise ValueError(
                f"epsilon has {len(self.images)} images for {self.source.size} ev-vertices"
            )
        if any(not 0 <= j < self.target.size for j in self.images):
            raise ValueError("epsilon leaves the target ev-system")

    def __call__(self, i: int) -> int:
        return self.images[i]

    @cached_property
    def as_vertex_map(self) -> VertexMap:
        return VertexMap(self.source.graph, self.target.graph, self.images)

    @cached_property
    def image_set(self) -> frozenset[int]:
        return frozenset(self.images)

    def rows(self) -> list[tuple[str, str]]:
        return [
            (self.source.format_vertex(i), self.target.format_vertex(j))
            for i, j in enumerate(self.images)
        ]


def identity_epsilon(ev: EvSystem) -> EpsilonMap:
    return EpsilonMap(ev, ev, tuple(range(ev.size)))


def is_strict_ev_hom(e: EpsilonMap) -> bool:
    return is_strict_hom(e.as_vertex_map)


def strictness_witness(e: EpsilonMap) -> Witness | None:
    target = e.target.graph
    for i, j in e.source.graph.arcs():
        a, b = e.images[i], e.images[j]
        if not target.has_arc(a, b) or (i != j and a == b):
            return Witness(
                detail="arc not sent to an arc of the same kind",
                ev=[e.source.format_vertex(i), e.source.format_vertex(j)],
            )
    return None


def injectivity_witness(e: EpsilonMap) -> Witness | None:
    seen: dict[int, int] = {}
    for i, j in enumerate(e.images):
        if j in seen:
            return Witness(
                detail=f"both sent to {e.target.format_vertex(j)}",
                ev=[e.source.format_vertex(seen[j]), e.source.format_vertex(i)],
            )
        seen[j] = i
    return None


def _eta_images(e: EpsilonMap, g: Digraph, images: tuple[int, ...]) -> tuple[int, ...] | None:
    lifted = lift_indices(e.source, g, images)
    if lifted is None:
        return None
    phi = e.target.phi
    return tuple(phi[e.images[i]] for i in lifted)


def eta(e: EpsilonMap, xi: VertexMap) -> VertexMap:
    """the induced scheme: v -> phi_S(epsilon(alpha(xi)(v)))"""
    if xi.target != e.source.base_graph:
        raise ValueError("map does not land in the base graph of the source ev-system")
    if not is_strict_hom(xi):
        raise NotStrictError(f"map ({xi.describe()}) is not a strict homomorphism")
    if not is_strict_ev_hom(e):
        raise NotStrictError("epsilon is not a strict homomorphism between the ev-graphs")
    images = _eta_images(e, xi.source, xi.images)
    if images is None:
        raise ClassMismatchError("lift of xi is not an ev-vertex of the source system")
    return VertexMap(xi.source, e.target.base_graph, images)


def e_set(e: EpsilonMap, xi: VertexMap, g: Digraph) -> VertexSet:
    """vertices whose lift under eta(xi) is an epsilon image; needs only eta(xi) and epsilon"""
    if xi.source != g:
        raise ValueError("xi is not defined on g")
    eta_map = eta(e, xi)
    lifted = lift_indices(e.target, g, eta_map.images)
    if lifted is None:
        raise NotStrictError("eta(xi) does not lift into the target ev-system")
    return mask_of(v for v in range(g.n) if lifted[v] in e.image_set)


def base_separation_witness(e: EpsilonMap) -> Witness | None:
    base_of_image: dict[int, int] = {}
    first: dict[int, int] = {}
    for i, j in enumerate(e.images):
        base = e.source.phi[i]
        if j not in base_of_image:
            base_of_image[j], first[j] = base, i
        elif base_of_image[j] != base:
            return Witness(
                detail=f"different bases sent to {e.target.format_vertex(j)}",
                ev=[e.source.format_vertex(first[j]), e.source.format_vertex(i)],
            )
    return None


def check_base_separation(e: EpsilonMap) -> bool:
    return base_separation_witness(e) is None


def reconstruct(e: EpsilonMap, eta_map: VertexMap, r_vertex: int) -> VertexSet:
    """union over a in the fiber of r_vertex of the lift of eta_map pulled back at epsilon(a)"""
    if not 0 <= r_vertex < e.source.base_graph.n:
        raise ValueError(f"invalid vertex id {r_vertex} (n={e.source.base_graph.n})")
    g = eta_map.source
    lifted = lift_indices(e.target, g, eta_map.images)
    if lifted is None:
        raise NotStrictError("eta map does not lift into the target ev-system")
    wanted = {e.images[i] for i in e.source.fiber(r_vertex)}
    return mask_of(v for v in range(g.n) if lifted[v] in wanted)


def lift_sufficient_witnesses(e: EpsilonMap) -> list[Witness]:
    """
    local conditions that make the lift compatible on every test graph:
    epsilon never grows a down- or up-set, and inside the in- and the
    out-neighborhood of every ev-vertex, equal image bases mean equal bases
    """
    source, target = e.source, e.target
    witnesses: list[Witness] = []
    for i, a in enumerate(source.vertices):
        b = target.vertices[e.images[i]]
        if b.down.bit_count() > a.down.bit_count() or b.up.bit_count() > a.up.bit_count():
            witnesses.append(
                Witness(
                    detail="size condition: epsilon enlarges a neighbor set",
                    ev=[source.format_vertex(i), target.format_vertex(e.images[i])],
                )
            )
        for side, nbrs in (("in", source.graph.in_nbrs(i)), ("out", source.graph.out_nbrs(i))):
            seen: dict[int, int] = {}
            for k in bits(nbrs):
                image_base = target.phi[e.images[k]]
                if image_base in seen and source.phi[seen[image_base]] != source.phi[k]:
                    witnesses.append(
                        Witness(
                            detail=f"separation condition: {side}-neighbors with different bases share an image base",
                            ev=[
                                source.format_vertex(i),
                                source.format_vertex(seen[image_base]),
                                source.format_vertex(k),
                            ],
                        )
                    )
                    break
                seen.setdefault(image_base, k)
    return witnesses


def check_lift_sufficient(e: EpsilonMap) -> bool:
    return not lift_sufficient_witnesses(e)
