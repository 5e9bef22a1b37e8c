import logging
from dataclasses import dataclass

from src.config import CONFIG
from src.errors import ClassMismatchError, LimitExceededError
from src.graphs.digraph import ClassTag, Digraph, VertexSet, bits, submasks
from src.ev.ev import EvSystem, EvVertex
from src.scheme.epsilon import EpsilonMap, Witness
from src.undirected.ugraph import UGraph, is_in_co, to_symmetric

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class UEvVertex:
    """(base, nbrs) with nbrs inside the open neighborhood of base"""

    base: int
    nbrs: VertexSet = 0

    def as_triple(self) -> EvVertex:
        return EvVertex(self.base, self.nbrs, self.nbrs)

    @classmethod
    def from_triple(cls, a: EvVertex) -> "UEvVertex":
        if a.down != a.up:
            raise ValueError("triple is not the image of an undirected ev-vertex")
        return cls(a.base, a.down)


def uev_vertex_count(r: UGraph) -> int:
    return sum(2 ** r.nbrs(v).bit_count() for v in range(r.n))


def ev_build_u(r: UGraph, c: ClassTag = ClassTag.ALL_UGRAPHS) -> EvSystem:
    """
    vertices are all (v, D) with D inside N(v); a proper edge joins a and b iff
    a.base is in b.nbrs and b.base is in a.nbrs, and a carries a loop iff its
    base does
    """
    match c:
        case ClassTag.ALL_UGRAPHS:
            pass
        case ClassTag.CO:
            if not is_in_co(r):
                raise ClassMismatchError("base graph has an odd cycle and is not in class co")
        case _:
            raise ClassMismatchError(f"class {c.value} is directed, use ev_build")

    total = uev_vertex_count(r)
    if total > CONFIG.ev_max_vertices:
        raise LimitExceededError(
            f"ev-system would have {total} vertices, the limit is {CONFIG.ev_max_vertices}"
        )
    pairs = [UEvVertex(v, d) for v in range(r.n) for d in submasks(r.nbrs(v))]
    by_base: dict[int, list[int]] = {}
    for i, a in enumerate(pairs):
        by_base.setdefault(a.base, []).append(i)

    rows = [0] * len(pairs)
    for i, a in enumerate(pairs):
        for w in bits(a.nbrs):
            for j in by_base[w]:
                if pairs[j].nbrs >> a.base & 1:
                    rows[i] |= 1 << j
        if r.has_loop(a.base):
            rows[i] |= 1 << i

    system = EvSystem(
        to_symmetric(r),
        c,
        tuple(a.as_triple() for a in pairs),
        Digraph(len(pairs), tuple(rows)),
    )
    logger.debug("built undirected ev-system of class %s with %d vertices", c.value, system.size)
    return system


def lift_sufficient_witnesses_u(e: EpsilonMap) -> list[Witness]:
    """size condition on the neighbor set and base separation inside each ev-neighborhood"""
    if not e.source.undirected:
        raise ClassMismatchError("epsilon is between directed ev-systems, use check_lift_sufficient")
    source, target = e.source, e.target
    witnesses: list[Witness] = []
    for i, a in enumerate(source.vertices):
        b = target.vertices[e.images[i]]
        if b.down.bit_count() > a.down.bit_count():
            witnesses.append(
                Witness(
                    detail="size condition: epsilon enlarges the neighbor set",
                    ev=[source.format_vertex(i), target.format_vertex(e.images[i])],
                )
            )
        seen: dict[int, int] = {}
        for k in bits(source.graph.nbrs(i)):
            image_base = target.phi[e.images[k]]
            first = seen.setdefault(image_base, k)
            if source.phi[first] != source.phi[k]:
                witnesses.append(
                    Witness(
                        detail="separation condition: neighbors with different bases share an image base",
                        ev=[source.format_vertex(i), source.format_vertex(first), source.format_vertex(k)],
                    )
                )
                break
    return witnesses


def check_lift_sufficient_u(e: EpsilonMap) -> bool:
    return not lift_sufficient_witnesses_u(e)
