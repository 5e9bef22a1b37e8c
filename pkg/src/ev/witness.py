import logging

from src.graphs.digraph import ClassTag, Digraph, add_loops, bits, class_closure, member_of
from src.graphs.enumerate import bug_graph, class_members, undirected_bug
from src.homs.homs import MapKind, VertexMap, hom_images
from src.ev.ev import EvSystem, lift_indices

logger = logging.getLogger(__name__)


def bug_witness(ev: EvSystem, i: int) -> VertexMap:
    """
    iota(a): the class-appropriate bug X(a) with its map into the base graph,
    body to a.base, legs onto a.down and tentacles onto a.up in id order
    """
    a = ev.vertices[i]
    if ev.undirected:
        g, _, _ = undirected_bug(a.down.bit_count())
        images = (a.base, *bits(a.down))
    else:
        g, _, _, _ = bug_graph(a.down.bit_count(), a.up.bit_count(), ev.cls)
        images = (a.base, *bits(a.down), *bits(a.up))
    return VertexMap(g, ev.base_graph, tuple(images))


def _glued_witness(ev: EvSystem, i: int, j: int) -> tuple[Digraph, tuple[int, ...]]:
    """
    X(a) and X(b) glued so that the tentacle of a over b.base is the body of b
    and the leg of b over a.base is the body of a; body a is vertex 0, body b is 1
    """
    a, b = ev.vertices[i], ev.vertices[j]
    images = [a.base, b.base]
    arcs: list[tuple[int, int]] = []

    def fresh(image: int) -> int:
        images.append(image)
        return len(images) - 1

    if ev.undirected:
        for d in bits(a.down):
            leaf = 1 if d == b.base else fresh(d)
            arcs += [(0, leaf), (leaf, 0)]
        for d in bits(b.down):
            leaf = 0 if d == a.base else fresh(d)
            arcs += [(1, leaf), (leaf, 1)]
    else:
        for d in bits(a.down):
            arcs.append((fresh(d), 0))
        for u in bits(a.up):
            arcs.append((0, 1 if u == b.base else fresh(u)))
        for d in bits(b.down):
            arcs.append((0 if d == a.base else fresh(d), 1))
        for u in bits(b.up):
            arcs.append((1, fresh(u)))

    g = class_closure(Digraph.from_arcs(len(images), arcs), ev.cls)
    return g, tuple(images)


def _witnesses(ev: EvSystem) -> list[tuple[Digraph, tuple[int, ...]]]:
    found: list[tuple[Digraph, tuple[int, ...]]] = []
    for i, a in enumerate(ev.vertices):
        iota = bug_witness(ev, i)
        found.append((iota.source, iota.images))
        if ev.cls in (ClassTag.ALL_DIGRAPHS, ClassTag.TA, ClassTag.ALL_UGRAPHS, ClassTag.CO):
            found.append((add_loops(iota.source, 1), iota.images))
        up = a.down if ev.undirected else a.up
        for w in bits(up):
            for j in ev.fiber(w):
                if ev.vertices[j].down >> a.base & 1:
                    found.append(_glued_witness(ev, i, j))
    return found


def ev_arcs_by_definition(ev: EvSystem, m: int) -> set[tuple[int, int]]:
    """
    the arc set of the ev-system read off its existential definition, over a
    finite family of (G, xi): every class member with at most m vertices with
    all its strict maps into the base graph, plus the bug witnesses of every
    ev-vertex and the glued witnesses of every candidate pair. witnesses that
    fall outside the class or are not strict are skipped.
    """
    r = ev.base_graph
    arcs: set[tuple[int, int]] = set()

    def record(g: Digraph, images: tuple[int, ...]) -> None:
        lifted = lift_indices(ev, g, images)
        if lifted is None:
            logger.warning("lift of a strict map left the ev-system on %s", g.describe())
            return
        for u, v in g.arcs():
            arcs.add((lifted[u], lifted[v]))

    for g in class_members(ev.cls, m):
        for images in hom_images(g, r, strict=True):
            record(g, images)

    skipped = 0
    for g, images in _witnesses(ev):
        xi = VertexMap(g, r, images)
        if not member_of(g, ev.cls) or xi.classify() != MapKind.STRICT:
            skipped += 1
            continue
        record(g, images)

    logger.debug("definition arcs: %d arcs, %d witnesses skipped", len(arcs), skipped)
    return arcs


def ev_arcs(ev: EvSystem) -> set[tuple[int, int]]:
    return set(ev.graph.arcs())
