import logging

from src.errors import ClassMismatchError, InvalidSpecError, NotStrictError
from src.graphs.digraph import ClassTag, VertexSet, bits, mask_of
from src.ev.ev import lift_indices
from src.rearrange.rearrange import RearrangementSpec, Violation, shared_violations
from src.scheme.epsilon import EpsilonMap
from src.undirected.ev import ev_build_u
from src.undirected.ugraph import UGraph, from_symmetric

logger = logging.getLogger(__name__)


def validate_spec_u(r: UGraph, spec: RearrangementSpec) -> list[Violation]:
    """the directed conditions with the two-sided neighborhood condition merged into N(x) minus M inside N(beta(x))"""
    violations = shared_violations(r.n, list(r.adjacency), spec, r.label)
    beta = spec.beta_map
    broken = [
        f"{r.label(u)}-{r.label(v)}"
        for u, v in r.sorted_edges()
        if u in beta and v in beta and not r.has_edge(beta[u], beta[v])
    ]
    if broken:
        violations.append(
            Violation(rule="beta_not_hom", detail="beta does not preserve edges inside X", witnesses=broken)
        )
    uncovered = [
        r.label(x)
        for x, y in spec.beta
        if 0 <= x < r.n and 0 <= y < r.n and r.nbrs(x) & ~spec.m & ~r.nbrs(y)
    ]
    if uncovered:
        violations.append(
            Violation(
                rule="neighborhood_not_covered",
                detail="a neighbor of x outside M is not a neighbor of beta(x)",
                witnesses=uncovered,
            )
        )
    return violations


def _require_valid_u(r: UGraph, spec: RearrangementSpec) -> None:
    violations = validate_spec_u(r, spec)
    if violations:
        raise InvalidSpecError(violations)


def rearrange_u(r: UGraph, spec: RearrangementSpec) -> UGraph:
    """every edge {m, x} with m in M and x in X becomes {m, beta(x)}; other edges stay"""
    _require_valid_u(r, spec)
    beta = spec.beta_map
    edges: set[tuple[int, int]] = set()
    for u, v in r.edges:
        if spec.m >> u & 1 and spec.x >> v & 1:
            edges.add((u, beta[v]))
        elif spec.x >> u & 1 and spec.m >> v & 1:
            edges.add((beta[u], v))
        else:
            edges.add((u, v))
    return UGraph.from_edges(r.n, edges, labels=r.labels)


def _is_strict_u(g: UGraph, r: UGraph, images: tuple[int, ...]) -> bool:
    return all(
        r.has_edge(images[u], images[v]) and (u == v or images[u] != images[v])
        for u, v in g.edges
    )


def b_set_u(g: UGraph, images: tuple[int, ...], spec: RearrangementSpec) -> VertexSet:
    return mask_of(
        v
        for v in range(g.n)
        if spec.x >> images[v] & 1 and any(spec.m >> images[w] & 1 for w in bits(g.nbrs(v)))
    )


def rho_u(g: UGraph, r: UGraph, images: tuple[int, ...], spec: RearrangementSpec) -> tuple[int, ...]:
    """the undirected move: vertices sent into X next to a vertex sent into M go to beta of their image"""
    _require_valid_u(r, spec)
    if not _is_strict_u(g, r, images):
        raise NotStrictError("map is not a strict homomorphism of undirected graphs")
    moved = b_set_u(g, images, spec)
    beta = spec.beta_map
    return tuple(beta[w] if moved >> v & 1 else w for v, w in enumerate(images))


def epsilon_from_rho_u(
    r: UGraph, spec: RearrangementSpec, c: ClassTag = ClassTag.ALL_UGRAPHS
) -> EpsilonMap:
    """the lift of rho_u(phi_R) with G the undirected ev-graph of R"""
    s = rearrange_u(r, spec)
    source, target = ev_build_u(r, c), ev_build_u(s, c)
    g = from_symmetric(source.graph)
    moved = rho_u(g, r, source.phi, spec)
    lifted = lift_indices(target, source.graph, moved)
    if lifted is None:
        raise ClassMismatchError("the moved map does not lift into the target ev-system")
    logger.debug("epsilon from rho over %d undirected ev-vertices", source.size)
    return EpsilonMap(source, target, tuple(lifted))
