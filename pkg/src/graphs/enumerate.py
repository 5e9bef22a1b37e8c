import logging
from collections.abc import Iterator
from functools import cache

from src.config import CONFIG
from src.errors import ClassMismatchError, LimitExceededError
from src.graphs.canonical import canonical_order, is_canonical
from src.graphs.digraph import (
    ClassTag,
    Digraph,
    VertexSet,
    add_loops,
    bits,
    is_symmetric_bipartite,
    mask_of,
    relabel,
    remove_loops,
    transitive_hull,
)

logger = logging.getLogger(__name__)


def _limit_for(c: ClassTag) -> int:
    match c:
        case ClassTag.ALL_DIGRAPHS:
            return CONFIG.enum_max_digraph
        case ClassTag.TA:
            return CONFIG.enum_max_acyclic
        case ClassTag.POSET | ClassTag.STRICT_POSET:
            return CONFIG.enum_max_poset
        case ClassTag.ALL_UGRAPHS | ClassTag.CO:
            return CONFIG.enum_max_ugraph


def _check_limit(c: ClassTag, n: int) -> None:
    if n < 1:
        raise ValueError(f"graphs need at least one vertex, got n={n}")
    limit = _limit_for(c)
    if n > limit:
        raise LimitExceededError(
            f"enumeration of class {c.value} is limited to n <= {limit}, got n={n}"
        )


def _rows_from_code(n: int, code: int) -> tuple[int, ...]:
    size = n * n
    rows = [0] * n
    for k in range(n):
        for v in range(n):
            if code >> (size - 1 - (k * n + v)) & 1:
                rows[k] |= 1 << v
    return tuple(rows)


def _dedup(candidates: Iterator[Digraph]) -> list[Digraph]:
    """canonical representatives of the candidates, ascending by canonical code"""
    seen: dict[int, Digraph] = {}
    for g in candidates:
        code, order = canonical_order(g)
        if code not in seen:
            seen[code] = relabel(g, order)
    return [seen[code] for code in sorted(seen)]


def _all_digraphs(n: int) -> Iterator[Digraph]:
    # codes ascend, so yielding the self-canonical ones is already sorted
    for code in range(1 << (n * n)):
        g = Digraph(n, _rows_from_code(n, code))
        if is_canonical(g):
            yield g


def _natural_posets(n: int) -> Iterator[tuple[int, ...]]:
    """strict order relations contained in i < j, built from the last vertex backwards"""
    rows = [0] * n

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        if i < 0:
            yield tuple(rows)
            return
        above = ((1 << n) - 1) & ~((1 << (i + 1)) - 1)
        sub = 0
        while True:
            # an up-set row must already contain the rows of its members
            if all(rows[j] & ~sub == 0 for j in bits(sub)):
                rows[i] = sub
                yield from extend(i - 1)
            if sub == above:
                break
            sub = (sub - above) & above
        rows[i] = 0

    yield from extend(n - 1)


def _posets(n: int) -> list[Digraph]:
    return _dedup(Digraph(n, rows) for rows in _natural_posets(n))


def _acyclic(n: int) -> Iterator[Digraph]:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for arc_mask in range(1 << len(pairs)):
        arcs = [pairs[k] for k in bits(arc_mask)]
        base = Digraph.from_arcs(n, arcs)
        for loops in range(1 << n):
            yield add_loops(base, loops)


def _symmetric(n: int) -> Iterator[Digraph]:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for edge_mask in range(1 << len(pairs)):
        arcs = [pairs[k] for k in bits(edge_mask)]
        base = Digraph.from_arcs(n, arcs + [(j, i) for i, j in arcs])
        for loops in range(1 << n):
            yield add_loops(base, loops)


@cache
def _enumerate(c: ClassTag, n: int) -> tuple[Digraph, ...]:
    logger.debug("enumerating class %s with n=%d", c.value, n)
    match c:
        case ClassTag.ALL_DIGRAPHS:
            graphs = list(_all_digraphs(n))
        case ClassTag.TA:
            graphs = _dedup(_acyclic(n))
        case ClassTag.POSET:
            graphs = [add_loops(g) for g in _posets(n)]
        case ClassTag.STRICT_POSET:
            graphs = [remove_loops(g) for g in _enumerate(ClassTag.POSET, n)]
        case ClassTag.ALL_UGRAPHS:
            graphs = _dedup(_symmetric(n))
        case ClassTag.CO:
            graphs = [g for g in _enumerate(ClassTag.ALL_UGRAPHS, n) if is_symmetric_bipartite(g)]
    logger.debug("class %s with n=%d has %d members", c.value, n, len(graphs))
    return tuple(graphs)


def enumerate_class(c: ClassTag, n: int) -> Iterator[Digraph]:
    """
    every isomorphism class of c-members with exactly n vertices, once each, as
    canonical digraphs. undirected classes are not accepted here, use
    enumerate_symmetric for those.
    """
    if not c.directed:
        raise ClassMismatchError(f"class {c.value} is undirected, use enumerate_symmetric")
    _check_limit(c, n)
    yield from _enumerate(c, n)


def enumerate_symmetric(c: ClassTag, n: int) -> Iterator[Digraph]:
    """undirected class members as symmetric digraphs"""
    if c.directed:
        raise ClassMismatchError(f"class {c.value} is directed, use enumerate_class")
    _check_limit(c, n)
    yield from _enumerate(c, n)


def class_members(c: ClassTag, n_max: int) -> Iterator[Digraph]:
    """all class members with 1..n_max vertices"""
    for n in range(1, n_max + 1):
        yield from (enumerate_class(c, n) if c.directed else enumerate_symmetric(c, n))


def bug_graph(m: int, n: int, c: ClassTag) -> tuple[Digraph, int, VertexSet, VertexSet]:
    """
    the bug with m legs and n tentacles: body p = 0, legs 1..m point at p,
    p points at tentacles m+1..m+n. closed under the class: transitive hull for
    strict posets, hull plus loops for posets.
    """
    if not c.directed:
        raise ClassMismatchError(f"bug graphs are directed, got class {c.value}")
    legs = list(range(1, m + 1))
    tentacles = list(range(m + 1, m + n + 1))
    labels = ["p"] + [f"d{i}" for i in range(1, m + 1)] + [f"u{i}" for i in range(1, n + 1)]
    g = Digraph.from_arcs(
        1 + m + n,
        [(d, 0) for d in legs] + [(0, u) for u in tentacles],
        labels=labels,
    )
    if c in (ClassTag.POSET, ClassTag.STRICT_POSET):
        g = transitive_hull(g)
    if c == ClassTag.POSET:
        g = add_loops(g)
    return g, 0, mask_of(legs), mask_of(tentacles)


def undirected_bug(m: int) -> tuple[Digraph, int, VertexSet]:
    """the star X_m as a symmetric digraph: body p = 0 joined to leaves 1..m"""
    leaves = list(range(1, m + 1))
    g = Digraph.from_arcs(
        1 + m,
        [(0, d) for d in leaves] + [(d, 0) for d in leaves],
        labels=["p"] + [f"d{i}" for i in leaves],
    )
    return g, 0, mask_of(leaves)
