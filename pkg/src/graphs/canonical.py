import itertools
from collections.abc import Iterator

from src.config import CONFIG
from src.errors import LimitExceededError
from src.graphs.digraph import Digraph, relabel


def _check_size(g: Digraph) -> None:
    if g.n > CONFIG.canonical_max_vertices:
        raise LimitExceededError(
            f"graph has {g.n} vertices, canonicalization limit is {CONFIG.canonical_max_vertices}"
        )


def vertex_invariant(g: Digraph, v: int) -> tuple[int, int, int]:
    return (int(g.has_loop(v)), g.out_nbrs(v).bit_count(), g.in_nbrs(v).bit_count())


def adjacency_code(g: Digraph, order: tuple[int, ...] | list[int]) -> int:
    """row-major adjacency bit string of g relabeled by order, entry (0, 0) most significant"""
    code = 0
    for u in order:
        row = g.rows[u]
        for v in order:
            code = (code << 1) | (row >> v & 1)
    return code


def identity_code(g: Digraph) -> int:
    return adjacency_code(g, range(g.n))  # type: ignore[arg-type]


def _cells(g: Digraph) -> list[list[int]]:
    by_invariant: dict[tuple[int, int, int], list[int]] = {}
    for v in range(g.n):
        by_invariant.setdefault(vertex_invariant(g, v), []).append(v)
    return [by_invariant[key] for key in sorted(by_invariant)]


def _orderings(g: Digraph) -> Iterator[tuple[int, ...]]:
    # invariant cells keep their sorted position, only members of a cell are permuted
    cells = _cells(g)
    for parts in itertools.product(*(itertools.permutations(cell) for cell in cells)):
        yield tuple(v for part in parts for v in part)


def canonical_order(g: Digraph) -> tuple[int, tuple[int, ...]]:
    """the minimal adjacency code and the ordering that attains it"""
    _check_size(g)
    best_code: int | None = None
    best_order: tuple[int, ...] = ()
    for order in _orderings(g):
        code = adjacency_code(g, order)
        if best_code is None or code < best_code:
            best_code, best_order = code, order
    assert best_code is not None
    return best_code, best_order


def canonical_code(g: Digraph) -> int:
    return canonical_order(g)[0]


def canonical_form(g: Digraph) -> Digraph:
    _, order = canonical_order(g)
    return relabel(g, order)


def is_canonical(g: Digraph) -> bool:
    """true iff g is its own canonical form"""
    invariants = [vertex_invariant(g, v) for v in range(g.n)]
    if invariants != sorted(invariants):
        return False
    return identity_code(g) == canonical_code(g)


def is_isomorphic(g: Digraph, h: Digraph) -> bool:
    return g.n == h.n and canonical_code(g) == canonical_code(h)


def automorphisms(g: Digraph) -> Iterator[tuple[int, ...]]:
    """arc-preserving vertex bijections of g, as image tuples"""
    _check_size(g)
    invariants = [vertex_invariant(g, v) for v in range(g.n)]
    images = [0] * g.n
    used = 0

    def extend(v: int) -> Iterator[tuple[int, ...]]:
        nonlocal used
        if v == g.n:
            yield tuple(images)
            return
        for w in range(g.n):
            if used >> w & 1 or invariants[w] != invariants[v]:
                continue
            if any(
                g.has_arc(u, v) != g.has_arc(images[u], w)
                or g.has_arc(v, u) != g.has_arc(w, images[u])
                for u in range(v)
            ):
                continue
            images[v] = w
            used |= 1 << w
            yield from extend(v + 1)
            used &= ~(1 << w)

    yield from extend(0)


def automorphism_count(g: Digraph) -> int:
    return sum(1 for _ in automorphisms(g))

