import logging
import random
from collections import deque
from collections.abc import Iterator

from src.config import CONFIG
from src.errors import ClassMismatchError, SearchBudgetExceeded
from src.graphs.digraph import ClassTag, Digraph, bits, member_of
from src.ev.build import build_system
from src.ev.ev import EvSystem
from src.scheme.certify import certify
from src.scheme.epsilon import EpsilonMap

logger = logging.getLogger(__name__)


def _search_order(ev: EvSystem) -> list[int]:
    """breadth-first over the loop-free ev-graph so each vertex meets assigned neighbors early; isolated vertices last"""
    g = ev.graph
    order: list[int] = []
    seen = 0
    isolated: list[int] = []
    for start in range(ev.size):
        if seen >> start & 1:
            continue
        if not (g.nbrs(start) & ~(1 << start)):
            isolated.append(start)
            seen |= 1 << start
            continue
        queue = deque([start])
        seen |= 1 << start
        while queue:
            i = queue.popleft()
            order.append(i)
            for k in bits(g.nbrs(i) & ~seen):
                seen |= 1 << k
                queue.append(k)
    return order + isolated


class _Backtrack:
    """
    assigns ev-vertices of the source one by one. strictness is enforced on
    every arc between the new vertex and an assigned one; the optional prunes
    add the size condition, neighbor base separation and injectivity.
    """

    def __init__(
        self,
        source: EvSystem,
        target: EvSystem,
        sufficient: bool,
        injective: bool,
        budget: int,
        rng: random.Random | None = None,
    ) -> None:
        self.source, self.target = source, target
        self.sufficient, self.injective = sufficient, injective
        self.budget = budget
        self.rng = rng
        self.nodes = 0
        self.found = 0
        self.order = _search_order(source)
        self.position = {i: k for k, i in enumerate(self.order)}
        self.domains = [self._domain(i) for i in range(source.size)]

    def _domain(self, i: int) -> list[int]:
        a = self.source.vertices[i]
        loop = self.source.graph.has_loop(i)
        out: list[int] = []
        for j, b in enumerate(self.target.vertices):
            if loop and not self.target.graph.has_loop(j):
                continue
            if self.sufficient and (
                b.down.bit_count() > a.down.bit_count() or b.up.bit_count() > a.up.bit_count()
            ):
                continue
            out.append(j)
        return out

    def _separated(self, images: list[int | None], nbrs: int) -> bool:
        phi_s, phi_r = self.target.phi, self.source.phi
        seen: dict[int, int] = {}
        for k in bits(nbrs):
            j = images[k]
            if j is None:
                continue
            base = seen.setdefault(phi_s[j], phi_r[k])
            if base != phi_r[k]:
                return False
        return True

    def _consistent(self, i: int, j: int, images: list[int | None], used: set[int]) -> bool:
        g, h = self.source.graph, self.target.graph
        if self.injective and j in used:
            return False
        for k in bits(g.out_nbrs(i)):
            other = images[k]
            if other is not None and (not h.has_arc(j, other) or other == j):
                return False
        for k in bits(g.in_nbrs(i)):
            other = images[k]
            if other is not None and (not h.has_arc(other, j) or other == j):
                return False
        if self.sufficient:
            for w in bits(g.nbrs(i) | 1 << i):
                if not self._separated(images, g.in_nbrs(w)):
                    return False
                if not self._separated(images, g.out_nbrs(w)):
                    return False
        return True

    def run(self) -> Iterator[tuple[int, ...]]:
        images: list[int | None] = [None] * self.source.size
        used: set[int] = set()

        def extend(k: int) -> Iterator[tuple[int, ...]]:
            if k == len(self.order):
                self.found += 1
                yield tuple(j for j in images if j is not None)
                return
            i = self.order[k]
            candidates = self.domains[i]
            if self.rng is not None:
                candidates = candidates[:]
                self.rng.shuffle(candidates)
            for j in candidates:
                self.nodes += 1
                if self.nodes > self.budget:
                    raise SearchBudgetExceeded(self.nodes, self.found)
                images[i] = j
                if self._consistent(i, j, images, used):
                    used.add(j)
                    yield from extend(k + 1)
                    used.discard(j)
                images[i] = None

        yield from extend(0)


def find_inducing_epsilon(
    r: Digraph, s: Digraph, c: ClassTag, n_max: int, budget: int | None = None
) -> Iterator[EpsilonMap]:
    """
    every injective strict ev-homomorphism satisfying the size condition and
    neighbor base separation, each certified at n_max before it is yielded.
    the search is sound but not complete: maps that induce a strong scheme
    without meeting the local conditions are never visited.
    """
    for name, graph in (("R", r), ("S", s)):
        if not member_of(graph, c):
            raise ClassMismatchError(f"{name} is not a member of class {c.value}")
    source, target = build_system(r, c), build_system(s, c)
    search = _Backtrack(
        source,
        target,
        sufficient=True,
        injective=True,
        budget=budget if budget is not None else CONFIG.search_node_budget,
    )
    logger.info(
        "searching epsilon: %d -> %d ev-vertices, class %s",
        source.size,
        target.size,
        c.value,
    )
    emitted = 0
    for images in search.run():
        e = EpsilonMap(source, target, images)
        report = certify(e, n_max)
        if not report.all_hold:
            logger.warning("candidate failed certification at n <= %d, skipped", n_max)
            continue
        emitted += 1
        yield e
    logger.info("search finished after %d nodes, %d maps emitted", search.nodes, emitted)


def random_epsilon(
    source: EvSystem,
    target: EvSystem,
    rng: random.Random,
    sufficient: bool = False,
    budget: int = 100_000,
) -> EpsilonMap | None:
    """a random strict ev-homomorphism, or None when none is found within budget"""
    search = _Backtrack(source, target, sufficient=sufficient, injective=False, budget=budget, rng=rng)
    try:
        images = next(search.run(), None)
    except SearchBudgetExceeded:
        logger.debug("random epsilon search gave up after %d nodes", budget)
        return None
    return EpsilonMap(source, target, images) if images is not None else None
