import logging
from itertools import combinations
from math import factorial

from pydantic import BaseModel

from src.graphs.canonical import automorphisms
from src.graphs.digraph import ClassTag, bits
from src.graphs.enumerate import undirected_bug
from src.ev.ev import EvVertex
from src.undirected.ev import ev_build_u
from src.undirected.ugraph import UGraph

logger = logging.getLogger(__name__)

# path a - b - c folded onto the edge 0 - 1 by its bipartition; the scheme is xi -> fold after xi
_PATH = UGraph.from_labeled_edges(["a", "b", "c"], [("a", "b"), ("b", "c")])
_EDGE = UGraph.from_labeled_edges(["0", "1"], [("0", "1")])
_FOLD = (0, 1, 0)


class PairData(BaseModel):
    first: str
    second: str
    collide: bool
    j_size: int
    rho_j_size: int


class X1AutReport(BaseModel):
    aut_x1: int
    aut_by_m: dict[int, int]
    body_fixed: dict[int, bool]
    pairs: list[PairData]

    @property
    def holds(self) -> bool:
        return (
            self.aut_x1 == 2
            and all(count == factorial(m) for m, count in self.aut_by_m.items())
            and all(self.body_fixed.values())
            and {pair.j_size for pair in self.pairs} <= {2, 4}
            and all(pair.rho_j_size <= 2 for pair in self.pairs if pair.collide)
        )

    def format_report(self) -> str:
        lines = [f"#Aut(X_1) = {self.aut_x1}"]
        for m in sorted(self.aut_by_m):
            fixed = "p fixed" if self.body_fixed[m] else "p moved"
            lines.append(f"#Aut(X_{m}) = {self.aut_by_m[m]} ({fixed})")
        lines.append("")
        lines.append("| a | b | epsilon(a) = epsilon(b) | #J | #rho[J] |")
        lines.append("|---|---|---|---|---|")
        for pair in self.pairs:
            lines.append(
                f"| {pair.first} | {pair.second} | {'yes' if pair.collide else 'no'} | {pair.j_size} | {pair.rho_j_size} |"
            )
        return "\n".join(lines)


def x1_aut_properties(m_max: int = 4) -> X1AutReport:
    """
    automorphism counts of the stars X_m, and the case data for the maps
    iota(a) composed with Aut(X_1) on the fold of a path onto an edge
    """
    x1, _, _ = undirected_bug(1)
    aut_x1 = sum(1 for _ in automorphisms(x1))
    aut_by_m: dict[int, int] = {}
    body_fixed: dict[int, bool] = {}
    for m in range(m_max + 1):
        if m == 1:
            continue
        star, body, _ = undirected_bug(m)
        autos = list(automorphisms(star))
        aut_by_m[m] = len(autos)
        body_fixed[m] = all(pi[body] == body for pi in autos)

    source = ev_build_u(_PATH, ClassTag.CO)
    target = ev_build_u(_EDGE, ClassTag.CO)
    x1_autos = list(automorphisms(x1))

    def epsilon(i: int) -> int:
        a = source.vertices[i]
        image = _FOLD[a.base]
        nbrs = 0
        for w in bits(a.down):
            nbrs |= 1 << _FOLD[w]
        return target.lookup(EvVertex(image, nbrs, nbrs))

    def iota_family(i: int) -> set[tuple[int, ...]]:
        a = source.vertices[i]
        iota = (a.base, *bits(a.down))
        return {tuple(iota[pi[v]] for v in range(2)) for pi in x1_autos}

    single = [i for i, a in enumerate(source.vertices) if a.down.bit_count() == 1]
    pairs: list[PairData] = []
    for i, j in combinations(single, 2):
        family = iota_family(i) | iota_family(j)
        folded = {tuple(_FOLD[w] for w in images) for images in family}
        pairs.append(
            PairData(
                first=source.format_vertex(i),
                second=source.format_vertex(j),
                collide=epsilon(i) == epsilon(j),
                j_size=len(family),
                rho_j_size=len(folded),
            )
        )
    report = X1AutReport(aut_x1=aut_x1, aut_by_m=aut_by_m, body_fixed=body_fixed, pairs=pairs)
    logger.debug("x1 automorphism report: %d pairs", len(pairs))
    return report
