import logging

from pydantic import BaseModel

from src.graphs.digraph import ClassTag, Digraph, mask_of
from src.graphs.enumerate import class_members
from src.homs.homs import VertexMap, hom_images
from src.ev.ev import lift_indices
from src.undirected.ev import lift_sufficient_witnesses_u
from src.scheme.epsilon import (
    EpsilonMap,
    Witness,
    base_separation_witness,
    injectivity_witness,
    lift_sufficient_witnesses,
    reconstruct,
    strictness_witness,
)

logger = logging.getLogger(__name__)

MAX_WITNESSES = 20

FLAGS = (
    "strict_hom",
    "injective",
    "base_separation",
    "lift_sufficient",
    "lift_empirical",
    "regularity_empirical",
    "eta_injective_empirical",
)


class FlagResult(BaseModel):
    holds: bool
    witnesses: list[Witness] = []
    graphs_scanned: int = 0
    maps_scanned: int = 0


class CertificationReport(BaseModel):
    """
    every flag is certified only for test graphs with at most n_max vertices.
    a false flag always carries at least one witness.
    """

    class_tag: ClassTag
    n_max: int
    strict_hom: bool
    injective: bool
    base_separation: bool
    lift_sufficient: bool
    lift_empirical: bool
    regularity_empirical: bool
    eta_injective_empirical: bool
    witnesses: dict[str, list[Witness]] = {}
    graphs_scanned: int = 0
    maps_scanned: int = 0

    def flags(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in FLAGS}

    @property
    def all_hold(self) -> bool:
        return all(self.flags().values())

    def format_report(self) -> str:
        lines = [
            f"# certification over class {self.class_tag.value}, test graphs with n <= {self.n_max}",
            "",
        ]
        for name, value in self.flags().items():
            lines.append(f"{name:<24} {'yes' if value else 'NO'}")
            for witness in self.witnesses.get(name, [])[:3]:
                lines.append(f"    {witness.format()}")
        lines.append("")
        lines.append(f"scanned {self.graphs_scanned} graphs and {self.maps_scanned} strict maps")
        return "\n".join(lines)


class _Scan:
    """one pass over every class member G <= n_max and every xi in S(G, R)"""

    def __init__(self, e: EpsilonMap) -> None:
        self.e = e
        self.lift: list[Witness] = []
        self.regularity: list[Witness] = []
        self.eta_injective: list[Witness] = []
        self.consistency: list[Witness] = []
        self.reconstruction: list[Witness] = []
        # alpha_R index -> (alpha_S(eta) index, where it was first seen)
        self.buckets: dict[int, tuple[int, str, list[str], str]] = {}
        self.graphs = 0
        self.maps = 0

    def run(self, n_max: int, reconstruction: bool = False) -> None:
        source = self.e.source
        for g in class_members(source.cls, n_max):
            self.graphs += 1
            seen: dict[tuple[int, ...], tuple[int, ...]] = {}
            for images in hom_images(g, source.base_graph, strict=True):
                self.maps += 1
                self._visit(g, images, seen, reconstruction)
            logger.debug("scanned %s", g.describe())

    def _visit(
        self,
        g: Digraph,
        images: tuple[int, ...],
        seen: dict[tuple[int, ...], tuple[int, ...]],
        reconstruction: bool,
    ) -> None:
        e, source, target = self.e, self.e.source, self.e.target
        alpha_r = lift_indices(source, g, images)
        if alpha_r is None:
            logger.warning("lift of a strict map left the ev-system on %s", g.describe())
            return
        eta_images = tuple(target.phi[e.images[i]] for i in alpha_r)
        alpha_s = lift_indices(target, g, eta_images)
        xi_labels = [source.base_graph.label(w) for w in images]
        graph = g.describe()

        if eta_images in seen and len(self.eta_injective) < MAX_WITNESSES:
            other = [source.base_graph.label(w) for w in seen[eta_images]]
            self.eta_injective.append(
                Witness(
                    detail=f"xi and [{', '.join(other)}] induce the same map",
                    graph=graph,
                    xi=xi_labels,
                )
            )
        seen.setdefault(eta_images, images)

        for v in range(g.n):
            a = alpha_r[v]
            expected = e.images[a]
            actual = alpha_s[v] if alpha_s is not None else None
            if actual != expected and len(self.lift) < MAX_WITNESSES:
                self.lift.append(
                    Witness(
                        detail="lift of the induced map differs from epsilon of the lift",
                        graph=graph,
                        xi=xi_labels,
                        vertex=g.label(v),
                        ev=[
                            target.format_vertex(actual) if actual is not None else "-",
                            target.format_vertex(expected),
                        ],
                    )
                )
            if actual is None:
                continue
            first = self.buckets.get(a)
            if first is None:
                self.buckets[a] = (actual, graph, xi_labels, g.label(v))
                continue
            first_actual, first_graph, first_xi, first_v = first
            if first_actual != actual and len(self.regularity) < MAX_WITNESSES:
                self.regularity.append(
                    Witness(
                        detail=(
                            f"equal lifts {source.format_vertex(a)} but differing induced lifts;"
                            f" first seen on {first_graph} with xi [{', '.join(first_xi)}] at {first_v}"
                        ),
                        graph=graph,
                        xi=xi_labels,
                        vertex=g.label(v),
                        ev=[target.format_vertex(first_actual), target.format_vertex(actual)],
                    )
                )
            if target.phi[first_actual] != target.phi[actual] and len(self.consistency) < MAX_WITNESSES:
                self.consistency.append(
                    Witness(
                        detail="equal lifts with differing induced images",
                        graph=graph,
                        xi=xi_labels,
                        vertex=g.label(v),
                    )
                )

        if reconstruction and alpha_s is not None:
            self._check_reconstruction(g, images, eta_images, alpha_s, graph, xi_labels)

    def _check_reconstruction(
        self,
        g: Digraph,
        images: tuple[int, ...],
        eta_images: tuple[int, ...],
        alpha_s: list[int],
        graph: str,
        xi_labels: list[str],
    ) -> None:
        e = self.e
        eta_map = VertexMap(g, e.target.base_graph, eta_images)
        in_image = mask_of(v for v in range(g.n) if alpha_s[v] in e.image_set)
        for r in range(e.source.base_graph.n):
            expected = mask_of(v for v in range(g.n) if images[v] == r) & in_image
            if reconstruct(e, eta_map, r) != expected and len(self.reconstruction) < MAX_WITNESSES:
                self.reconstruction.append(
                    Witness(
                        detail=f"reconstruction of the fiber over {e.source.base_graph.label(r)} fails",
                        graph=graph,
                        xi=xi_labels,
                    )
                )


def _not_strict(e: EpsilonMap) -> Witness:
    return Witness(detail="epsilon is not a strict homomorphism, induced maps are undefined")


def check_lift_empirical(e: EpsilonMap, n_max: int) -> FlagResult:
    """alpha_S(eta(xi)) == epsilon after alpha_R(xi) for every class member G <= n_max and xi in S(G, R)"""
    if strictness_witness(e) is not None:
        return FlagResult(holds=False, witnesses=[_not_strict(e)])
    scan = _Scan(e)
    scan.run(n_max)
    return FlagResult(
        holds=not scan.lift,
        witnesses=scan.lift,
        graphs_scanned=scan.graphs,
        maps_scanned=scan.maps,
    )


def induced_consistency(e: EpsilonMap, n_max: int) -> bool:
    """equal lifts in R give equal induced images, across all scanned (G, xi, v)"""
    if strictness_witness(e) is not None:
        return False
    scan = _Scan(e)
    scan.run(n_max)
    return not scan.consistency


def reconstruction_holds(e: EpsilonMap, n_max: int) -> bool:
    """reconstruct(e, eta(xi), r) equals the fiber of xi over r restricted to E(xi), exhaustively"""
    if strictness_witness(e) is not None or base_separation_witness(e) is not None:
        return False
    scan = _Scan(e)
    scan.run(n_max, reconstruction=True)
    for witness in scan.reconstruction[:3]:
        logger.info("reconstruction: %s", witness.format())
    return not scan.reconstruction


def certify(e: EpsilonMap, n_max: int) -> CertificationReport:
    witnesses: dict[str, list[Witness]] = {}

    def flag(name: str, found: list[Witness]) -> bool:
        if found:
            witnesses[name] = found[:MAX_WITNESSES]
        return not found

    def single(w: Witness | None) -> list[Witness]:
        return [w] if w is not None else []

    strict = flag("strict_hom", single(strictness_witness(e)))
    injective = flag("injective", single(injectivity_witness(e)))
    separation = flag("base_separation", single(base_separation_witness(e)))
    local = lift_sufficient_witnesses_u(e) if e.source.undirected else lift_sufficient_witnesses(e)
    sufficient = flag("lift_sufficient", local)

    graphs = maps = 0
    if strict:
        scan = _Scan(e)
        scan.run(n_max)
        graphs, maps = scan.graphs, scan.maps
        lift = flag("lift_empirical", scan.lift)
        regularity = flag("regularity_empirical", scan.regularity)
        eta_injective = flag("eta_injective_empirical", scan.eta_injective)
    else:
        lift = flag("lift_empirical", [_not_strict(e)])
        regularity = flag("regularity_empirical", [_not_strict(e)])
        eta_injective = flag("eta_injective_empirical", [_not_strict(e)])

    report = CertificationReport(
        class_tag=e.source.cls,
        n_max=n_max,
        strict_hom=strict,
        injective=injective,
        base_separation=separation,
        lift_sufficient=sufficient,
        lift_empirical=lift,
        regularity_empirical=regularity,
        eta_injective_empirical=eta_injective,
        witnesses=witnesses,
        graphs_scanned=graphs,
        maps_scanned=maps,
    )
    logger.info(
        "certified epsilon over class %s (n <= %d): %d graphs, %d maps, failing: %s",
        e.source.cls.value,
        n_max,
        graphs,
        maps,
        ", ".join(name for name, value in report.flags().items() if not value) or "none",
    )
    return report
