import logging

from pydantic import BaseModel

from src.errors import ClassMismatchError
from src.graphs.digraph import ClassTag, Digraph, member_of
from src.graphs.enumerate import class_members
from src.homs.homs import count_homs

logger = logging.getLogger(__name__)


class DominanceRow(BaseModel):
    graph: str
    n: int
    strict_r: int
    strict_s: int
    hom_r: int
    hom_s: int

    def violates(self, strict: bool) -> bool:
        if strict:
            return self.strict_r > self.strict_s
        return self.hom_r > self.hom_s


class DominanceReport(BaseModel):
    class_tag: ClassTag
    n_max: int
    strict: bool
    rows: list[DominanceRow] = []
    counterexamples: list[DominanceRow] = []
    scanned_by_size: dict[int, int] = {}

    @property
    def dominated(self) -> bool:
        return not self.counterexamples

    def format_table(self) -> str:
        relation = "#S(G,R) <= #S(G,S)" if self.strict else "#H(G,R) <= #H(G,S)"
        lines = [
            f"# {relation} over class {self.class_tag.value}, n <= {self.n_max}",
            "",
            "| G | #S(G,R) | #S(G,S) | #H(G,R) | #H(G,S) |",
            "|---|---|---|---|---|",
        ]
        for row in self.rows:
            marker = " !" if row.violates(self.strict) else ""
            lines.append(
                f"| {row.graph}{marker} | {row.strict_r} | {row.strict_s} | {row.hom_r} | {row.hom_s} |"
            )
        lines.append("")
        sizes = ", ".join(f"n={n}: {count}" for n, count in sorted(self.scanned_by_size.items()))
        lines.append(f"scanned {len(self.rows)} graphs ({sizes})")
        lines.append(f"counterexamples: {len(self.counterexamples)}")
        return "\n".join(lines)


def compare_lovasz(
    r: Digraph, s: Digraph, c: ClassTag, n_max: int, strict: bool
) -> DominanceReport:
    """checks #count(G, r) <= #count(G, s) for every class member G with at most n_max vertices"""
    for name, graph in (("R", r), ("S", s)):
        if not member_of(graph, c):
            raise ClassMismatchError(f"{name} is not a member of class {c.value}")

    report = DominanceReport(class_tag=c, n_max=n_max, strict=strict)
    for g in class_members(c, n_max):
        row = DominanceRow(
            graph=g.describe(),
            n=g.n,
            strict_r=count_homs(g, r, strict=True),
            strict_s=count_homs(g, s, strict=True),
            hom_r=count_homs(g, r),
            hom_s=count_homs(g, s),
        )
        report.rows.append(row)
        report.scanned_by_size[g.n] = report.scanned_by_size.get(g.n, 0) + 1
        if row.violates(strict):
            report.counterexamples.append(row)

    logger.info(
        "compared %d graphs of class %s, %d counterexamples",
        len(report.rows),
        c.value,
        len(report.counterexamples),
    )
    return report


def lovasz_vector(h: Digraph, c: ClassTag, n_max: int, strict: bool = False) -> list[int]:
    return [count_homs(g, h, strict) for g in class_members(c, n_max)]


def find_separating_graph(r: Digraph, s: Digraph, c: ClassTag, n_max: int) -> Digraph | None:
    """a class member G with #H(G, r) != #H(G, s), if one exists up to n_max vertices"""
    for g in class_members(c, n_max):
        if count_homs(g, r) != count_homs(g, s):
            return g
    return None
