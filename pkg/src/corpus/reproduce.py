import logging
from typing import Literal

from pydantic import BaseModel

from src.corpus.registry import CorpusEntry, Trace
from src.graphs.digraph import ClassTag, Digraph, class_closure
from src.homs.homs import VertexMap
from src.ev.ev import EvSystem, alpha_map, check_erd_aid, ev_build
from src.rearrange.rearrange import apply, b_phi, epsilon_explicit, epsilon_from_rho, injectivity_criterion
from src.scheme.certify import certify
from src.scheme.epsilon import EpsilonMap, eta
from src.undirected.rearrange import rearrange_u
from src.undirected.ugraph import from_symmetric

logger = logging.getLogger(__name__)

Status = Literal["ok", "mismatch", "documented-typo"]


class CheckResult(BaseModel):
    check: str
    row: str | None = None
    column: str | None = None
    status: Status = "ok"
    expected: str | None = None
    actual: str | None = None
    detail: str = ""

    def format(self) -> str:
        where = "/".join(part for part in (self.check, self.row, self.column) if part)
        line = f"[{self.status}] {where}"
        if self.status != "ok":
            line += f": expected {self.expected}, got {self.actual}"
        if self.detail:
            line += f" ({self.detail})"
        return line


class ReproductionReport(BaseModel):
    entry: str
    n_max: int
    results: list[CheckResult] = []

    @property
    def mismatches(self) -> list[CheckResult]:
        return [result for result in self.results if result.status == "mismatch"]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def format_report(self, verbose: bool = False) -> str:
        lines = [f"# reproduce {self.entry} (n <= {self.n_max})", ""]
        for result in self.results:
            if verbose or result.status != "ok":
                lines.append(result.format())
        typos = sum(1 for result in self.results if result.status == "documented-typo")
        lines.append("")
        lines.append(
            f"{len(self.results)} checks, {len(self.mismatches)} mismatches, {typos} documented typos"
        )
        return "\n".join(lines)


def _compare(
    report: ReproductionReport,
    check: str,
    expected: object,
    actual: object,
    row: str | None = None,
    column: str | None = None,
    shown: tuple[str, str] | None = None,
) -> None:
    expected_text, actual_text = shown or (str(expected), str(actual))
    report.results.append(
        CheckResult(
            check=check,
            row=row,
            column=column,
            status="ok" if expected == actual else "mismatch",
            expected=expected_text,
            actual=actual_text,
        )
    )


def _check_epsilon_rows(report: ReproductionReport, entry: CorpusEntry, e: EpsilonMap) -> None:
    rows = entry.expected.epsilon_rows
    if not rows:
        return
    source, target = e.source, e.target
    _compare(report, "epsilon", source.size, len(rows), column="row count")
    covered: set[int] = set()
    for row in rows:
        i = source.lookup(source.parse_ev(row.source))
        covered.add(i)
        expected = target.parse_ev(row.target)
        actual = target.vertices[e.images[i]]
        if row.printed_source is not None and expected == actual:
            report.results.append(
                CheckResult(
                    check="epsilon",
                    row=row.source,
                    status="documented-typo",
                    expected=row.printed_source,
                    actual=source.format_vertex(i),
                    detail="the row is printed with a repeated source vertex",
                )
            )
            continue
        _compare(
            report,
            "epsilon",
            expected,
            actual,
            row=row.source,
            shown=(target.format_ev(expected), target.format_ev(actual)),
        )
    missing = [source.format_vertex(i) for i in range(source.size) if i not in covered]
    if missing:
        report.results.append(
            CheckResult(
                check="epsilon",
                column="coverage",
                status="mismatch",
                expected="every ev-vertex listed",
                actual=", ".join(missing),
            )
        )


def _check_b_phi(report: ReproductionReport, entry: CorpusEntry) -> None:
    if entry.expected.b_phi is None or entry.spec is None:
        return
    ev = ev_build(entry.r, ClassTag.ALL_DIGRAPHS)
    expected = {ev.parse_ev(text) for text in entry.expected.b_phi}
    actual = {ev.vertices[i] for i in b_phi(entry.r, entry.spec)}
    _compare(
        report,
        "b_phi",
        expected,
        actual,
        shown=(
            ", ".join(ev.format_ev(a) for a in sorted(expected)),
            ", ".join(ev.format_ev(a) for a in sorted(actual)),
        ),
    )


def trace_graph(trace: Trace, entry: CorpusEntry) -> Digraph:
    g = Digraph.from_labeled_arcs(trace.labels, trace.covers)
    return class_closure(g, entry.cls)


def _check_trace(report: ReproductionReport, entry: CorpusEntry, e: EpsilonMap, trace: Trace) -> None:
    g = trace_graph(trace, entry)
    r = e.source.base_graph
    xi = VertexMap(g, r, tuple(r.index(trace.xi[label]) for label in trace.labels))
    alpha_r = alpha_map(xi, e.source)
    eta_map = eta(e, xi)
    alpha_s = alpha_map(eta_map, e.target)
    check = f"trace {trace.name}"
    if trace.eta is not None:
        expected_eta = [trace.eta[label] for label in trace.labels]
        _compare(report, check, expected_eta, eta_map.as_labels(), column="eta")

    def column(system: EvSystem, name: str, expected_text: str, actual_index: int, vertex: str) -> None:
        expected = system.parse_ev(expected_text)
        actual = system.vertices[actual_index]
        _compare(
            report,
            check,
            expected,
            actual,
            row=vertex,
            column=name,
            shown=(system.format_ev(expected), system.format_ev(actual)),
        )

    for row in trace.rows:
        v = g.index(row.vertex)
        column(e.source, "alpha", row.alpha, alpha_r.images[v], row.vertex)
        column(e.target, "epsilon of alpha", row.epsilon_alpha, e.images[alpha_r.images[v]], row.vertex)
        column(e.target, "alpha of eta", row.alpha_eta, alpha_s.images[v], row.vertex)


def _check_rearrangement(report: ReproductionReport, entry: CorpusEntry, e: EpsilonMap) -> None:
    if entry.spec is None:
        return
    if entry.undirected:
        moved = rearrange_u(from_symmetric(entry.r), entry.spec)
        _compare(report, "rearrangement", from_symmetric(entry.s), moved, shown=("S", moved.describe()))
        return
    _compare(report, "rearrangement", entry.s, apply(entry.r, entry.spec), shown=("S", "apply(R)"))
    explicit = epsilon_explicit(entry.r, entry.spec)
    from_rho = epsilon_from_rho(entry.r, entry.spec)
    _compare(report, "agreement", explicit.images, from_rho.images, column="explicit vs lift of rho")
    injective = len(set(e.images)) == len(e.images)
    _compare(report, "injectivity criterion", injective, injectivity_criterion(entry.r, entry.spec))


def reproduce(entry: CorpusEntry, n_max: int | None = None) -> ReproductionReport:
    """rebuild every expected table of the entry and diff it cell by cell"""
    n_max = entry.expected.n_max if n_max is None else n_max
    report = ReproductionReport(entry=entry.name, n_max=n_max)
    e = entry.build_epsilon()

    if entry.expected.ev_sizes is not None:
        _compare(report, "ev sizes", entry.expected.ev_sizes, (e.source.size, e.target.size))
    if entry.expected.aid is not None:
        result = check_erd_aid(e.source)
        _compare(report, "aid", entry.expected.aid, result.erd and result.aid)
    _check_rearrangement(report, entry, e)
    _check_epsilon_rows(report, entry, e)
    _check_b_phi(report, entry)
    for trace in entry.expected.traces:
        _check_trace(report, entry, e, trace)

    if entry.expected.flags:
        certification = certify(e, n_max)
        flags = certification.flags()
        for name, expected in entry.expected.flags.items():
            _compare(report, "certify", expected, flags[name], column=name)

    logger.info(
        "reproduced %s: %d checks, %d mismatches", entry.name, len(report.results), len(report.mismatches)
    )
    return report
