import pytest

from src.corpus import CORPUS, CorpusEntry, CorpusRegistry
from src.corpus.render import render_dot, render_epsilon, render_table
from src.corpus.reproduce import reproduce
from src.ev.ev import ev_build
from src.graphs.digraph import ClassTag
from src.scheme.epsilon import EpsilonMap


def test_listing_names_every_entry():
    names = CORPUS.names()
    assert {"pair_a", "pair_b", "two_cycle_demo", "pair_a_undirected"} <= set(names)
    assert [f"flat_poset_family({k})" for k in range(3, 7)] == [n for n in names if n.startswith("flat_poset")]
    assert [f"flat_bipartite_family({k})" for k in range(3, 7)] == [n for n in names if n.startswith("flat_bip")]
    listing = CORPUS.format_listing()
    assert all(f"`{name}`" in listing for name in names)


@pytest.mark.parametrize("name", CORPUS.names())
def test_every_entry_reproduces(name: str):
    entry = CORPUS.get(name)
    assert entry is not None
    report = reproduce(entry)
    assert report.ok, report.format_report()


def test_pair_a_reports_its_typo(pair_a: CorpusEntry):
    report = reproduce(pair_a)
    typos = [result for result in report.results if result.status == "documented-typo"]
    assert len(typos) == 1
    assert typos[0].expected == "( p, ∅, {m} )"
    assert typos[0].actual == "( p, {}, {y} )"
    assert "1 documented typos" in report.format_report()


def test_pair_b_checks_every_trace_cell(pair_b: CorpusEntry):
    report = reproduce(pair_b)
    traced = [result for result in report.results if result.check.startswith("trace")]
    assert len(traced) == 3 * (2 + 3 + 4) + 2
    assert {result.check for result in traced} == {"trace C", "trace V", "trace N"}


def test_mismatch_names_row_and_column(pair_b: CorpusEntry):
    broken = pair_b.expected.model_copy(deep=True)
    broken.epsilon_rows[1].target = "( x, ∅, ∅ )"
    entry = CorpusEntry(
        name="broken",
        description="pair_b with a wrong row",
        cls=pair_b.cls,
        r=pair_b.r,
        s=pair_b.s,
        spec=pair_b.spec,
        build_epsilon=pair_b.build_epsilon,
        expected=broken.model_copy(update={"flags": {}, "traces": []}),
    )
    report = reproduce(entry)
    assert not report.ok
    [mismatch] = report.mismatches
    assert mismatch.row == "( x, ∅, {m} )"
    assert "[mismatch] epsilon/( x, ∅, {m} )" in report.format_report()


def test_family_registration():
    registry = CorpusRegistry()

    @registry.family("demo", range(2, 4))
    def demo(k: int) -> CorpusEntry:
        entry = CORPUS.get(f"flat_poset_family({k + 1})")
        assert entry is not None
        return entry

    assert registry.names() == ["demo(2)", "demo(3)"]
    assert registry.get("demo(3)") is CORPUS.get("flat_poset_family(4)")
    assert registry.get("missing") is None


def test_empty_table_has_a_header():
    assert render_table([]) == "| a in E(R) | epsilon(a) in E(S) |\n|---|---|"


def test_epsilon_table_layout(epsilon_a: EpsilonMap):
    text = render_epsilon(epsilon_a)
    assert "| ( x, {}, {m} ) | ( y, {}, {m} ) |" in text
    assert text.count("|---|---|") == 4


def test_dot_clusters_follow_the_fibers(pair_b: CorpusEntry):
    text = render_dot(ev_build(pair_b.r, ClassTag.POSET), name="E(R_B)")
    assert text.count("subgraph cluster_") == 5
    for label in ("x", "p", "m", "y", "q"):
        assert f'label="{label}";' in text
    assert text == render_dot(ev_build(pair_b.r, ClassTag.POSET), name="E(R_B)")
