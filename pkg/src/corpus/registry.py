from collections.abc import Callable, Iterable
from dataclasses import dataclass

from pydantic import BaseModel

from src.graphs.digraph import ClassTag, Digraph
from src.rearrange.rearrange import RearrangementSpec
from src.scheme.epsilon import EpsilonMap


class EpsilonRow(BaseModel):
    """one row of an expected epsilon table, ev-vertices in `( x, {}, {m} )` text"""

    source: str
    target: str
    printed_source: str | None = None
    """the row as it was originally printed, when that print is a known typo"""


class TraceRow(BaseModel):
    vertex: str
    alpha: str
    epsilon_alpha: str
    alpha_eta: str


class Trace(BaseModel):
    """a test poset given by its cover relations, a strict map into R and the expected lift columns"""

    name: str
    labels: list[str]
    covers: list[tuple[str, str]]
    xi: dict[str, str]
    rows: list[TraceRow]
    eta: dict[str, str] | None = None


class Expectations(BaseModel):
    n_max: int
    epsilon_rows: list[EpsilonRow] = []
    b_phi: list[str] | None = None
    traces: list[Trace] = []
    flags: dict[str, bool] = {}
    ev_sizes: tuple[int, int] | None = None
    aid: bool | None = None


@dataclass(frozen=True, kw_only=True)
class CorpusEntry:
    """a worked example: base graphs, an optional rearrangement, the epsilon to check and what to expect"""

    name: str
    description: str
    cls: ClassTag
    r: Digraph
    s: Digraph
    spec: RearrangementSpec | None = None
    build_epsilon: Callable[[], EpsilonMap]
    expected: Expectations
    notes: str = ""

    @property
    def undirected(self) -> bool:
        return not self.cls.directed


type EntryBuilder = Callable[[], CorpusEntry]
type FamilyBuilder = Callable[[int], CorpusEntry]


class CorpusRegistry:
    """a registry of all the worked examples"""

    def __init__(self) -> None:
        self._builders: dict[str, EntryBuilder] = {}
        self._cache: dict[str, CorpusEntry] = {}

    def register(self, name: str, builder: EntryBuilder) -> None:
        self._builders[name] = builder

    def get(self, name: str) -> CorpusEntry | None:
        builder = self._builders.get(name)
        if builder is None:
            return None
        if name not in self._cache:
            self._cache[name] = builder()
        return self._cache[name]

    def names(self) -> list[str]:
        return list(self._builders)

    def all_entries(self) -> list[CorpusEntry]:
        return [entry for name in self._builders if (entry := self.get(name)) is not None]

    def entry(self, name: str) -> Callable[[EntryBuilder], EntryBuilder]:
        """decorator for a builder that takes no arguments"""

        def decorator(func: EntryBuilder) -> EntryBuilder:
            self.register(name, func)
            return func

        return decorator

    def family(self, name: str, params: Iterable[int]) -> Callable[[FamilyBuilder], FamilyBuilder]:
        """decorator for a parametric builder, registered once per parameter as `name(k)`"""

        def decorator(func: FamilyBuilder) -> FamilyBuilder:
            for k in params:
                self.register(f"{name}({k})", lambda k=k: func(k))
            return func

        return decorator

    def format_listing(self) -> str:
        lines = ["# Corpus\n"]
        for entry in self.all_entries():
            lines.append(f"- `{entry.name}` ({entry.cls.value}): {entry.description}")
        return "\n".join(lines)


CORPUS = CorpusRegistry()
