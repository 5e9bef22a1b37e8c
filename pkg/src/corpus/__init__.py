# Import corpus definitions so they register themselves with CORPUS
import src.corpus.definitions.pairs  # noqa: F401
import src.corpus.definitions.families  # noqa: F401
import src.corpus.definitions.mirrors  # noqa: F401
from src.corpus.registry import (
    CORPUS,
    CorpusEntry,
    CorpusRegistry,
    EpsilonRow,
    Expectations,
    Trace,
    TraceRow,
)

__all__ = [
    "CORPUS",
    "CorpusEntry",
    "CorpusRegistry",
    "EpsilonRow",
    "Expectations",
    "Trace",
    "TraceRow",
]
