import random

import pytest

from src.config import CONFIG
from src.corpus import CORPUS, CorpusEntry
from src.scheme.epsilon import EpsilonMap


@pytest.fixture
def rng() -> random.Random:
    return random.Random(CONFIG.random_seed)


@pytest.fixture(scope="session")
def pair_a() -> CorpusEntry:
    entry = CORPUS.get("pair_a")
    assert entry is not None
    return entry


@pytest.fixture(scope="session")
def pair_b() -> CorpusEntry:
    entry = CORPUS.get("pair_b")
    assert entry is not None
    return entry


@pytest.fixture(scope="session")
def epsilon_a(pair_a: CorpusEntry) -> EpsilonMap:
    return pair_a.build_epsilon()


@pytest.fixture(scope="session")
def epsilon_b(pair_b: CorpusEntry) -> EpsilonMap:
    return pair_b.build_epsilon()
