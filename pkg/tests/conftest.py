import random
import sys

import pytest

from quivertilt.corpus import load_corpus
from quivertilt.field import Field


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def F():
    return Field()


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def QF():
    return Field("rationals")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
