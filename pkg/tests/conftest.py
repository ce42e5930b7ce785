import random
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from pbwdeform.corpus import CorpusConfig, random_spec
from pbwdeform.presentation import parse_spec

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text()


def load(name: str, extra: str = ""):
    return parse_spec(fixture_text(name) + extra)


@pytest.fixture
def cyc3():
    return load("cyclic3.spec")


@pytest.fixture
def anti():
    return load("anticommuting.spec")


@pytest.fixture
def heis():
    return load("heisenberg.spec")


def corpus_specs(**kw):
    """Strategy: random specs from the diagonal-action generator."""
    cfg = CorpusConfig(**kw)
    return st.integers(0, 2**32 - 1).map(lambda seed: random_spec(random.Random(seed), cfg))


_PBW_POOL = None


def pbw_specs():
    """Strategy: PBW specs drawn from a fixed random pool."""
    global _PBW_POOL
    if _PBW_POOL is None:
        from pbwdeform.corpus import corpus
        from pbwdeform.pbw import check_pbw

        _PBW_POOL = [s for s in corpus(CorpusConfig(size=200, seed=7)) if check_pbw(s, "direct").passed]
    return st.sampled_from(_PBW_POOL)


# filled by test_acceptance.py, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
