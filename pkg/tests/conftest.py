import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from support import GOLDEN_DIR, golden_sources  # noqa: E402

from selective_transpile.corpus import CorpusSpec, generate_corpus  # noqa: E402


@pytest.fixture(scope="session")
def golden():
    return golden_sources()


@pytest.fixture(scope="session")
def sparse_corpus():
    return generate_corpus(CorpusSpec(300, (1, 3), seed=11))


@pytest.fixture(scope="session")
def dense_corpus():
    return generate_corpus(CorpusSpec(120, (8, 12), seed=12))


@pytest.fixture(scope="session")
def mixed_corpus(sparse_corpus, dense_corpus):
    """Generated scripts of every density plus the golden scripts, as (name, source)."""
    return ([(g.name, g.source) for g in sparse_corpus] + [("d" + g.name, g.source) for g in dense_corpus]
            + list(golden_sources()))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
