import numpy as np
import pytest

from mixer.pipeline import PipelineConfig, describe
from mixer.synth import SynthSpec, generate_corpus

_ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger numba compilation once so timed tests measure steady state."""
    describe(np.linspace(0, 1, 48).reshape(3, 4, 4), PipelineConfig(embedding_sizes=(9,)))


@pytest.fixture(scope="session")
def synth_corpus(tmp_path_factory):
    """The 4-class, 20 x 32 x 32, noise 0.1 corpus."""
    root = tmp_path_factory.mktemp("synth")
    generate_corpus(SynthSpec(), root)
    return root


@pytest.fixture(scope="session")
def acceptance_report():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
