import numpy as np
import pytest

ACCEPTANCE_LINES = []


def record_acceptance(line: str):
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_site(rng, n):
    v = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    return v / np.linalg.norm(v)
