import sys

import numpy as np
import pytest

from spectral_schwarz.linalg import identity


def jordan_block(lam, size):
    return lam * identity(size) + np.diag(np.ones(size - 1), 1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("tests.test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[key])
