import sys
import warnings

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def cvec(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


@pytest.fixture(autouse=True)
def _quiet_n_lt_d():
    # EmbedConfig warns when n < d; most tests use small n on purpose
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message=r"n=\d+ < d=\d+")
        yield


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
