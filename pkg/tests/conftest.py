import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import rainbowchain as rc  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


def ground_state(n_sites, h=0.0, kind="rainbow", J=1.0):
    spec = rc.ChainSpec(n_sites, h=h, J=J, kind=kind)
    return rc.ground_state_correlations(rc.diagonalize(rc.build_hopping_matrix(spec.couplings())))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
