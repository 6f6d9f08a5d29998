import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from doublejc.dynamics import ModelParams  # noqa: E402

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


PARAM_SETS = {
    "resonant_equal": ModelParams.from_detuning(1.0, 1.0),
    "resonant_ratio2": ModelParams.from_detuning(2.0, 1.0),
    "detuned_equal": ModelParams.from_detuning(1.0, 1.0, 0.5, 1.0),
    "detuned_ratio2": ModelParams.from_detuning(2.0, 1.0, 0.5, 1.0, nu_A=1.3, nu_B=0.7),
}


def acceptance_grid():
    """208 (params, alpha, beta, t) points over four parameter regimes."""
    alphas = (0.0, np.pi / 8, np.pi / 3, np.pi / 2)
    betas = (0.0, np.pi / 3, np.pi)
    times = np.linspace(0.0, 2 * np.pi, 13)
    pts = []
    for name, p in PARAM_SETS.items():
        for i, t in enumerate(times):
            for j, a in enumerate(alphas):
                pts.append((name, p, a, betas[(i + j) % 3], float(t)))
    return pts


@pytest.fixture(params=list(PARAM_SETS), ids=list(PARAM_SETS))
def params(request):
    return PARAM_SETS[request.param]
