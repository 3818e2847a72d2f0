import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st
from scipy.linalg import expm

from cvclone.core import GaussianState, symplectic_form

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("fast", max_examples=10, deadline=None)
settings.load_profile("default")

# 4.3 dB of noise reduction on a pure two-mode squeezed vacuum
R_43 = 0.5 * np.log(10**0.43)


def random_symplectic(rng, n, scale=0.4):
    """exp(Omega H) with H symmetric is symplectic; independent of the library's gate set."""
    H = rng.normal(scale=scale, size=(2 * n, 2 * n))
    H = 0.5 * (H + H.T)
    return expm(symplectic_form(n) @ H)


def random_state(rng, n, max_thermal=3.0, displaced=True):
    """Random physical state ``S diag(nu) S^T`` with known symplectic spectrum ``nu``."""
    nu = 1.0 + rng.uniform(0.0, max_thermal - 1.0, size=n)
    S = random_symplectic(rng, n)
    cov = S @ np.diag(np.repeat(nu, 2)) @ S.T
    mean = rng.normal(scale=2.0, size=2 * n) if displaced else np.zeros(2 * n)
    return GaussianState(mean, cov), np.sort(nu)


@st.composite
def physical_states(draw, min_modes=1, max_modes=3):
    n = draw(st.integers(min_modes, max_modes))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_state(np.random.default_rng(seed), n)[0]


@pytest.fixture
def rng():
    return np.random.default_rng(20081016)


def pytest_terminal_summary(terminalreporter):
    test_acceptance = sys.modules.get("tests.test_acceptance")
    if test_acceptance and test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(test_acceptance.RESULTS, key=lambda k: int(k)):
            ok, desc = test_acceptance.RESULTS[key]
            terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {desc}")
