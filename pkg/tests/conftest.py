import hypothesis
import numpy as np
import pytest

import freecs

hypothesis.settings.register_profile("default", deadline=None, max_examples=60)
hypothesis.settings.register_profile("fast", deadline=None, max_examples=10)
hypothesis.settings.load_profile("default")

REF_SIGMA = 2**-0.5


@pytest.fixture
def ref_family():
    return freecs.make_cs_family(REF_SIGMA)


@pytest.fixture
def ref_label(ref_family):
    # sigma = 2^-1/2, p = 2, q0 = 0
    return freecs.z_from_initial(0.0, 2.0, ref_family)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_generalized(rng):
    """Valid (c1, c2) with arbitrary phases; |mu2 - mu1| < pi/2 keeps cos > 0."""
    a1 = rng.uniform(0.3, 2.0)
    mu1 = rng.uniform(-np.pi, np.pi)
    dmu = rng.uniform(-1.3, 1.3)
    a2 = 0.5 / (a1 * np.cos(dmu))
    return freecs.make_generalized(a1 * np.exp(1j * mu1), a2 * np.exp(1j * (mu1 + dmu)))


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE:
        terminalreporter.write_line(line)
