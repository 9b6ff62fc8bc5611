import numpy as np
import pytest

from psg import beamsplit_with_vacuum, from_exp2s

REF_EXP2S = 2.36
REF_T = 0.88


@pytest.fixture
def ref_state():
    return from_exp2s(REF_EXP2S)


@pytest.fixture
def ref_V(ref_state):
    return beamsplit_with_vacuum(ref_state, REF_T)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_disk(rng, n, radius):
    r = radius * np.sqrt(rng.uniform(0, 1, n))
    phi = rng.uniform(0, 2 * np.pi, n)
    return r * np.cos(phi), r * np.sin(phi)
