import numpy as np
import pytest

from ballinterp import GeneratorSpec, build_system, generate


@pytest.fixture(scope="session")
def golden_seq():
    """Small random sequence reused across test modules; seed pins it."""
    return generate(GeneratorSpec("random", n=5, dim=2, seed=7))


@pytest.fixture(scope="session")
def golden_system(golden_seq):
    return build_system(golden_seq)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
