import numpy as np
import pytest

from operators.matcore.random_spd import covariance_suite, random_symmetric


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture
def spd_suite():
    """Builder of covariance suites; samples_factor observations per dimension."""

    def build(count, dim, seed=0, samples_factor=4):
        return covariance_suite(count, dim, seed, samples=samples_factor * dim)

    return build


@pytest.fixture
def upstreams():
    """Builder of symmetric upstream gradients, one per suite item."""

    def build(count, dim, seed=0):
        return [random_symmetric(dim, seed, stream=index) for index in range(count)]

    return build
