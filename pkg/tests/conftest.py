from dataclasses import replace

import numpy as np
import pytest

from teichranders.config import CONFIG
from teichranders.core.halfplane import HPoint, PointSampler
from teichranders.core.modelspace import ModelSpace


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def sampler():
    return PointSampler(0)


@pytest.fixture
def i_point():
    return HPoint(0.0, 1.0)


@pytest.fixture
def small_space():
    """16x16 grid with the first two pooled basis functions."""
    return ModelSpace.from_description(
        {"grid": {"nx": 16, "ny": 16}, "basis": list(CONFIG.space.BASIS_POOL[:2])}
    )


@pytest.fixture
def line_space():
    """16x16 grid, one basis function of unit L1 norm."""
    return ModelSpace.from_description(
        {"grid": {"nx": 16, "ny": 16}, "basis": [CONFIG.space.BASIS_POOL[0]]}
    ).normalized()


@pytest.fixture(scope="session")
def small_sizes():
    return replace(
        CONFIG.suites,
        PAIRS=200,
        TRIPLES=200,
        PATHS=5,
        PERTURBATIONS=5,
        FOLIATIONS=2,
        ISOMETRY_PAIRS=100,
        RAYS=2,
        GARDINER=5,
        KERNEL_TRIALS=2,
        DUAL_SAMPLES=300,
        NORM_TRIALS=1,
        COMETRIC_SAMPLES=2,
        RAY_SAMPLES=101,
    )
