"""
Shared fixtures of the test suite.
"""
import random

import pytest

from hypertess.configuration import Configuration
from hypertess.lorentz import Tolerances

@pytest.fixture
def configuration() -> Configuration:
    return Configuration()

@pytest.fixture
def exact_tol() -> Tolerances:
    return Tolerances()

@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240517)
