import random

import pytest

from cmperiods.numkernel import PrecisionContext


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext(120)


@pytest.fixture
def rng():
    return random.Random(1729)
