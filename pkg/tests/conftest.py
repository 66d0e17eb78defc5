import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cubeinf.bounds import corpus_function  # noqa: E402


@pytest.fixture(scope="session")
def corpus():
    """The 500-function seeded corpus (n <= 10, d <= 5)."""
    return [corpus_function(i, seed=0) for i in range(500)]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
