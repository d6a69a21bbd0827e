import sys
from pathlib import Path

import numpy as np
import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from simcore import RngStream  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def stream():
    return RngStream(seed=1234, stream_id=0)


@pytest.fixture
def plus_state_amplitudes():
    return np.array([1.0, 1.0], dtype=complex) / np.sqrt(2)
