import pytest

from twolevel import build_net
from twolevel.config import default_gate_set


@pytest.fixture(scope="session")
def gate_set():
    return default_gate_set()


@pytest.fixture(scope="session")
def net12(gate_set):
    """Default production net: the compile-pipeline tests share it."""
    return build_net(gate_set, 12)


@pytest.fixture(scope="session")
def net8(gate_set):
    """Coarser net for scaling and monotonicity measurements."""
    return build_net(gate_set, 8)
