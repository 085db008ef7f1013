import numpy as np
import pytest

from wellnet.lattice import LatticeSpec
from wellnet.sampler import SamplerConfig


@pytest.fixture
def default_lattice():
    return LatticeSpec(0.7, 512)


@pytest.fixture
def quick_sampler():
    """A few thousand sweeps: enough for contracts, not for physics."""
    return SamplerConfig(thermalization_sweeps=200, measurement_sweeps=400, measure_every=10, rng_seed=3)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE = {}


@pytest.fixture
def criterion():
    """Record one acceptance line; the terminal summary prints them in order."""
    def record(number, title, passed, detail=""):
        _ACCEPTANCE[number] = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {title}  {detail}".rstrip()
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[number])
