import numpy as np
import pytest

from eurdyn.model import DensityMatrix2


def random_state(rng: np.random.Generator) -> DensityMatrix2:
    """Uniform-ish point in the Bloch ball."""
    v = rng.normal(size=3)
    v *= rng.uniform() ** (1 / 3) / np.linalg.norm(v)
    x, y, z = v
    return DensityMatrix2((1 + z) / 2, complex(x, -y) / 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


_ACCEPTANCE = []


@pytest.fixture
def acceptance_report():
    def record(criterion: str, passed: bool, detail: str = ""):
        _ACCEPTANCE.append((criterion, passed, detail))
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in sorted(_ACCEPTANCE, key=lambda r: int(r[0].split()[0])):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {criterion}  {detail}")
