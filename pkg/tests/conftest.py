import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cgslink.generate import moment_curve_scene  # noqa: E402
from cgslink.linking import build_crossing_table  # noqa: E402
from cgslink.scene import SpatialScene  # noqa: E402

ACCEPTANCE_LINES = []

HOPF_A = ((4, 0, 0), (-2, 3, 0), (-2, -3, 0))
HOPF_B = ((0, 0, 3), (0, 0, -3), (8, 0, 0))


@pytest.fixture(scope="session")
def hopf_scene():
    """Triangle A as K_3 (vertices 1, 2, 3) and triangle B as loop 0."""
    return SpatialScene(3, HOPF_A, {}, (HOPF_B,))


@pytest.fixture(scope="session")
def split_scene():
    far = tuple((x + 100, y, z) for x, y, z in HOPF_B)
    return SpatialScene(3, HOPF_A, {}, (far,))


@pytest.fixture(scope="session")
def moment6():
    return build_crossing_table(moment_curve_scene(6))


@pytest.fixture(scope="session")
def moment7():
    return build_crossing_table(moment_curve_scene(7))


@pytest.fixture
def record_criterion():
    def record(name, passed, detail=""):
        ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}".rstrip())
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
