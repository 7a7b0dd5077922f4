import json
import random
import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from permtri.fields import make_tower  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"

# criterion number -> (verdict, description), filled by test_acceptance
CRITERIA: dict[int, tuple[str, str]] = {}


@lru_cache(maxsize=None)
def tower(m: int):
    return make_tower(m)


@pytest.fixture
def ext8():
    return tower(3)


@pytest.fixture
def ext16():
    return tower(4)


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture(scope="session")
def golden():
    return json.loads((FIXTURES / "golden_counts.json").read_text())["counts"]


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        verdict, text = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {verdict}  {text}")
