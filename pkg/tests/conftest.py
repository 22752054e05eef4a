import os
from functools import lru_cache

import pytest
from hypothesis import settings

from unknot_qe import fixtures
from unknot_qe.polysys import build_system
from unknot_qe.wirtinger import build_presentation

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

TREFOIL = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"
NONTRIVIAL = [k for k in fixtures.FIXTURES if k != "unknot_0"]


@lru_cache(maxsize=None)
def diagram(name):
    return fixtures.load_diagram(name)


@lru_cache(maxsize=None)
def presentation(name):
    return build_presentation(diagram(name))


@lru_cache(maxsize=None)
def system(name):
    return build_system(presentation(name))


@pytest.fixture
def trefoil_system():
    return system("trefoil")


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record():
    """Print and keep one PASS/FAIL line per acceptance criterion."""
    def _record(number: int, ok: bool, detail: str) -> None:
        line = f"AC{number:<2} {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s[2:4])):
            terminalreporter.write_line(line)
