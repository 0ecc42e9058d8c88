import sys
from pathlib import Path

import pytest

from peiffer.sequences import ColoredPresentation, parse_presentation
from peiffer.wu import wu_presentation

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
FIXTURES = Path(__file__).resolve().parent / "fixtures"


@pytest.fixture(scope="session")
def wu():
    return wu_presentation(2, ("x1", "x2"))


@pytest.fixture(scope="session")
def wu_pres(wu) -> ColoredPresentation:
    return wu.presentation


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


def load_pres(name: str) -> ColoredPresentation:
    return parse_presentation((DATA / name).read_text())


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
