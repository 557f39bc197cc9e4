import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cibench import data_path  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture
def fixture_panel_path():
    return Path(str(data_path("fixture_panel.csv")))


@pytest.fixture
def fixture_survey_paths():
    return Path(str(data_path("fixture_survey.csv"))), Path(str(data_path("fixture_inventory.csv")))


@pytest.fixture
def write_csv(tmp_path):
    def _write(text, name="data.csv"):
        path = tmp_path / name
        path.write_text(text)
        return path
    return _write


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
