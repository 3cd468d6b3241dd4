import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gkzcert.corpus import corpus_matrices, random_battery  # noqa: E402

ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def record(number: int, title: str, ok: bool, note: str = "") -> None:
    ACCEPTANCE[number] = (title, ok, note)


@pytest.fixture(scope="session")
def corpus():
    return corpus_matrices()


@pytest.fixture(scope="session")
def battery():
    return random_battery(20, seed=0)


@pytest.fixture(scope="session")
def full_battery(corpus, battery):
    return list(corpus.items()) + [(f"random{i:02d}", A) for i, A in enumerate(battery)]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, note = ACCEPTANCE[number]
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}"
        if note:
            line += f"  ({note})"
        terminalreporter.write_line(line)
