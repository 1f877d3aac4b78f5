from __future__ import annotations

from pathlib import Path

import pytest

from urlintent.taxonomy import default_taxonomy

DEMO = Path(__file__).resolve().parents[1] / "src" / "urlintent" / "data" / "demo"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def tax():
    return default_taxonomy()


@pytest.fixture
def demo_dir() -> Path:
    return DEMO


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
