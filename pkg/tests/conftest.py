from pathlib import Path

import pytest

from newsdeps.corpus import parse_article_json

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def copy_edit_path() -> Path:
    return FIXTURES / "copy_edit_incident.json"


@pytest.fixture(scope="session")
def three_topic_path() -> Path:
    return FIXTURES / "three_topic_day.json"


@pytest.fixture(scope="session")
def copy_edit_corpus(copy_edit_path):
    return parse_article_json(copy_edit_path.read_bytes())


@pytest.fixture(scope="session")
def three_topic_corpus(three_topic_path):
    return parse_article_json(three_topic_path.read_bytes())


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py" in str(getattr(report, "nodeid", "")):
                mark = "PASS" if outcome == "passed" else "FAIL"
                lines.append((report.nodeid.split("::")[-1], mark))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, mark in sorted(lines):
            terminalreporter.write_line(f"[{mark}] {name}")
