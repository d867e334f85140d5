from __future__ import annotations

from datetime import datetime, timezone
from pathlib import Path

import pytest

from raiqb import seeds
from raiqb.compliance import RequirementSet
from raiqb.ingest import parse_bank
from raiqb.model import QuestionBank

DATA = Path(__file__).parent / "data"

FIXED_NOW = datetime(2025, 6, 1, 12, 0, 0, tzinfo=timezone.utc)

_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and report.when == "call":
        _ACCEPTANCE_RESULTS.append((marker.args[0], report.outcome))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, outcome in _ACCEPTANCE_RESULTS:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")


@pytest.fixture(scope="session")
def seed_bank() -> QuestionBank:
    return seeds.load_seed_bank()


@pytest.fixture(scope="session")
def mirror_bank() -> QuestionBank:
    return parse_bank((DATA / "table1_mirror.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def pre_reg_bank() -> QuestionBank:
    return parse_bank((DATA / "bank_pre_regulation.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def eu_set() -> RequirementSet:
    return seeds.load_requirement_set("eu-high-risk")


@pytest.fixture(scope="session")
def agent_set() -> RequirementSet:
    return seeds.load_requirement_set("agent-rai-plugins")


@pytest.fixture(scope="session")
def fm_set() -> RequirementSet:
    return seeds.load_requirement_set("foundation-model")
