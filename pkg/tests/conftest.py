import os
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parents[1]

_criteria: dict = {}


def ucr_dir() -> Path:
    return Path(os.environ.get("TSWARP_UCR_DIR", ROOT / "data" / "ucr"))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion check")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    key = (marker.args[0], marker.args[1], item.name)
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        _criteria[key] = status


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title, name), status in sorted(_criteria.items(), key=lambda kv: (kv[0][0], kv[0][2])):
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {title} ({name})")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
