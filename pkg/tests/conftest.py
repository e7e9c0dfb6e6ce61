import os
import re
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_VERDICTS = {}


def pytest_addoption(parser):
    parser.addoption("--long", action="store_true", default=False, help="run stretch computations")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long"):
        return
    skip = pytest.mark.skip(reason="stretch computation; pass --long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def verdict():
    """verdict(k, ok, detail) records one acceptance line and asserts ok."""
    def record(k: int, ok: bool, detail: str = ""):
        prev = _VERDICTS.get(k)
        _VERDICTS[k] = (bool(ok) and (prev is None or prev[0]), detail if prev is None else prev[1] + "; " + detail)
        assert ok, f"criterion {k}: {detail}"
    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = re.match(r"test_c(\d+)_", item.name)
    if m and rep.when == "call" and rep.failed:
        k = int(m.group(1))
        _, detail = _VERDICTS.get(k, (True, ""))
        _VERDICTS[k] = (False, (detail + "; " if detail else "") + f"{item.name} failed")


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_VERDICTS):
        ok, detail = _VERDICTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
