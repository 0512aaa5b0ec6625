import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    number, title = m.args
    failed = rep.failed and rep.when in ("setup", "call")
    passed = rep.passed and rep.when == "call"
    if not (failed or passed):
        return
    entry = item.config._criteria.setdefault(number, {"title": title, "tests": {}})
    entry["tests"][item.nodeid] = entry["tests"].get(item.nodeid, True) and passed


def pytest_terminal_summary(terminalreporter, config):
    crits = config._criteria
    if not crits:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(crits):
        entry = crits[number]
        ok = all(entry["tests"].values())
        failed = [n.split("::")[-1] for n, v in entry["tests"].items() if not v]
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {entry['title']}"
        if failed:
            line += "  (failing: " + ", ".join(failed) + ")"
        terminalreporter.write_line(line)
