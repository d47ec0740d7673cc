import os

import pytest

RUN_SLOW = os.environ.get("MUBWIGNER_RUN_SLOW") == "1"

# criterion number -> (title, [outcomes])
_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion covered by the test")


def pytest_collection_modifyitems(config, items):
    skip = pytest.mark.skip(reason="long-running; set MUBWIGNER_RUN_SLOW=1")
    for item in items:
        if "slow" in item.keywords and not RUN_SLOW:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _CRITERIA.setdefault(m.args[0], [m.args[1], []])[1].append(rep.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, outcomes = _CRITERIA[n]
        if "failed" in outcomes:
            status = "FAIL"
        elif all(o == "skipped" for o in outcomes):
            status = "SKIPPED (long-running; MUBWIGNER_RUN_SLOW=1)"
        elif "skipped" in outcomes:
            status = "PARTIAL"
        else:
            status = "PASS"
        tr.write_line(f"criterion {n:2d} {status:<8} {title}")
