import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        name = report.nodeid.split("::")[-1]
        num = int(name.split("_")[2])
        detail = dict(report.user_properties).get("detail", "")
        if report.outcome != "passed" and report.longrepr is not None:
            detail = (detail + " | " if detail else "") + str(report.longrepr).strip().splitlines()[-1]
        prev = _CRITERIA.get(num)
        ok = report.outcome == "passed" and (prev is None or prev[0])
        _CRITERIA[num] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        ok, detail = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
