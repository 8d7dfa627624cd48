"""Collects acceptance outcomes and prints one line per criterion at the end."""

import re
from collections import defaultdict

_RESULTS = defaultdict(list)
_PATTERN = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    m = _PATTERN.search(report.nodeid)
    if not m:
        return
    if report.when != "call" and report.passed:
        return
    if hasattr(report, "wasxfail"):
        status = "XFAIL"
    else:
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
    detail = "; ".join(v for k, v in report.user_properties if k == "detail")
    _RESULTS[int(m.group(1))].append((m.group(2), status, detail))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.write_sep("=", "acceptance criteria")
    for num in sorted(_RESULTS):
        parts = _RESULTS[num]
        ok = all(status == "PASS" for _, status, _ in parts)
        tr.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}")
        for name, status, detail in parts:
            tr.write_line(f"    {name}: {status}" + (f" ({detail})" if detail else ""))
