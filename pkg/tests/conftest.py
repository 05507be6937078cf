import os
import sys
from collections import defaultdict

sys.path.insert(0, os.path.dirname(__file__))

_results = defaultdict(list)
_titles = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion this test certifies")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            item.user_properties.append(("criterion", m.args[0]))
            _titles.setdefault(m.args[0], m.args[1] if len(m.args) > 1 else "")


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _results[crit].append((report.nodeid.split("::")[-1], report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(_results):
        runs = _results[crit]
        ok = all(p for _, p in runs)
        tr.write_line(f"criterion {crit:>2} {'PASS' if ok else 'FAIL'}  {_titles.get(crit, '')} ({sum(p for _, p in runs)}/{len(runs)} tests)")
        for name, p in runs:
            if not p:
                tr.write_line(f"              failed: {name}")
