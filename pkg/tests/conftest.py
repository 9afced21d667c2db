import os
import sys
from collections import defaultdict

import pytest

sys.path.insert(0, os.path.dirname(__file__))

# criterion number -> {test nodeid: passed}
_RESULTS: dict = defaultdict(dict)

_TITLES = {
    "1": "witness sweep b=5..101 through the CLI",
    "2": "table columns c and N for n <= 50",
    "3": "generic certification b=5..55, seed 0, height 10",
    "4": "transvectant calculus (equivariance, swap, closed forms, predicate, dimensions)",
    "5": "tamper mutations at b=5,9,13 fail the predicted conditions",
    "6": "exact rank/kernel against naive elimination, 500 matrices",
    "7": "parse/print round trip on 1000 bi-forms up to (3,31)",
}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    report = outcome.get_result()
    crit = str(marker.args[0])[0]
    ok = _RESULTS[crit].get(item.nodeid, True)
    if report.failed or report.skipped:
        ok = False
    _RESULTS[crit][item.nodeid] = ok


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_RESULTS):
        results = _RESULTS[crit]
        verdict = "PASS" if results and all(results.values()) else "FAIL"
        failed = [n.split("::")[-1] for n, ok in results.items() if not ok]
        extra = f"  failing: {', '.join(failed)}" if failed else ""
        terminalreporter.write_line(
            f"criterion {crit}: {verdict}  ({len(results)} checks)  {_TITLES.get(crit, '')}{extra}")
