"""Collects acceptance-criterion outcomes and prints one line per criterion."""

from collections import OrderedDict

import pytest

CRITERIA = OrderedDict([
    ("1", "closed-form Renyi entropies of the limit laws vs quadrature"),
    ("2", "Gumbel case: exponential maxima, beta=2"),
    ("3", "Weibull case: uniform maxima, exact sequence"),
    ("4", "Frechet case: Pareto(1) maxima, beta=2"),
    ("5", "moment convergence of normalized maxima"),
    ("6", "invariant suites"),
    ("7", "divergence guards"),
    ("8", "CLI determinism"),
])

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, part): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    key = getattr(report, "criterion", None)
    if key is None:
        return
    _results.setdefault(key[0], []).append((key[1], report.passed))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        rep.criterion = (str(mark.args[0]), mark.args[1] if len(mark.args) > 1 else item.name)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num, desc in CRITERIA.items():
        parts = _results.get(num)
        if not parts:
            tr.write_line(f"criterion {num} ({desc}): NOT RUN")
            continue
        failed = [name for name, ok in parts if not ok]
        status = "PASS" if not failed else "FAIL"
        detail = f" [failing: {', '.join(failed)}]" if failed else ""
        tr.write_line(f"criterion {num} ({desc}): {status}{detail}")
