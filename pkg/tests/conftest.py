"""Shared fixtures, plus a terminal summary with one line per acceptance criterion.

Acceptance tests carry ``@pytest.mark.criterion(n)``; a criterion passes when
every test marked with it passes.
"""

from __future__ import annotations

from collections import defaultdict

import pytest

from twistcoh import homology as _homology
from twistcoh import wang as _wang

CRITERIA = {
    1: "H_q(Z4; Z) in degrees 1..7",
    2: "automorphism b -> b^-1 on H_q(Z4; Z)",
    3: "H_{4m+1}(Z4:Z; Ztw) and H_{4m+3}(Z4:Z; Z) with i_* iso",
    4: "restriction on H^2, Euler class, cap with e",
    5: "deck transformations of the two double covers",
    6: "cap identities for transferred classes, evenness of transfer images",
    7: "enumeration over Z/4 ending in an even class",
    8: "matrix tables, quaternion embedding, order-64 identity",
    9: "oracle property suites",
    10: "byte-identical JSON reports",
}

_outcomes: dict[int, list[bool]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")
    config.addinivalue_line("markers", "slow: runs the CLI in a subprocess")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for n in getattr(report, "criteria", ()):
        _outcomes[n].append(report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep.criteria = tuple(m.args[0] for m in item.iter_markers("criterion"))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, title in CRITERIA.items():
        runs = _outcomes.get(n)
        if not runs:
            verdict = "NOT RUN"
        else:
            verdict = "PASS" if all(runs) else "FAIL"
        tr.write_line("criterion %2d: %-7s %s (%d tests)" % (n, verdict, title, len(runs or ())))


@pytest.fixture
def fresh_caches():
    _homology.clear_caches()
    _wang.clear_cache()
    yield
    _homology.set_seed(None)
    _homology.clear_caches()
    _wang.clear_cache()
