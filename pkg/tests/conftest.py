import sys

import pytest

from seqrank.core import Profile


@pytest.fixture
def p0() -> Profile:
    """3x(a>b>c), 2x(b>c>a), 2x(c>b>a) with a=0, b=1, c=2."""
    return Profile(3, [(3, [0, 1, 2]), (2, [1, 2, 0]), (2, [2, 1, 0])])


def pytest_runtest_logreport(report):
    """One visible pass/fail line per acceptance criterion."""
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::", 1)[1]
    if hasattr(report, "wasxfail"):
        outcome = "XFAIL (documented)" if report.skipped else "XPASS"
    else:
        outcome = "PASS" if report.passed else "FAIL"
    print(f"[acceptance] {name}: {outcome}", file=sys.stderr)
