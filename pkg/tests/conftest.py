import sys
import itertools

import pytest


def count_multisets(parts, total):
    """Number of ways to write ``total`` as an unordered sum of ``parts``
    (each part usable any number of times), by plain enumeration."""
    parts = sorted(set(p for p in parts if 0 < p <= total), reverse=True)

    def go(rest, idx):
        if rest == 0:
            return 1
        if idx == len(parts):
            return 0
        p = parts[idx]
        return sum(go(rest - j * p, idx + 1) for j in range(rest // p + 1))

    return go(total, 0)


def admissible_count(d):
    """Admissible sequences Sq^{i1}...Sq^{ik} (i_j >= 2 i_{j+1}, i_k >= 1) of degree d."""

    def go(rest, cap):
        # cap: the next (earlier) entry must be at least twice the one just placed
        if rest == 0:
            return 1
        return sum(go(rest - i, 2 * i) for i in range(cap, rest + 1))

    if d == 0:
        return 1
    return sum(go(d - last, 2 * last) for last in range(1, d + 1))


@pytest.fixture
def multisets():
    return count_multisets


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
