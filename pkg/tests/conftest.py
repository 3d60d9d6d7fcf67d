import itertools

import pytest

from paramsq.core import PString

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def all_strings(max_n, sigma, min_n=0):
    """Every string over range(sigma) with min_n <= length <= max_n."""
    for n in range(min_n, max_n + 1):
        for w in itertools.product(range(sigma), repeat=n):
            yield PString(w, sigma)


@pytest.fixture
def acceptance():
    def record(number, passed, detail):
        ACCEPTANCE_RESULTS[number] = (passed, detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")
