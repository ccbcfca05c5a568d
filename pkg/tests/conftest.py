import numpy as np
import pytest

from elemtri.instances import instance_rng, random_lower_triangular


@pytest.fixture
def A2():
    return np.array([[1.0, 0.0], [2.0, 3.0]])


@pytest.fixture
def lower8():
    return random_lower_triangular(8, instance_rng(42))


def unit(n, i, j):
    M = np.zeros((n, n))
    M[i, j] = 1.0
    return M


# acceptance lines are collected here and printed after the run
ACCEPTANCE = []
SUITE_BUDGET_S = 60.0
_clock = {}


def record(criterion, ok, detail):
    ACCEPTANCE.append((criterion, bool(ok), detail))


def pytest_sessionstart(session):
    import time

    _clock["start"] = time.perf_counter()


def _suite_elapsed():
    import time

    return time.perf_counter() - _clock.get("start", time.perf_counter())


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
    elapsed = _suite_elapsed()
    ok = elapsed < SUITE_BUDGET_S
    terminalreporter.write_line(
        f"[{'PASS' if ok else 'FAIL'}] 9b full suite wall clock: {elapsed:.1f} s (budget {SUITE_BUDGET_S:.0f} s)"
    )


def pytest_sessionfinish(session, exitstatus):
    if ACCEPTANCE and _suite_elapsed() >= SUITE_BUDGET_S and exitstatus == 0:
        session.exitstatus = 1
