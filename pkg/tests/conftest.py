import time

import acceptance_log
from hypothesis import settings

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

SUITE_BUDGET = 60.0
_start = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - _start
    # criterion 9 only means something when the whole suite ran
    if session.testscollected >= 100:
        acceptance_log.record(9, elapsed < SUITE_BUDGET,
                              f"full suite {elapsed:.1f} s (limit {SUITE_BUDGET:.0f} s)")
        if elapsed >= SUITE_BUDGET and exitstatus == 0:
            session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance_log.RESULTS):
        passed, detail = acceptance_log.RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
