import re
import time

ACCEPTANCE = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")
SUITE_BUDGET_SECONDS = 60.0

_started = time.perf_counter()


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    verdicts: dict[int, list[bool]] = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            m = ACCEPTANCE.search(getattr(report, "nodeid", ""))
            if m and (report.when == "call" or outcome == "error"):
                verdicts.setdefault(int(m.group(1)), []).append(outcome == "passed")
    if not verdicts:
        return
    elapsed = time.perf_counter() - _started
    terminalreporter.section("acceptance criteria")
    for number in sorted(verdicts):
        ok = all(verdicts[number])
        terminalreporter.write_line(f"Criterion {number}: {'PASS' if ok else 'FAIL'}")
    within = elapsed < SUITE_BUDGET_SECONDS
    terminalreporter.write_line(
        f"Suite runtime: {'PASS' if within else 'FAIL'} ({elapsed:.1f}s, budget {SUITE_BUDGET_SECONDS:.0f}s)"
    )


def pytest_sessionfinish(session, exitstatus):
    ran_acceptance = any(ACCEPTANCE.search(item.nodeid) for item in session.items)
    full_run = ran_acceptance and len(session.items) > 100
    if full_run and exitstatus == 0 and time.perf_counter() - _started >= SUITE_BUDGET_SECONDS:
        session.exitstatus = 1
