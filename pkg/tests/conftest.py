import time

import pytest

# filled by tests/test_acceptance.py: (criterion number, label, passed, detail, companion)
ACCEPTANCE_LINES = []
_SESSION = {}


def pytest_sessionstart(session):
    _SESSION["start"] = time.perf_counter()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    by_num = {}
    for rec in ACCEPTANCE_LINES:
        by_num.setdefault(rec[0], []).append(rec)
    for num in sorted(by_num):
        recs = by_num[num]
        main = [r for r in recs if not r[4]]
        verdict = "PASS" if main and all(r[2] for r in main) else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {num:>2}: {main[0][1] if main else recs[0][1]}")
        for _, label, passed, detail, companion in recs:
            tag = "companion" if companion else ("ok" if passed else "failed")
            terminalreporter.write_line(f"      {tag}: {label} :: {detail}")
    elapsed = time.perf_counter() - _SESSION.get("start", time.perf_counter())
    terminalreporter.write_line(f"whole session wall time {elapsed:.1f} s (budget 600 s)")


@pytest.fixture
def acceptance():
    def record(num, label, passed, detail="", companion=False):
        ACCEPTANCE_LINES.append((num, label, bool(passed), detail, companion))
        print(f"[{'PASS' if passed else 'FAIL'}] criterion {num}: {label} :: {detail}")
        return passed

    return record
