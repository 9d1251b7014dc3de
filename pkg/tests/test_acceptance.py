"""Acceptance run: every criterion through the command-line entry point.

Each criterion is its own test and prints one PASS/FAIL line; informational
comparisons are printed underneath but never decide the outcome.
"""
import json
import subprocess
import sys
import time

import pytest

FULL_BUDGET = 30 * 60
BUDGETS = {"pure-c2": 60, "frenkel-kac": 5 * 60}
CRITERIA = list(range(1, 14))


def _verify(suite):
    start = time.monotonic()
    proc = subprocess.run([sys.executable, "-m", "agtlab", "verify", "--suite", suite],
                          capture_output=True, check=False)
    elapsed = time.monotonic() - start
    assert proc.returncode in (0, 1), proc.stderr.decode()
    return proc.stdout, elapsed


@pytest.fixture(scope="module")
def full_runs():
    first, t1 = _verify("all")
    second, t2 = _verify("all")
    return first, second, t1, t2


@pytest.fixture(scope="module")
def reports(full_runs):
    doc = json.loads(full_runs[0])
    return {r["criterion"]: r for r in doc["result"]["suites"]}


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion-{c:02d}")
def test_criterion(criterion, reports, acceptance_log):
    rep = reports[criterion]
    verdict = "PASS" if rep["pass"] else "FAIL"
    line = f"criterion {criterion:2d} {verdict}  {rep['suite']}: {rep['title']}"
    acceptance_log.append(line)
    print(line)
    for chk in rep["checks"]:
        sub = f"    {'PASS' if chk['pass'] else 'FAIL'}  {chk['name']}"
        acceptance_log.append(sub)
        print(sub)
    for info in rep["informational"]:
        sub = f"    info {'PASS' if info['pass'] else 'FAIL'}  {info['name']}"
        acceptance_log.append(sub)
        print(sub)
    failed = [c["name"] for c in rep["checks"] if not c["pass"]]
    assert rep["pass"], f"failing checks: {failed}"


def test_full_run_is_byte_identical(full_runs, acceptance_log):
    first, second, _, _ = full_runs
    same = first == second
    acceptance_log.append(f"repeat run byte-identical: {'PASS' if same else 'FAIL'}")
    assert same


def test_full_run_within_budget(full_runs, acceptance_log):
    _, _, t1, t2 = full_runs
    acceptance_log.append(f"full verify wall time: {t1:.1f} s and {t2:.1f} s (budget {FULL_BUDGET} s)")
    assert max(t1, t2) <= FULL_BUDGET


@pytest.mark.parametrize("suite", sorted(BUDGETS))
def test_suite_within_budget(suite, acceptance_log):
    _, elapsed = _verify(suite)
    ok = elapsed <= BUDGETS[suite]
    acceptance_log.append(f"{suite} wall time: {elapsed:.1f} s (budget {BUDGETS[suite]} s): {'PASS' if ok else 'FAIL'}")
    assert ok
