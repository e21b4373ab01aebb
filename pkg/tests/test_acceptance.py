"""Acceptance criteria 1-8, each reporting a single PASS/FAIL line."""
import random
import subprocess
import sys
import time

import pytest

from ltlab import selftest

SEED = 42


def report(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\n[acceptance] criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.mark.parametrize("number", range(1, 8))
def test_criterion(number, capsys):
    fn = selftest.CRITERIA[number - 1]
    rep = fn(random.Random(f"{SEED}:{number}"))
    report(capsys, number, rep["pass"], f"{rep['name']} ({rep['seconds']}s)")
    assert rep["pass"], rep["failures"]


def test_criterion_8_end_to_end(capsys):
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "ltlab", "selftest", "--seed", "42"],
                          capture_output=True, text=True, timeout=300)
    elapsed = time.perf_counter() - t0
    ok = proc.returncode == 0 and elapsed < 300
    report(capsys, 8, ok, f"selftest --seed 42 exit {proc.returncode} in {elapsed:.1f}s")
    assert proc.returncode == 0, proc.stdout[-2000:] + proc.stderr[-2000:]
    assert elapsed < 300
