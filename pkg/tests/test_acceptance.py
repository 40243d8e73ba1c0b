"""One test per acceptance criterion; each prints a PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines.
"""
from __future__ import annotations

import subprocess
import sys
import time

import pytest

from afsym.acceptance import CHECKS


@pytest.mark.parametrize("num, name, check", CHECKS, ids=[f"criterion_{n}" for n, _, _ in CHECKS])
def test_criterion(num, name, check):
    ok, detail = check()
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {name} ({detail})")
    assert ok, detail


def test_criterion_11_selftest():
    t0 = time.perf_counter()
    res = subprocess.run([sys.executable, "-m", "afsym", "selftest"], capture_output=True, text=True, check=False)
    dt = time.perf_counter() - t0
    lines = [l for l in res.stdout.splitlines() if l.startswith("[")]
    ok = res.returncode == 0 and len(lines) == 11 and all(l.startswith("[PASS]") for l in lines) and dt < 60
    print(f"[{'PASS' if ok else 'FAIL'}] criterion 11: full selftest in {dt:.2f}s")
    assert ok, res.stdout + res.stderr
