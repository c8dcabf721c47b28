"""Acceptance criteria 1-8 at their stated tolerances (all exact).

Each test records a verdict; ``conftest.py`` prints one PASS/FAIL line per
criterion at the end of the session.  Running this file directly prints the
same lines without pytest.
"""

import io
import subprocess
import sys

import pytest

from jantzen.checks import (
    suite_convention,
    suite_kl,
    suite_pairing,
    suite_sl2,
    suite_strictness,
    suite_sum,
    suite_whittaker,
)
from jantzen.cli import run_command

RESULTS: dict[int, tuple[str, bool, str]] = {}

CRITERIA = {
    1: ("sl2 closed form", suite_sl2),
    2: ("sum formula and determinant valuation", suite_sum),
    3: ("strictness of Verma embeddings", suite_strictness),
    4: ("KL layer multiplicities", suite_kl),
    5: ("Whittaker degenerations", suite_whittaker),
    6: ("pairing contravariance and uniqueness", suite_pairing),
    7: ("convention independence", suite_convention),
}


def _record(n: int, title: str, ok: bool, detail: str):
    RESULTS[n] = (title, ok, detail)


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    title, suite = CRITERIA[n]
    results = suite()
    failed = [r for r in results if not r.passed]
    _record(n, title, not failed, f"{len(results) - len(failed)}/{len(results)} checks")
    assert not failed, [f"{r.name}: {r.detail}" for r in failed]


def _check_all() -> tuple[int, str]:
    out = io.StringIO()
    code = run_command(["check", "--suite", "all"], out, io.StringIO())
    return code, out.getvalue()


def _check_all_subprocess() -> tuple[int, str]:
    proc = subprocess.run([sys.executable, "-m", "jantzen.cli", "check", "--suite", "all"],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout


def test_criterion_8_determinism():
    # one run in this process, one in a fresh interpreter with cold caches
    code1, a = _check_all()
    code2, b = _check_all_subprocess()
    ok = code1 == code2 == 0 and a == b
    _record(8, "determinism of full check runs", ok, f"{len(a)} bytes, exit {code1}/{code2}")
    assert code1 == 0 and code2 == 0
    assert a.encode() == b.encode()


def summary_lines() -> list[str]:
    lines = []
    for n in range(1, 9):
        if n in RESULTS:
            title, ok, detail = RESULTS[n]
            lines.append(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title} ({detail})")
        else:
            lines.append(f"criterion {n}: NOT RUN")
    return lines


if __name__ == "__main__":
    for n, (title, suite) in CRITERIA.items():
        res = suite()
        _record(n, title, all(r.passed for r in res), f"{sum(r.passed for r in res)}/{len(res)} checks")
    c1, a = _check_all()
    c2, b = _check_all_subprocess()
    _record(8, "determinism of full check runs", c1 == c2 == 0 and a == b, f"{len(a)} bytes")
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for _, ok, _ in RESULTS.values()) else 1)
