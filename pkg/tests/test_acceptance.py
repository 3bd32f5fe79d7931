"""Acceptance gate: every criterion runs at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL
line per criterion; the same suite backs ``xorland verify``.
"""
import pytest

from xorland.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    result = run_criterion(number)
    status = "PASS" if result.passed else "FAIL"
    print(f"\n[{status}] criterion {result.number}: {result.title} "
          f"({result.elapsed:.1f}s) — {result.details}")
    assert result.passed, f"criterion {result.number} failed: {result.details}"
