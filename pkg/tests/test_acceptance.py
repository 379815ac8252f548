"""Acceptance criteria 1-12; prints one PASS/FAIL line per criterion."""

import pytest

from operadic.acceptance import CRITERIA, format_line, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, detail = run_criterion(number)
    with capsys.disabled():
        print("\n" + format_line(number, ok, detail))
    assert ok, detail
