"""Acceptance gate: each criterion at its stated tolerance, one PASS/FAIL line apiece."""

import pytest

from moufang import acceptance


@pytest.mark.parametrize("check", acceptance.CHECKS, ids=lambda f: f"{acceptance.CHECKS.index(f) + 1:02d}-{f.__name__}")
def test_criterion(check, capsys):
    result = check()
    with capsys.disabled():
        print(f"\n{result.line()}")
    assert result.passed, result.line()
