"""The nine acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import pytest

from rosewindow import verification


@pytest.mark.parametrize("index", range(1, 10), ids=lambda i: f"criterion_{i}")
def test_criterion(index, capsys):
    result = getattr(verification, f"criterion_{index}")()
    with capsys.disabled():
        print(f"\n[criterion {index}] {result.line()}")
        for f in result.failures[:5]:
            print(f"    counterexample: {f}")
    assert result.passed, result.detail
