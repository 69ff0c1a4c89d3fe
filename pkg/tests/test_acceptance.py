"""Acceptance criteria 1-13 at their stated tolerances.

Each test prints one PASS/FAIL line. Criterion 6 reports INCONCLUSIVE
rather than failing if the bounded search finds no graph.
"""

import pytest

from canontree.verify import CHECKS, run_check


@pytest.mark.parametrize("number", sorted(CHECKS))
def test_criterion(number, capsys):
    result = run_check(number)
    with capsys.disabled():
        print("\n" + result.line())
        for message in result.failures:
            print("    " + message)
    assert result.status != "fail", result.failures
    assert result.checked > 0
