"""The eleven acceptance criteria, each at its stated time limit.

Run with ``pytest -s tests/test_acceptance.py`` to see one PASS/FAIL line
per criterion.
"""

import pytest

from colimkit import acceptance

# filled in as criteria run; printed by the terminal summary hook in conftest
RESULTS = []


@pytest.mark.parametrize("number", range(1, 12))
def test_criterion(number):
    res = acceptance.CRITERIA[number - 1]()
    RESULTS.append(res)
    print("\n" + res.line())
    assert res.passed, res.detail
    assert res.within_time, f"took {res.elapsed:.1f}s, limit {res.limit}s"
