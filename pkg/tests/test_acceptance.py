"""The twelve acceptance criteria, one test each.

Run ``pytest tests/test_acceptance.py -v`` (a PASS/FAIL line per criterion is
printed in the terminal summary) or ``python tests/test_acceptance.py``.
"""

import sys

import pytest

from voltembed import reproduce

RESULTS: dict[int, reproduce.Check] = {}


def _kwargs(check):
    if check.key in (1, 2, 10, 12):
        return {"seed": reproduce.DEFAULT_SEED}
    return {}


@pytest.mark.parametrize("check", reproduce.CHECKS, ids=[f"criterion_{c.key:02d}" for c in reproduce.CHECKS])
def test_criterion(check):
    res = check(**_kwargs(check))
    RESULTS[res.key] = res
    print(res.line())
    for note in res.notes:
        print("    " + note)
    assert res.passed, res.line()


if __name__ == "__main__":
    results = reproduce.run_all(echo=print)
    sys.exit(0 if all(r.passed for r in results) else 1)
