"""Acceptance criteria 1-13, one test per criterion.

Each test prints a ``criterion N: PASS|FAIL`` line; the lines are also
collected and repeated in the terminal summary (see conftest.py).
"""

import pytest

from clusterk0.verify import DEFAULT_SEED, run_check

CRITERIA = {
    "1": ["1"],
    "2": ["2"],
    "3": ["3"],
    "4": ["4"],
    "5": ["5"],
    "6": ["6"],
    "7": ["7"],
    "8": ["8"],
    "9": ["9"],
    "10": ["10"],
    "11": ["11-dynkin", "11-tube"],
    "12": ["12"],
    "13": ["13"],
}

RESULTS: list[str] = []


@pytest.mark.parametrize("criterion", list(CRITERIA), ids=[f"criterion_{c}" for c in CRITERIA])
def test_criterion(criterion):
    results = [run_check(key, DEFAULT_SEED) for key in CRITERIA[criterion]]
    ok = all(r.passed for r in results)
    detail = "; ".join(f"{r.name}: {r.detail}" for r in results)
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} ({detail})"
    RESULTS.append(line)
    print(line)
    assert ok, detail


def test_sample_sizes_meet_minimums():
    assert "500 random quivers" in run_check("3").detail
    assert "200 random quivers" in run_check("4").detail
    assert "272 weight sequences" in run_check("6").detail
    assert "400 pairs" in run_check("13").detail
