"""The nine acceptance criteria at their stated sizes, one test each.

Each test prints a single ``[PASS]``/``[FAIL]`` line; the lines are also
collected and repeated in the terminal summary. Run directly with
``python3 tests/test_acceptance.py`` for the lines alone.
"""

from __future__ import annotations

import time

import pytest

from outer1color import sweep

CRITERIA = {
    1: lambda: sweep.classification_equivalence(max_n=8),
    2: lambda: sweep.structure_sweep(max_n=9, min_n=4),
    3: lambda: sweep.base_graph_uniqueness(max_n=8),
    4: lambda: sweep.h_forcing(t_max=4),
    5: lambda: sweep.p_generation(count=200, max_ops=8, max_n=12),
    6: lambda: sweep.extension_soundness(count=1000, seed=0),
    7: lambda: sweep.cubic_corollary(max_n=8),
    8: lambda: sweep.vizing_bound(count=500, seed=0),
    9: lambda: sweep.high_degree(count=100, seed=0),
}

RESULTS: dict = {}


def evaluate(number: int) -> sweep.CriterionResult:
    t0 = time.perf_counter()
    res = CRITERIA[number]()
    res.seconds = time.perf_counter() - t0
    return res


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    res = evaluate(number)
    line = f"{res.line()} ({res.seconds:.1f}s)"
    RESULTS[number] = line
    print(line)
    assert res.passed, line


def test_criterion_details():
    """Spot checks on the reported numbers, beyond pass/fail."""
    r3 = sweep.base_graph_uniqueness(max_n=8)
    assert r3.details["n0"] == 5 and len(r3.details["found"]) == 1
    assert "Δ = 4" in r3.details["k5_minus_2e"]
    r7 = sweep.cubic_corollary(max_n=8)
    assert len(r7.details["rows"]) >= 2
    r9 = sweep.high_degree(count=20, seed=1)
    assert not r9.details["bad"] and 0.0 <= r9.details["witness_rate"] <= 1.0


if __name__ == "__main__":
    failed = 0
    for number in sorted(CRITERIA):
        res = evaluate(number)
        failed += not res.passed
        print(f"{res.line()} ({res.seconds:.1f}s)", flush=True)
    raise SystemExit(1 if failed else 0)
