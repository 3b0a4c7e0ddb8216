"""Acceptance criteria 1-11, one line of output per criterion.

Run with ``pytest tests/test_acceptance.py -v -s``; the per-criterion
PASS/FAIL lines are also printed without ``-s``.
"""
import warnings

import pytest

from oscprop import acceptance

CRITERIA = range(1, 12)
CASES = acceptance.cases()


@pytest.fixture(scope="module")
def results():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return {r.case: r for r in acceptance.run_all()}


def _param(c):
    marks = [pytest.mark.xfail(strict=True, reason=c.note)] if c.expected_fail else []
    return pytest.param(c.__name__, id=f"c{c.criterion:02d}-{c.__name__}", marks=marks)


@pytest.mark.parametrize("name", [_param(c) for c in CASES])
def test_case(name, results):
    r = results[name]
    assert r.passed, f"{r.case}: metric {r.metric:.3g} vs tolerance {r.tolerance:.3g}"


def _criterion_param(n):
    # a criterion containing a known-unattainable bound stays red
    known = [c.__name__ for c in CASES if c.criterion == n and c.expected_fail]
    marks = ([pytest.mark.xfail(strict=True, reason="unattainable: " + ", ".join(known))]
             if known else [])
    return pytest.param(n, id=f"criterion{n:02d}", marks=marks)


@pytest.mark.parametrize("criterion", [_criterion_param(n) for n in CRITERIA])
def test_criterion(criterion, results, capsys):
    mine = [r for r in results.values() if r.criterion == criterion]
    assert mine, f"criterion {criterion} has no cases"
    bad = [r for r in mine if not r.passed]
    known = [r for r in bad if r.expected_fail]
    tag = "FAIL" if bad else "PASS"
    extra = f" ({len(known)} known-unattainable)" if known else ""
    with capsys.disabled():
        print(f"\ncriterion {criterion:2d}: {tag} [{len(mine) - len(bad)}/{len(mine)} "
              f"cases within tolerance]{extra}")
        for r in mine:
            state = "pass" if r.passed else ("xfail" if r.expected_fail else "FAIL")
            print(f"    {state:5s} {r.case}: {r.metric:.3g} (tol {r.tolerance:.3g})")
    assert not bad, ", ".join(r.case for r in bad)
