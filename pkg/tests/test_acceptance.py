"""The seven acceptance criteria, one test each, with a pass/fail line per criterion."""

import pytest

import conftest
from adlvkit import suite

TIME_LIMITS = {1: 60.0, 2: 120.0, 5: 60.0}


def _report(res):
    line = res.line()
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)
    for f in res.failures[:10]:
        print("   ", f)
    return res


def _check(res):
    assert res.passed, res.failures[:10]
    limit = TIME_LIMITS.get(res.number)
    if limit is not None:
        assert res.seconds < limit, f"took {res.seconds:.1f}s, limit {limit}s"


@pytest.mark.slow
def test_criterion_1_class_counts_match_crystal():
    _check(_report(suite.criterion_1()))


@pytest.mark.slow
def test_criterion_2_superbasic_table():
    _check(_report(suite.criterion_2()))


@pytest.mark.slow
def test_criterion_3_top_dimension():
    _check(_report(suite.criterion_3()))


@pytest.mark.slow
def test_criterion_4_minimal_levi_uniqueness():
    _check(_report(suite.criterion_4()))


@pytest.mark.slow
def test_criterion_5_crystal_sizes():
    _check(_report(suite.criterion_5()))


@pytest.mark.slow
def test_criterion_6_column_split_recursion():
    _check(_report(suite.criterion_6()))


@pytest.mark.slow
def test_criterion_7_randomised_invariants():
    _check(_report(suite.criterion_7()))
