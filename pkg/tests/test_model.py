import random

import pytest
from hypothesis import given, strategies as st

from talentflow.model import (
    DateMonth,
    InvalidLabelError,
    JobKey,
    months_between,
    normalize_label,
)
from helpers import dm, profile, job


date_months = st.builds(
    DateMonth, year=st.integers(1950, 2050), month=st.integers(1, 12)
)


def test_months_between_examples():
    assert months_between(dm("2015-06"), dm("2016-06")) == 12
    assert months_between(dm("2016-03"), dm("2016-03")) == 0
    assert months_between(dm("2016-06"), dm("2015-06")) == -12


def test_subtraction_operator():
    assert dm("2016-06") - dm("2015-06") == 12


@given(date_months, date_months, date_months)
def test_months_between_additive(a, b, c):
    assert months_between(a, b) + months_between(b, c) == months_between(a, c)


@given(date_months, date_months)
def test_months_between_antisymmetric(a, b):
    assert months_between(a, b) == -months_between(b, a)


def test_date_ordering():
    assert dm("2015-12") < dm("2016-01") < dm("2016-02")


def test_date_parse_rejects_garbage():
    for bad in ["2016", "2016-00", "2016-13", "16-06", "2016/06"]:
        with pytest.raises(ValueError):
            dm(bad)


def test_normalize_label_examples():
    assert normalize_label("  Software   Engineer ") == "software engineer"
    assert normalize_label("CEO") == "ceo"
    with pytest.raises(InvalidLabelError):
        normalize_label("   ")


@given(st.text(max_size=40))
def test_normalize_label_idempotent(raw):
    try:
        once = normalize_label(raw)
    except InvalidLabelError:
        return
    assert normalize_label(once) == once


def test_normalize_is_ascii_only_folding():
    # Non-ASCII case is left alone; no locale surprises.
    assert normalize_label("İstanbul Ofis") == "İstanbul ofis"


def test_is_active_definition():
    assert profile(skills=("a",), education=1).is_active
    assert not profile(skills=(), education=1).is_active
    assert not profile(skills=("a",), education=0).is_active


def test_is_active_stable_under_permutation():
    rng = random.Random(5)
    jobs = [job("a", "x", "i", "2010-01", "2011-01"), job("b", "y", "i", "2011-01", "2012-01")]
    p1 = profile(jobs=jobs, skills=("s1", "s2"))
    for _ in range(5):
        rng.shuffle(jobs)
        p2 = profile(jobs=jobs, skills=("s2", "s1"))
        assert p1.is_active == p2.is_active


def test_job_key_accessors():
    j = job("engineer", "acme", "tech", "2010-01", "2012-01")
    assert j.key == JobKey("engineer", "tech")
    assert j.org_key.organization == "acme"


def test_open_end_resolution():
    j = job("engineer", "acme", "tech", "2010-01")
    assert j.end is None
    assert j.end_or(dm("2016-06")) == dm("2016-06")
    assert j.has_valid_period(dm("2016-06"))
    assert not j.has_valid_period(dm("2009-12"))
