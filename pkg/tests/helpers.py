"""Shared builders for tests: terse profile/job construction and random corpora."""

from __future__ import annotations

import random

from talentflow.model import AnalysisConfig, DateMonth, JobRecord, UserProfile


def dm(text: str) -> DateMonth:
    return DateMonth.parse(text)


def job(title, org, industry, start, end=None) -> JobRecord:
    return JobRecord(
        title=title,
        organization=org,
        industry=industry,
        start=dm(start),
        end=dm(end) if end is not None else None,
    )


def profile(user_id="u1", grad=None, skills=("python",), education=1, jobs=()) -> UserProfile:
    return UserProfile(
        user_id=user_id,
        grad_date=dm(grad) if grad is not None else None,
        skills=frozenset(skills),
        education_entries=education,
        jobs=tuple(jobs),
    )


def config(curr="2016-06", **kwargs) -> AnalysisConfig:
    return AnalysisConfig(curr_date=dm(curr), **kwargs)


TITLES = ["analyst", "engineer", "manager", "lead", "director"]
ORGS = ["acme", "globex", "initech", "umbrella"]
INDUSTRY_OF = {"acme": "fin", "globex": "fin", "initech": "tech", "umbrella": "tech"}

_BASE_MONTH = 2000 * 12


def _month(total: int) -> DateMonth:
    return DateMonth(total // 12, total % 12 + 1)


def random_job(rng: random.Random, allow_open=True, allow_invalid=True) -> JobRecord:
    org = rng.choice(ORGS)
    start = _BASE_MONTH + rng.randrange(0, 15 * 12)
    if allow_invalid and rng.random() < 0.05:
        end_m = start - rng.randrange(1, 12)  # start > end, data noise
        end = _month(end_m)
    elif allow_open and rng.random() < 0.15:
        end = None
    else:
        end = _month(start + rng.randrange(0, 60))
    return JobRecord(
        title=rng.choice(TITLES),
        organization=org,
        industry=INDUSTRY_OF[org],
        start=_month(start),
        end=end,
    )


def random_profile(rng: random.Random, user_id: str, max_jobs=6, **job_kw) -> UserProfile:
    n = rng.randrange(0, max_jobs + 1)
    grad = _month(_BASE_MONTH - rng.randrange(0, 10 * 12)) if rng.random() < 0.8 else None
    return UserProfile(
        user_id=user_id,
        grad_date=grad,
        skills=frozenset(rng.sample(["python", "sql", "excel", "go"], rng.randint(1, 3))),
        education_entries=rng.randint(1, 2),
        jobs=tuple(random_job(rng, **job_kw) for _ in range(n)),
    )
