"""Seeded synthetic workforce generator.

Produces an ingestion-schema corpus plus a ground-truth sidecar, so that
pipeline outputs can be checked against the probabilities that actually
drove generation. One pseudo-random stream keyed by the seed and a fixed
user order make the output byte-identical across runs.

Each simulated user graduates, takes a junior job, and then hops: at the
end of every closed stint the external-hop probability is looked up in a
work-experience-binned propensity curve, and the promotion bias decides
whether the next job sits one rung higher or lower on its industry's title
ladder. The sidecar records, per work-experience bin, the external/internal
hop counts as drawn (only for active users, which is what the pipeline
analyzes), the realized promotion/demotion counts per hop kind, and the
title ladders that define true seniority.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from math import log
from pathlib import Path
from typing import Mapping

from .model import DateMonth

DEFAULT_CATALOG: dict[str, tuple[str, ...]] = {
    "information technology": (
        "intern",
        "software engineer",
        "senior software engineer",
        "engineering manager",
        "vice president of engineering",
        "ceo",
    ),
    "banking": (
        "intern",
        "analyst",
        "associate",
        "vice president",
        "director",
        "managing director",
    ),
    "financial services": (
        "intern",
        "financial analyst",
        "portfolio associate",
        "portfolio manager",
        "head of research",
        "chief investment officer",
    ),
    "higher education": (
        "teaching assistant",
        "research assistant",
        "lecturer",
        "assistant professor",
        "associate professor",
        "professor",
    ),
    "management consulting": (
        "intern",
        "junior consultant",
        "consultant",
        "senior consultant",
        "principal",
        "partner",
    ),
}


class ValidationError(ValueError):
    """A generator spec field is out of range; carries the field name."""

    def __init__(self, field_name: str, message: str):
        self.field_name = field_name
        super().__init__(f"{field_name}: {message}")


@dataclass(frozen=True)
class GeneratorSpec:
    seed: int = 7
    n_users: int = 1000
    active_rate: float = 1.0
    curr_date: DateMonth = DateMonth(2016, 6)
    bin_width_years: int = 5
    # External-hop probability per work-experience bin; the last entry
    # repeats for older cohorts.
    hop_propensity: tuple[float, ...] = (0.9, 0.75, 0.6, 0.45, 0.3, 0.2)
    promotion_bias: float = 0.7
    industry_switch_prob: float = 0.2
    stay_median_months: float = 18.0
    stay_log_sigma: float = 0.6
    max_jobs: int = 10
    orgs_per_industry: int = 8
    max_career_years: int = 30
    skill_pool_size: int = 60
    max_skills: int = 30
    titles_per_industry: Mapping[str, tuple[str, ...]] = field(
        default_factory=lambda: dict(DEFAULT_CATALOG)
    )

    def __post_init__(self) -> None:
        if self.n_users < 0:
            raise ValidationError("n_users", "must be >= 0")
        for name in ("active_rate", "promotion_bias", "industry_switch_prob"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValidationError(name, f"must lie in [0, 1], got {value}")
        if not self.hop_propensity:
            raise ValidationError("hop_propensity", "must have at least one bin")
        for p in self.hop_propensity:
            if not 0.0 <= p <= 1.0:
                raise ValidationError("hop_propensity", f"probabilities must lie in [0, 1], got {p}")
        if self.bin_width_years < 1:
            raise ValidationError("bin_width_years", "must be >= 1")
        if self.stay_median_months <= 0:
            raise ValidationError("stay_median_months", "must be positive")
        if self.stay_log_sigma < 0:
            raise ValidationError("stay_log_sigma", "must be >= 0")
        if self.max_jobs < 1:
            raise ValidationError("max_jobs", "must be >= 1")
        if self.orgs_per_industry < 2:
            raise ValidationError("orgs_per_industry", "need >= 2 orgs for external hops")
        if self.max_career_years < 1:
            raise ValidationError("max_career_years", "must be >= 1")
        if self.skill_pool_size < self.max_skills:
            raise ValidationError("skill_pool_size", "must be >= max_skills")
        if self.max_skills < 1:
            raise ValidationError("max_skills", "must be >= 1")
        if not self.titles_per_industry:
            raise ValidationError("titles_per_industry", "need at least one industry")
        lengths = {len(ladder) for ladder in self.titles_per_industry.values()}
        if len(lengths) != 1 or min(lengths) < 2:
            raise ValidationError(
                "titles_per_industry",
                "every industry needs the same ladder length, >= 2 titles",
            )

    @classmethod
    def from_json(cls, path: str | Path) -> "GeneratorSpec":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise ValidationError("spec", "expected a JSON object")
        known = {
            "seed", "n_users", "active_rate", "curr_date", "bin_width_years",
            "hop_propensity", "promotion_bias", "industry_switch_prob",
            "stay_median_months", "stay_log_sigma", "max_jobs",
            "orgs_per_industry", "max_career_years", "skill_pool_size",
            "max_skills", "titles_per_industry",
        }
        for key in raw:
            if key not in known:
                raise ValidationError(key, "unknown field")
        kwargs = dict(raw)
        if "curr_date" in kwargs:
            try:
                kwargs["curr_date"] = DateMonth.parse(kwargs["curr_date"])
            except (TypeError, ValueError) as exc:
                raise ValidationError("curr_date", str(exc)) from exc
        if "hop_propensity" in kwargs:
            kwargs["hop_propensity"] = tuple(kwargs["hop_propensity"])
        if "titles_per_industry" in kwargs:
            kwargs["titles_per_industry"] = {
                ind: tuple(titles) for ind, titles in kwargs["titles_per_industry"].items()
            }
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ValidationError("spec", str(exc)) from exc


@dataclass
class GenerationResult:
    n_users: int
    n_active: int
    n_hops: int
    corpus_path: Path
    truth_path: Path


def _to_months(d: DateMonth) -> int:
    return d.year * 12 + (d.month - 1)


def _month_str(total: int) -> str:
    return f"{total // 12:04d}-{total % 12 + 1:02d}"


class _TruthAccumulator:
    def __init__(self, spec: GeneratorSpec):
        self.spec = spec
        self.bin_counts: dict[int, list[int]] = {}  # bin -> [external, internal]
        self.promotions = {
            "external": {"promotions": 0, "demotions": 0},
            "internal": {"promotions": 0, "demotions": 0},
        }

    def record(self, wk_exp_bin: int, external: bool, promoted: bool) -> None:
        cell = self.bin_counts.setdefault(wk_exp_bin, [0, 0])
        cell[0 if external else 1] += 1
        kind = "external" if external else "internal"
        self.promotions[kind]["promotions" if promoted else "demotions"] += 1

    def to_dict(self) -> dict:
        spec = self.spec
        last = len(spec.hop_propensity) - 1
        bins = []
        for k in sorted(self.bin_counts):
            ext, internal = self.bin_counts[k]
            total = ext + internal
            bins.append(
                {
                    "lower_years": k * spec.bin_width_years,
                    "upper_years": (k + 1) * spec.bin_width_years,
                    "expected_external_fraction": spec.hop_propensity[min(k, last)],
                    "external_hops": ext,
                    "internal_hops": internal,
                    "realized_external_fraction": ext / total if total else None,
                }
            )
        return {
            "seed": spec.seed,
            "n_users": spec.n_users,
            "curr_date": str(spec.curr_date),
            "bin_width_years": spec.bin_width_years,
            "hop_propensity": list(spec.hop_propensity),
            "promotion_bias": spec.promotion_bias,
            "work_exp_bins": bins,
            "promotions": self.promotions,
            "job_ladders": {
                ind: list(titles) for ind, titles in spec.titles_per_industry.items()
            },
        }


@dataclass(frozen=True)
class _World:
    """Catalog structures shared by every simulated user."""

    industries: tuple[str, ...]
    orgs: dict[str, list[str]]
    skill_pool: tuple[str, ...]
    curr_m: int

    @classmethod
    def build(cls, spec: GeneratorSpec) -> "_World":
        industries = tuple(spec.titles_per_industry)
        return cls(
            industries=industries,
            orgs={
                ind: [f"{ind} org {k}" for k in range(1, spec.orgs_per_industry + 1)]
                for ind in industries
            },
            skill_pool=tuple(f"skill {i:02d}" for i in range(spec.skill_pool_size)),
            curr_m=_to_months(spec.curr_date),
        )


def _simulate_user(
    rng: random.Random,
    spec: GeneratorSpec,
    world: _World,
    user_id: str,
    truth: _TruthAccumulator,
) -> tuple[dict, int]:
    """One user's profile record; returns (record, hop count)."""
    industries = world.industries
    orgs = world.orgs
    curr_m = world.curr_m

    active = rng.random() < spec.active_rate
    if active:
        education = rng.randint(1, 3)
        n_skills = rng.randint(3, spec.max_skills)
    elif rng.random() < 0.5:
        education = 0
        n_skills = rng.randint(3, spec.max_skills)
    else:
        education = rng.randint(1, 3)
        n_skills = 0
    skills = rng.sample(world.skill_pool, n_skills)

    # Young-skewed graduation offset, 1..max_career_years years back.
    span = spec.max_career_years * 12 - 12
    grad_m = curr_m - (12 + int(span * rng.random() ** 1.5))

    industry = rng.choice(industries)
    ladder = spec.titles_per_industry[industry]
    stratum = rng.choice((0, 0, 1))
    org = rng.choice(orgs[industry])
    start_m = grad_m + rng.randint(0, 6)

    mu = log(spec.stay_median_months)
    jobs: list[dict] = []
    n_hops = 0
    while True:
        stay = max(1, round(rng.lognormvariate(mu, spec.stay_log_sigma)))
        end_m = start_m + stay
        job = {
            "title": ladder[stratum],
            "organization": org,
            "industry": industry,
            "start": _month_str(start_m),
            "end": None if end_m >= curr_m else _month_str(end_m),
        }
        jobs.append(job)
        if job["end"] is None or len(jobs) == spec.max_jobs:
            break
        next_start = end_m + rng.choice((0, 0, 1, 2))
        if next_start > curr_m:
            break

        wk_exp_bin = (end_m - grad_m) // (12 * spec.bin_width_years)
        last = len(spec.hop_propensity) - 1
        external = rng.random() < spec.hop_propensity[min(wk_exp_bin, last)]
        promoted = rng.random() < spec.promotion_bias
        delta = 1 if promoted else -1
        if not 0 <= stratum + delta < len(ladder):
            delta = -delta
        new_stratum = stratum + delta

        if external:
            if len(industries) > 1 and rng.random() < spec.industry_switch_prob:
                industry = rng.choice([i for i in industries if i != industry])
                ladder = spec.titles_per_industry[industry]
                org = rng.choice(orgs[industry])
            else:
                org = rng.choice([o for o in orgs[industry] if o != org])

        if active:
            truth.record(wk_exp_bin, external, new_stratum > stratum)
        stratum = new_stratum
        start_m = next_start
        n_hops += 1

    record = {
        "user_id": user_id,
        "grad_date": _month_str(grad_m),
        "education_count": education,
        "skills": skills,
        "jobs": jobs,
    }
    return record, (n_hops if active else 0)


def generate(
    spec: GeneratorSpec, corpus_path: str | Path, truth_path: str | Path
) -> GenerationResult:
    """Write the corpus JSONL and truth sidecar; byte-identical per seed."""
    rng = random.Random(spec.seed)
    truth = _TruthAccumulator(spec)
    world = _World.build(spec)
    corpus_path = Path(corpus_path)
    truth_path = Path(truth_path)

    n_active = 0
    n_hops = 0
    with open(corpus_path, "w", encoding="utf-8", newline="") as fh:
        for i in range(spec.n_users):
            record, hops = _simulate_user(rng, spec, world, f"u{i:06d}", truth)
            if record["education_count"] >= 1 and record["skills"]:
                n_active += 1
            n_hops += hops
            fh.write(json.dumps(record, sort_keys=True, separators=(",", ":")))
            fh.write("\n")

    with open(truth_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(json.dumps(truth.to_dict(), sort_keys=True, indent=2))
        fh.write("\n")

    return GenerationResult(
        n_users=spec.n_users,
        n_active=n_active,
        n_hops=n_hops,
        corpus_path=corpus_path,
        truth_path=truth_path,
    )
