"""Positive/negative belief-update experiments over simulated cohorts.

Each subject reports trust, receives their group's elimination messages,
and reports again; group deltas feed the three hypothesis tests (between
groups, within positive, within negative).  All randomness derives from the
study seed, so the emitted CSV is byte-identical across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .belief import ExplanationObservation
from .engine import cached_optimal_plan
from .errors import ContradictionError, DegenerateTestError, ValidationError
from .simhuman import CohortConfig, SimulatedHuman, report_trust, sample_cohort, step
from .stats import TestResult, paired_t, welch_t

CSV_HEADER = "subject_id,group,trust_before,trust_after,delta,p_before,p_after"

POSITIVE = "positive"
NEGATIVE = "negative"


@dataclass(frozen=True)
class StudyConfig:
    """Cohort shape plus the per-group elimination message sequences."""

    base: SimulatedHuman
    positive_messages: tuple[ExplanationObservation, ...]
    negative_messages: tuple[ExplanationObservation, ...]
    n_per_group: int = 21
    beta_log_mu: float | None = None  # default: log of the base kernel's beta
    beta_log_sigma: float = 0.25
    prior_kappa: float = 50.0
    noise_sigma: float = 0.0
    seed: int = 0
    out_path: str | None = None

    def __post_init__(self) -> None:
        if self.n_per_group < 1:
            raise ValidationError("n_per_group must be at least 1")

    def resolved_beta_log_mu(self) -> float:
        if self.beta_log_mu is not None:
            return self.beta_log_mu
        return math.log(self.base.kernel.beta)


@dataclass(frozen=True)
class SubjectRecord:
    subject_id: str
    group: str
    trust_before: float
    trust_after: float
    delta: float
    p_before: float
    p_after: float


@dataclass(frozen=True)
class StudySummary:
    n_per_group: int
    positive_increases: int
    negative_decreases: int
    h1_between_groups: TestResult | None
    h2_positive_increase: TestResult | None
    h3_negative_decrease: TestResult | None
    notes: tuple[str, ...]


def _achieving_ids(base: SimulatedHuman) -> set[str]:
    """Models that can actually meet the contract (deterministic reading)."""
    bound = base.contract.cost_bound
    return {
        m.id
        for m in base.ensemble.models
        if cached_optimal_plan(m).solvable and cached_optimal_plan(m).cost <= bound
    }


def validate_study_config(config: StudyConfig) -> None:
    """Check the group-message invariants before running anything.

    After every positive message at least one contract-achieving model must
    survive; the negative sequence must end with all of them eliminated
    (and some model still standing).
    """
    base = config.base
    all_ids = set(base.ensemble.ids())
    achievers = _achieving_ids(base)
    if not achievers:
        raise ValidationError("no candidate model achieves the contract; study groups are undefined")

    for label, messages in ((POSITIVE, config.positive_messages), (NEGATIVE, config.negative_messages)):
        remaining = set(all_ids)
        for index, message in enumerate(messages):
            unknown = message.eliminate - all_ids
            if unknown:
                raise ValidationError(f"{label} message {index} eliminates unknown ids {sorted(unknown)}")
            remaining -= message.eliminate
            if not remaining:
                raise ValidationError(f"{label} message {index} eliminates every model")
            if label == POSITIVE and not (remaining & achievers):
                raise ValidationError(
                    f"positive message {index} leaves no contract-achieving model"
                )
        if label == NEGATIVE and messages and remaining & achievers:
            raise ValidationError("negative messages must eliminate every contract-achieving model")


def default_messages(
    base: SimulatedHuman,
) -> tuple[tuple[ExplanationObservation, ...], tuple[ExplanationObservation, ...]]:
    """Canonical message sets: positive messages drop the non-achieving
    models one by one; the negative message drops every achiever at once."""
    achievers = _achieving_ids(base)
    ids = base.ensemble.ids()
    positive = tuple(
        ExplanationObservation(frozenset({mid})) for mid in ids if mid not in achievers
    )
    negative: tuple[ExplanationObservation, ...] = ()
    if achievers and set(ids) - achievers:
        negative = (ExplanationObservation(frozenset(achievers)),)
    return positive, negative


def _run_group(config: StudyConfig, group: str, seed: int) -> list[SubjectRecord]:
    messages = config.positive_messages if group == POSITIVE else config.negative_messages
    cohort = sample_cohort(
        CohortConfig(
            base=config.base,
            n=config.n_per_group,
            beta_log_mu=config.resolved_beta_log_mu(),
            beta_log_sigma=config.beta_log_sigma,
            prior_kappa=config.prior_kappa,
            noise_sigma=config.noise_sigma,
            seed=seed,
        )
    )
    records = []
    prefix = "P" if group == POSITIVE else "N"
    for number, human in enumerate(cohort, start=1):
        subject_id = f"{prefix}{number:02d}"
        before = report_trust(human)
        after = before
        for index, message in enumerate(messages):
            try:
                human, _, after = step(human, message)
            except ContradictionError as exc:
                raise ContradictionError(
                    f"subject {subject_id}: message {index} contradicts the whole ensemble"
                ) from exc
        trust_before = _canon(before.value)
        trust_after = _canon(after.value)
        records.append(
            SubjectRecord(
                subject_id=subject_id,
                group=group,
                trust_before=trust_before,
                trust_after=trust_after,
                delta=trust_after - trust_before,
                p_before=_canon(before.p_contract),
                p_after=_canon(after.p_contract),
            )
        )
    return records


def _canon(x: float) -> float:
    """Canonical 6-fractional-digit value, matching the CSV schema exactly."""
    return float(f"{x:.6f}")


def run_study(config: StudyConfig) -> tuple[list[SubjectRecord], StudySummary]:
    """Run both groups, write the CSV artifact if configured, test H1-H3."""
    validate_study_config(config)
    group_seeds = np.random.SeedSequence(config.seed).generate_state(2)
    records = _run_group(config, POSITIVE, int(group_seeds[0]))
    records += _run_group(config, NEGATIVE, int(group_seeds[1]))

    positive = [r for r in records if r.group == POSITIVE]
    negative = [r for r in records if r.group == NEGATIVE]
    notes: list[str] = []

    def attempt(label: str, fn):
        try:
            return fn()
        except DegenerateTestError as exc:
            notes.append(f"{label} not applicable: {exc}")
            return None

    h1 = attempt(
        "H1",
        lambda: welch_t([r.delta for r in positive], [r.delta for r in negative]),
    )
    h2 = attempt(
        "H2",
        lambda: paired_t(
            [r.trust_before for r in positive], [r.trust_after for r in positive], direction="greater"
        ),
    )
    h3 = attempt(
        "H3",
        lambda: paired_t(
            [r.trust_before for r in negative], [r.trust_after for r in negative], direction="less"
        ),
    )
    summary = StudySummary(
        n_per_group=config.n_per_group,
        positive_increases=sum(1 for r in positive if r.delta > 0),
        negative_decreases=sum(1 for r in negative if r.delta < 0),
        h1_between_groups=h1,
        h2_positive_increase=h2,
        h3_negative_decrease=h3,
        notes=tuple(notes),
    )
    if config.out_path:
        write_records_csv(records, config.out_path)
    return records, summary


def write_records_csv(records, path) -> None:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.subject_id},{r.group},{r.trust_before:.6f},{r.trust_after:.6f},"
            f"{r.delta:.6f},{r.p_before:.6f},{r.p_after:.6f}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


def read_records_csv(path) -> list[SubjectRecord]:
    """Inverse of write_records_csv; reconstructs records exactly.

    The delta column is redundant (it re-derives from the trust columns);
    the reader recomputes it so round-tripped records keep the invariant
    delta == trust_after - trust_before bit-for-bit.
    """
    text = Path(path).read_text()
    lines = [line for line in text.split("\n") if line]
    if not lines or lines[0] != CSV_HEADER:
        raise ValidationError(f"unexpected CSV header in {path}")
    records = []
    for line in lines[1:]:
        subject_id, group, before, after, delta, p_before, p_after = line.split(",")
        trust_before, trust_after = float(before), float(after)
        recomputed = trust_after - trust_before
        if abs(recomputed - float(delta)) > 5e-7:
            raise ValidationError(f"delta column inconsistent for subject {subject_id}")
        records.append(
            SubjectRecord(
                subject_id=subject_id,
                group=group,
                trust_before=trust_before,
                trust_after=trust_after,
                delta=recomputed,
                p_before=float(p_before),
                p_after=float(p_after),
            )
        )
    return records
