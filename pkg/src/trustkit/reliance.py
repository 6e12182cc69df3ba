"""Reliance decisions, ground truth, calibration, and explanation selection.

The supervisor accepts the agent's decision when the expected value of
accepting beats the fixed penalty of turning it down.  Calibration compares
the supervisor's contract probability against the probability computed from
the agent's actual model; explanation selection greedily closes that gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence, Union

from .belief import ExplanationObservation, RationalityParams, posterior_update
from .engine import (
    Contract,
    LikelihoodKernel,
    ModelEnsemble,
    cached_optimal_plan,
    contract_probability,
    kernel_probability,
)
from .errors import ContradictionError, ValidationError
from .planning import PlanningModel

DEFAULT_EPSILON = 0.05


@dataclass(frozen=True)
class UtilityProfile:
    """Payoffs for the accept/reject choice."""

    u_success: float
    u_failure: float
    c_reject: float = 0.0

    def __post_init__(self) -> None:
        if not self.u_success > self.u_failure:
            raise ValidationError("u_success must exceed u_failure")
        if self.c_reject < 0:
            raise ValidationError("c_reject must be nonnegative")

    @property
    def threshold(self) -> float:
        """Indifference probability: accept exactly above this value."""
        t = (-self.c_reject - self.u_failure) / (self.u_success - self.u_failure)
        return min(1.0, max(0.0, t))


@dataclass(frozen=True)
class RelianceDecision:
    v_accept: float
    v_reject: float
    decision: str  # "accept" | "reject"
    threshold: float


@dataclass(frozen=True)
class CalibrationReport:
    p_human: float
    p_true: float
    gap: float
    classification: str  # "overtrust" | "undertrust" | "calibrated"
    epsilon: float


def reliance_decision(p_contract: float, utilities: UtilityProfile) -> RelianceDecision:
    """Expected-value comparison; ties go to reject (conservative supervisor)."""
    if not (0.0 <= p_contract <= 1.0):
        raise ValidationError(f"p_contract {p_contract!r} outside [0, 1]")
    v_accept = p_contract * utilities.u_success + (1.0 - p_contract) * utilities.u_failure
    v_reject = -utilities.c_reject
    decision = "accept" if v_accept > v_reject else "reject"
    return RelianceDecision(v_accept, v_reject, decision, utilities.threshold)


GroundTruthSemantics = Union[LikelihoodKernel, Literal["indicator"]]


def ground_truth_probability(
    true_model: PlanningModel,
    contract: Contract,
    semantics: GroundTruthSemantics,
) -> float:
    """Probability the agent actually satisfies the contract.

    "indicator" treats execution as deterministic: 1 exactly when the
    optimal cost is within the bound.  A kernel applies the same likelihood
    family the supervisor uses.
    """
    result = cached_optimal_plan(true_model)
    if semantics == "indicator":
        return 1.0 if result.solvable and result.cost <= contract.cost_bound else 0.0
    if isinstance(semantics, LikelihoodKernel):
        return kernel_probability(semantics, result, contract)
    raise ValidationError(f"unknown ground-truth semantics {semantics!r}")


def calibration_report(p_human: float, p_true: float, epsilon: float = DEFAULT_EPSILON) -> CalibrationReport:
    """Classify the trust gap as overtrust, undertrust, or calibrated."""
    for name, p in (("p_human", p_human), ("p_true", p_true)):
        if not (0.0 <= p <= 1.0):
            raise ValidationError(f"{name} {p!r} outside [0, 1]")
    if epsilon < 0:
        raise ValidationError("epsilon must be nonnegative")
    gap = p_human - p_true
    if gap > epsilon:
        classification = "overtrust"
    elif gap < -epsilon:
        classification = "undertrust"
    else:
        classification = "calibrated"
    return CalibrationReport(p_human, p_true, gap, classification, epsilon)


def select_explanation(
    ensemble: ModelEnsemble,
    candidates: Sequence[ExplanationObservation],
    contract: Contract,
    kernel: LikelihoodKernel,
    p_true: float,
    epsilon: float = DEFAULT_EPSILON,
    params: RationalityParams = RationalityParams(),
) -> tuple[int | None, CalibrationReport]:
    """Greedy one-step pick of the explanation that best closes the trust gap.

    Candidates that contradict the whole ensemble are skipped; if no
    candidate strictly shrinks |gap|, returns (None, status-quo report).
    Ties break toward the lowest candidate index.
    """
    if not candidates:
        raise ValidationError("candidate list must be nonempty")
    status_quo = contract_probability(ensemble, contract, kernel)
    current = calibration_report(status_quo.p_contract, p_true, epsilon)
    best_index: int | None = None
    best_report = current
    for index, candidate in enumerate(candidates):
        try:
            posterior = posterior_update(ensemble, candidate, params, kernel)
        except ContradictionError:
            continue
        projected = contract_probability(posterior, contract, kernel)
        report = calibration_report(projected.p_contract, p_true, epsilon)
        if abs(report.gap) < abs(best_report.gap):
            best_index = index
            best_report = report
    if best_index is None:
        return None, current
    return best_index, best_report
