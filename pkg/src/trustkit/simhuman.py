"""Synthetic Bayesian supervisors for replaying the belief-update study.

A simulated human owns an ensemble over candidate agent models, a personal
likelihood temperature, a contract they expect the agent to meet, and a
seeded noise stream for self-reported trust on a 0-10 slider.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .belief import Observation, RationalityParams, posterior_update
from .engine import (
    Contract,
    IDENTITY_MEASURE,
    LikelihoodKernel,
    ModelEnsemble,
    TrustMeasureConfig,
    contract_probability,
)
from .errors import ValidationError
from .reliance import RelianceDecision, UtilityProfile, reliance_decision

REPORT_SCALE = 10.0


@dataclass(frozen=True)
class TrustReport:
    """One self-report on the 0-10 scale, tagged with its step index."""

    value: float
    p_contract: float
    index: int


@dataclass(frozen=True)
class SimulatedHuman:
    """Bayesian supervisor with personal kernel temperature and report noise.

    The contract is the human's own: in the theory they form it from their
    task expectations, so it travels with them rather than with the agent.
    """

    ensemble: ModelEnsemble
    contract: Contract
    kernel: LikelihoodKernel
    rationality: RationalityParams = RationalityParams()
    measure: TrustMeasureConfig = IDENTITY_MEASURE
    report_noise_sigma: float = 0.0
    utilities: UtilityProfile = UtilityProfile(u_success=1.0, u_failure=-1.0, c_reject=0.0)
    rng_seed: int = 0
    history_len: int = 0

    def __post_init__(self) -> None:
        if self.report_noise_sigma < 0:
            raise ValidationError("report_noise_sigma must be nonnegative")
        if self.rng_seed < 0:
            raise ValidationError("rng_seed must be a nonnegative integer")


def _report_noise(human: SimulatedHuman) -> float:
    if human.report_noise_sigma == 0.0:
        return 0.0
    # Counter-based stream: the draw depends only on (seed, history length),
    # so a report is reproducible for any replayed history.
    rng = np.random.default_rng([human.rng_seed, human.history_len])
    return float(rng.normal(0.0, human.report_noise_sigma))


def report_trust(human: SimulatedHuman) -> TrustReport:
    """Scaled, clamped, noise-perturbed self-report of the trust measure."""
    assessment = contract_probability(human.ensemble, human.contract, human.kernel, human.measure)
    raw = REPORT_SCALE * assessment.trust + _report_noise(human)
    value = min(REPORT_SCALE, max(0.0, raw))
    return TrustReport(value=value, p_contract=assessment.p_contract, index=human.history_len)


def step(human: SimulatedHuman, stimulus: Observation) -> tuple[SimulatedHuman, RelianceDecision, TrustReport]:
    """Update beliefs with one stimulus; returns (new human, decision, report).

    The input human is left untouched; contradictions propagate to the caller.
    """
    ensemble = posterior_update(human.ensemble, stimulus, human.rationality, human.kernel)
    updated = dataclasses.replace(human, ensemble=ensemble, history_len=human.history_len + 1)
    assessment = contract_probability(updated.ensemble, updated.contract, updated.kernel, updated.measure)
    decision = reliance_decision(assessment.p_contract, updated.utilities)
    return updated, decision, report_trust(updated)


@dataclass(frozen=True)
class CohortConfig:
    """Population heterogeneity around a base supervisor.

    Kernel temperatures are log-normal; priors are Dirichlet perturbations
    of the base weights (concentration kappa, zero weights stay zero).
    """

    base: SimulatedHuman
    n: int
    beta_log_mu: float
    beta_log_sigma: float = 0.0
    prior_kappa: float = 1e6
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError("cohort size must be at least 1")
        if self.beta_log_sigma < 0:
            raise ValidationError("beta_log_sigma must be nonnegative")
        if not self.prior_kappa > 0:
            raise ValidationError("prior_kappa must be positive")
        if self.noise_sigma < 0:
            raise ValidationError("noise_sigma must be nonnegative")
        if self.base.kernel.variant == "hard_threshold":
            raise ValidationError("cohort sampling varies beta; base kernel must carry one")


def sample_cohort(config: CohortConfig) -> list[SimulatedHuman]:
    """Draw a reproducible cohort of supervisors from the config's seed."""
    rng = np.random.default_rng(config.seed)
    member_seeds = np.random.SeedSequence(config.seed).generate_state(config.n)
    base = config.base
    support = [i for i, w in enumerate(base.ensemble.weights) if w > 0.0]
    alpha = np.array([config.prior_kappa * base.ensemble.weights[i] for i in support])
    humans: list[SimulatedHuman] = []
    for k in range(config.n):
        beta = float(rng.lognormal(mean=config.beta_log_mu, sigma=config.beta_log_sigma))
        drawn = rng.dirichlet(alpha)
        weights = [0.0] * len(base.ensemble.weights)
        for pos, i in enumerate(support):
            weights[i] = float(drawn[pos])
        humans.append(
            dataclasses.replace(
                base,
                ensemble=ModelEnsemble(base.ensemble.models, tuple(weights)),
                kernel=LikelihoodKernel(base.kernel.variant, beta),
                report_noise_sigma=config.noise_sigma,
                rng_seed=int(member_seeds[k]),
                history_len=0,
            )
        )
    return humans
