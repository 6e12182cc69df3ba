"""Contract-satisfaction likelihoods and the trust measure.

A supervisor's trust in the agent is carried by an ensemble of candidate
task models with a probability weight per model.  Each model contributes a
contract-satisfaction likelihood derived from its optimal plan cost; the
ensemble-weighted sum is the supervisor's overall probability that the
contract holds, and trust is a monotone transform of that probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import planning
from .errors import ContractDerivationError, ValidationError
from .planning import PlanningModel, PlanResult

WEIGHT_SUM_TOL = 1e-9

# Ensembles are re-scored after every belief update; plan costs per model are
# memoized on the (hashable, immutable) model value itself, so identical ids
# from different scenarios cannot collide.
cached_optimal_plan = lru_cache(maxsize=None)(planning.optimal_plan)


@dataclass(frozen=True)
class ModelEnsemble:
    """Candidate models the supervisor entertains, with normalized weights."""

    models: tuple[PlanningModel, ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.models:
            raise ValidationError("ensemble must contain at least one model")
        if len(self.models) != len(self.weights):
            raise ValidationError("ensemble weights must match models in length")
        ids = [m.id for m in self.models]
        if len(set(ids)) != len(ids):
            raise ValidationError("ensemble model ids must be unique")
        for w in self.weights:
            if not (w >= 0.0 and math.isfinite(w)):
                raise ValidationError(f"ensemble weight {w!r} is not a finite nonnegative number")
        total = math.fsum(self.weights)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValidationError(f"ensemble weights sum to {total!r}, expected 1 within {WEIGHT_SUM_TOL}")

    def ids(self) -> tuple[str, ...]:
        return tuple(m.id for m in self.models)

    def weight_of(self, model_id: str) -> float:
        for model, weight in zip(self.models, self.weights):
            if model.id == model_id:
                return weight
        raise KeyError(model_id)


def uniform_ensemble(models) -> ModelEnsemble:
    models = tuple(models)
    return ModelEnsemble(models, tuple(1.0 / len(models) for _ in models))


@dataclass(frozen=True)
class Contract:
    """A performance guarantee: reach the goal within a cost bound."""

    goal: frozenset[str]
    cost_bound: float

    def __post_init__(self) -> None:
        if not self.cost_bound > 0:
            raise ValidationError("contract cost bound must be positive")


@dataclass(frozen=True)
class LikelihoodKernel:
    """Maps an optimal plan cost to a contract-satisfaction probability.

    Variants: exponential decay in cost ("boltzmann", the default), a sharp
    pass/fail at the bound ("hard_threshold"), and a logistic rolloff around
    the bound ("soft_threshold").
    """

    variant: str
    beta: float | None = None

    def __post_init__(self) -> None:
        if self.variant not in ("boltzmann", "hard_threshold", "soft_threshold"):
            raise ValidationError(f"unknown kernel variant {self.variant!r}")
        if self.variant in ("boltzmann", "soft_threshold"):
            if self.beta is None or not self.beta > 0:
                raise ValidationError(f"kernel {self.variant!r} requires beta > 0")
        elif self.beta is not None:
            raise ValidationError("hard_threshold kernel takes no beta")


def boltzmann(beta: float) -> LikelihoodKernel:
    return LikelihoodKernel("boltzmann", float(beta))


def hard_threshold() -> LikelihoodKernel:
    return LikelihoodKernel("hard_threshold")


def soft_threshold(beta: float) -> LikelihoodKernel:
    return LikelihoodKernel("soft_threshold", float(beta))


@dataclass(frozen=True)
class TrustMeasureConfig:
    """Strictly increasing transform applied to the contract probability."""

    transform: str = "identity"  # identity | affine | power
    a: float = 1.0
    b: float = 0.0
    gamma: float = 1.0

    def __post_init__(self) -> None:
        if self.transform not in ("identity", "affine", "power"):
            raise ValidationError(f"unknown trust transform {self.transform!r}")
        if self.transform == "affine" and not self.a > 0:
            raise ValidationError("affine transform requires a > 0")
        if self.transform == "power" and not self.gamma > 0:
            raise ValidationError("power transform requires gamma > 0")


IDENTITY_MEASURE = TrustMeasureConfig()


@dataclass(frozen=True)
class TrustAssessment:
    """Per-model likelihoods, their weighted sum, and the trust value."""

    p_contract: float
    trust: float
    per_model: tuple[float, ...]


def kernel_probability(kernel: LikelihoodKernel, plan_result: PlanResult, contract: Contract) -> float:
    """Probability one model satisfies the contract, from its optimal cost."""
    if not plan_result.solvable or plan_result.cost == math.inf:
        return 0.0
    cost = plan_result.cost
    if kernel.variant == "boltzmann":
        return math.exp(-kernel.beta * cost)
    if kernel.variant == "hard_threshold":
        return 1.0 if cost <= contract.cost_bound else 0.0
    # soft_threshold: logistic in (cost - bound), numerically clamped
    if contract.cost_bound == math.inf:
        return 1.0
    x = kernel.beta * (cost - contract.cost_bound)
    if x > 700.0:
        return 0.0
    return 1.0 / (1.0 + math.exp(x))


def trust_measure(p: float, config: TrustMeasureConfig = IDENTITY_MEASURE) -> float:
    """Apply the configured monotone transform to a probability."""
    if not (0.0 <= p <= 1.0):
        raise ValidationError(f"probability {p!r} outside [0, 1]")
    if config.transform == "identity":
        return p
    if config.transform == "affine":
        return config.a * p + config.b
    return p ** config.gamma


def contract_probability(
    ensemble: ModelEnsemble,
    contract: Contract,
    kernel: LikelihoodKernel,
    measure: TrustMeasureConfig = IDENTITY_MEASURE,
) -> TrustAssessment:
    """Score every model and take the ensemble-weighted contract probability."""
    per_model = tuple(
        kernel_probability(kernel, cached_optimal_plan(model), contract) for model in ensemble.models
    )
    p = math.fsum(w * k for w, k in zip(ensemble.weights, per_model))
    # A convex combination stays inside the per-model range; clamp out
    # any last-ulp drift from the summation.
    p = min(max(per_model), max(min(per_model), p))
    return TrustAssessment(p, trust_measure(p, measure), per_model)


def derive_contract(task_model: PlanningModel, slack: float = 0.0) -> Contract:
    """Contract anchored on the supervisor's own task model: same goal, cost
    bound (1 + slack) times that model's optimal cost."""
    if slack < 0:
        raise ValidationError("slack must be nonnegative")
    result = cached_optimal_plan(task_model)
    if not result.solvable:
        raise ContractDerivationError(
            f"task model {task_model.id!r} is unsolvable; no feasibility expectation to anchor a bound"
        )
    return Contract(goal=task_model.goal, cost_bound=(1.0 + slack) * result.cost)
