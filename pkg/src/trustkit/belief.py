"""Bayesian evolution of the ensemble weights.

Three observation kinds drive updates: watching the agent act (scored by a
noisy-rational likelihood on cost regret), receiving an explanation that
rules candidate models out, and seeing the task succeed or fail outright.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .engine import Contract, LikelihoodKernel, ModelEnsemble, cached_optimal_plan, kernel_probability
from .errors import ContradictionError, ValidationError
from .planning import PlanningModel, evaluate_trace


@dataclass(frozen=True)
class BehaviorObservation:
    """The agent was seen executing a concrete action sequence."""

    trace: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.trace:
            raise ValidationError("behavior trace must be nonempty")


@dataclass(frozen=True)
class ExplanationObservation:
    """Information that eliminates candidate models outright."""

    eliminate: frozenset[str]

    def __post_init__(self) -> None:
        if not self.eliminate:
            raise ValidationError("explanation must eliminate at least one model")


@dataclass(frozen=True)
class OutcomeObservation:
    """The task ended; success is judged against a contract."""

    success: bool
    contract: Contract


Observation = Union[BehaviorObservation, ExplanationObservation, OutcomeObservation]


@dataclass(frozen=True)
class RationalityParams:
    """Temperature of the noisy-rational behavior likelihood."""

    alpha: float = 1.0

    def __post_init__(self) -> None:
        if not self.alpha > 0:
            raise ValidationError("alpha must be positive")


def observation_likelihood(
    model: PlanningModel,
    obs: Observation,
    params: RationalityParams,
    kernel: LikelihoodKernel,
) -> float:
    """Likelihood of the observation if ``model`` were the agent's true model.

    Behavior traces that are infeasible or miss the goal in the model score
    zero; feasible ones decay exponentially in cost regret relative to the
    model's own optimum.  Explanations are hard 0/1 eliminations.
    """
    if isinstance(obs, BehaviorObservation):
        evaluation = evaluate_trace(model, obs.trace)
        if not evaluation.executable or not evaluation.achieves_goal:
            return 0.0
        optimal = cached_optimal_plan(model).cost
        return math.exp(-params.alpha * (evaluation.cost - optimal))
    if isinstance(obs, ExplanationObservation):
        return 0.0 if model.id in obs.eliminate else 1.0
    if isinstance(obs, OutcomeObservation):
        p = kernel_probability(kernel, cached_optimal_plan(model), obs.contract)
        return p if obs.success else 1.0 - p
    raise ValidationError(f"unknown observation type {type(obs).__name__}")


def posterior_update(
    ensemble: ModelEnsemble,
    obs: Observation,
    params: RationalityParams,
    kernel: LikelihoodKernel,
) -> ModelEnsemble:
    """Reweight the ensemble by the observation likelihoods and renormalize.

    Raises ContradictionError when every model has zero likelihood; the
    caller decides whether to reset or widen the ensemble.
    """
    if isinstance(obs, ExplanationObservation):
        known = set(ensemble.ids())
        unknown = obs.eliminate - known
        if unknown:
            raise ValidationError(f"explanation eliminates unknown model ids {sorted(unknown)}")
    raw = tuple(
        w * observation_likelihood(model, obs, params, kernel)
        for model, w in zip(ensemble.models, ensemble.weights)
    )
    z = math.fsum(raw)
    if z == 0.0:
        raise ContradictionError("observation is inconsistent with every candidate model")
    return ModelEnsemble(ensemble.models, tuple(r / z for r in raw))
