"""Grounded STRIPS-style task models and optimal-plan search.

Candidate agent models are deterministic, sequential planning problems over
ground atoms: an action is applicable when its preconditions are a subset of
the current state, and applying it removes its delete set and adds its add
set.  Optimal plan cost is found by uniform-cost search; ties between
equal-cost plans are broken lexicographically so results are reproducible.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from .errors import ResourceExhaustedError, ValidationError

INF = math.inf

# Ceiling on distinct states the search may visit before giving up.
DEFAULT_STATE_CAP = 1_000_000


@dataclass(frozen=True)
class Action:
    """A ground action with strictly positive cost."""

    name: str
    preconditions: frozenset[str]
    add: frozenset[str]
    delete: frozenset[str]
    cost: float

    def __post_init__(self) -> None:
        if not self.name:
            raise ValidationError("action name must be nonempty")
        if not (isinstance(self.cost, (int, float)) and math.isfinite(self.cost) and self.cost > 0):
            raise ValidationError(f"action {self.name!r}: cost must be a strictly positive finite number")
        overlap = self.add & self.delete
        if overlap:
            raise ValidationError(f"action {self.name!r}: add and delete sets overlap on {sorted(overlap)}")


def make_action(name: str, pre=(), add=(), delete=(), cost: float = 1.0) -> Action:
    """Convenience constructor accepting any iterables of atoms."""
    return Action(name, frozenset(pre), frozenset(add), frozenset(delete), float(cost))


@dataclass(frozen=True)
class PlanningModel:
    """One candidate task model: declared atoms, initial state, goal, actions."""

    id: str
    facts: frozenset[str]
    init: frozenset[str]
    goal: frozenset[str]
    actions: tuple[Action, ...]

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("model id must be nonempty")
        for atom in self.init:
            if atom not in self.facts:
                raise ValidationError(f"model {self.id!r}: init atom {atom!r} is not declared in facts")
        for atom in self.goal:
            if atom not in self.facts:
                raise ValidationError(f"model {self.id!r}: goal atom {atom!r} is not declared in facts")
        seen: set[str] = set()
        for action in self.actions:
            if action.name in seen:
                raise ValidationError(f"model {self.id!r}: duplicate action name {action.name!r}")
            seen.add(action.name)
            for atom in action.preconditions | action.add | action.delete:
                if atom not in self.facts:
                    raise ValidationError(
                        f"model {self.id!r}: action {action.name!r} references undeclared atom {atom!r}"
                    )

    def action_map(self) -> dict[str, Action]:
        return {a.name: a for a in self.actions}


def make_model(id: str, facts, init, goal, actions) -> PlanningModel:
    """Convenience constructor accepting any iterables."""
    return PlanningModel(id, frozenset(facts), frozenset(init), frozenset(goal), tuple(actions))


@dataclass(frozen=True)
class PlanResult:
    """Outcome of optimal-plan search: minimal cost, or unsolvable with cost inf."""

    status: str  # "solvable" | "unsolvable"
    cost: float
    plan: tuple[str, ...]

    @property
    def solvable(self) -> bool:
        return self.status == "solvable"


@dataclass(frozen=True)
class TraceEvaluation:
    """Result of simulating a fixed action sequence in a model."""

    executable: bool
    cost: float
    achieves_goal: bool


def _apply(state: frozenset[str], action: Action) -> frozenset[str]:
    return (state - action.delete) | action.add


def optimal_plan(model: PlanningModel, state_cap: int = DEFAULT_STATE_CAP) -> PlanResult:
    """Uniform-cost search for a minimum-cost plan from init to the goal.

    Returns an unsolvable result (cost inf, empty plan) when the goal is
    unreachable in the model's state space.  Raises ResourceExhaustedError
    if more than ``state_cap`` distinct states are settled.
    """
    init = model.init
    goal = model.goal
    if goal <= init:
        return PlanResult("solvable", 0.0, ())

    actions = sorted(model.actions, key=lambda a: a.name)
    # Heap entries ordered by (cost, plan); lexicographic plan order breaks ties.
    frontier: list[tuple[float, tuple[str, ...], frozenset[str]]] = [(0.0, (), init)]
    best: dict[frozenset[str], float] = {init: 0.0}
    settled: set[frozenset[str]] = set()

    while frontier:
        cost, plan, state = heapq.heappop(frontier)
        if state in settled:
            continue
        settled.add(state)
        if len(settled) > state_cap:
            raise ResourceExhaustedError(
                f"model {model.id!r}: search exceeded the state cap of {state_cap} states"
            )
        if goal <= state:
            return PlanResult("solvable", cost, plan)
        for action in actions:
            if action.preconditions <= state:
                nxt = _apply(state, action)
                if nxt in settled:
                    continue
                ncost = cost + action.cost
                known = best.get(nxt)
                if known is None or ncost < known:
                    best[nxt] = ncost
                    heapq.heappush(frontier, (ncost, plan + (action.name,), nxt))
                elif ncost == known:
                    # Equal-cost rediscovery: keep both, heap order picks the
                    # lexicographically smaller plan first.
                    heapq.heappush(frontier, (ncost, plan + (action.name,), nxt))

    return PlanResult("unsolvable", INF, ())


def evaluate_trace(model: PlanningModel, trace) -> TraceEvaluation:
    """Simulate a sequence of action names from the model's initial state.

    Unknown action names and precondition failures make the trace
    non-executable (cost inf) rather than raising.
    """
    lookup = model.action_map()
    state = model.init
    total = 0.0
    for name in trace:
        action = lookup.get(name)
        if action is None or not (action.preconditions <= state):
            return TraceEvaluation(False, INF, False)
        state = _apply(state, action)
        total += action.cost
    return TraceEvaluation(True, total, model.goal <= state)
