"""Shared fixtures and independent oracles used across the test suite.

The oracles here deliberately avoid the library's own search/update code:
plan costs come from Bellman-style value iteration over the full reachable
state graph, posteriors from a direct prior*likelihood/Z loop.
"""

from __future__ import annotations

import math
import random

from trustkit.planning import Action, PlanningModel, make_action, make_model

INF = math.inf

COFFEE_FACTS = [
    "robot-at-kitchen",
    "robot-at-office",
    "cup-on-low-shelf",
    "coffee-on-top-shelf",
    "coffee-in-office",
    "has-cup",
    "has-coffee",
    "grabber-ready",
    "coffee-made",
]
COFFEE_INIT = ["robot-at-kitchen", "cup-on-low-shelf", "coffee-on-top-shelf", "coffee-in-office"]
COFFEE_GOAL = ["coffee-made"]

_BASE_ACTIONS = [
    make_action("grab-cup", pre=["robot-at-kitchen", "cup-on-low-shelf"], add=["has-cup"], delete=["cup-on-low-shelf"], cost=1),
    make_action("brew-coffee", pre=["robot-at-kitchen", "has-cup", "has-coffee"], add=["coffee-made"], cost=2),
]
_REACH = make_action("reach-top-shelf", pre=["robot-at-kitchen", "coffee-on-top-shelf"], add=["has-coffee"], delete=["coffee-on-top-shelf"], cost=2)
_DEPLOY = make_action("deploy-grabber", pre=["robot-at-kitchen"], add=["grabber-ready"], cost=3)
_DEVICE = make_action("grab-with-device", pre=["robot-at-kitchen", "grabber-ready", "coffee-on-top-shelf"], add=["has-coffee"], delete=["coffee-on-top-shelf"], cost=2)
_WALK_OUT = make_action("walk-to-office", pre=["robot-at-kitchen"], add=["robot-at-office"], delete=["robot-at-kitchen"], cost=4)
_FETCH = make_action("fetch-office-coffee", pre=["robot-at-office", "coffee-in-office"], add=["has-coffee"], delete=["coffee-in-office"], cost=1)
_WALK_BACK = make_action("walk-to-kitchen", pre=["robot-at-office"], add=["robot-at-kitchen"], delete=["robot-at-office"], cost=4)


def coffee_model(model_id: str, extra_actions=()) -> PlanningModel:
    return make_model(model_id, COFFEE_FACTS, COFFEE_INIT, COFFEE_GOAL, list(_BASE_ACTIONS) + list(extra_actions))


def coffee_models() -> dict[str, PlanningModel]:
    """The four candidate coffee models: costs 5, inf, 8, 12."""
    return {
        "M1": coffee_model("M1", [_REACH]),
        "M2": coffee_model("M2"),
        "M3": coffee_model("M3", [_DEPLOY, _DEVICE]),
        "M4": coffee_model("M4", [_WALK_OUT, _FETCH, _WALK_BACK]),
    }


def coffee_task_model() -> PlanningModel:
    """The supervisor's own task expectation: same capabilities as M1."""
    return coffee_model("task", [_REACH])


def oracle_optimal_cost(model: PlanningModel) -> float:
    """Brute-force optimal cost: enumerate all reachable states, then relax
    edge costs to a fixpoint (Bellman iteration, no priority queue)."""
    states = {model.init}
    frontier = [model.init]
    while frontier:
        state = frontier.pop()
        for action in model.actions:
            if action.preconditions <= state:
                nxt = (state - action.delete) | action.add
                if nxt not in states:
                    states.add(nxt)
                    frontier.append(nxt)

    dist = {s: INF for s in states}
    dist[model.init] = 0.0
    changed = True
    while changed:
        changed = False
        for state in states:
            if dist[state] == INF:
                continue
            for action in model.actions:
                if action.preconditions <= state:
                    nxt = (state - action.delete) | action.add
                    cand = dist[state] + action.cost
                    if cand < dist[nxt]:
                        dist[nxt] = cand
                        changed = True

    best = INF
    for state, d in dist.items():
        if model.goal <= state and d < best:
            best = d
    return best


def oracle_trace_cost(model: PlanningModel, trace) -> tuple[bool, float, bool]:
    """Independent trace walk: (executable, cost, achieves_goal)."""
    lookup = {a.name: a for a in model.actions}
    state = set(model.init)
    cost = 0.0
    for name in trace:
        if name not in lookup:
            return False, INF, False
        action = lookup[name]
        if not set(action.preconditions) <= state:
            return False, INF, False
        state -= set(action.delete)
        state |= set(action.add)
        cost += action.cost
    return True, cost, set(model.goal) <= state


def random_model(rng: random.Random, max_facts: int = 12, max_actions: int = 10) -> PlanningModel:
    """Seeded random model with integer costs (keeps oracle comparisons exact)."""
    n_facts = rng.randint(2, max_facts)
    facts = [f"f{i}" for i in range(n_facts)]
    init = [f for f in facts if rng.random() < 0.4]
    goal = rng.sample(facts, rng.randint(1, min(3, n_facts)))
    actions = []
    for i in range(rng.randint(1, max_actions)):
        pre = [f for f in facts if rng.random() < 0.2]
        add = [f for f in facts if rng.random() < 0.3]
        delete = [f for f in facts if f not in add and rng.random() < 0.15]
        actions.append(make_action(f"a{i}", pre=pre, add=add, delete=delete, cost=float(rng.randint(1, 9))))
    return make_model(f"rnd{rng.randint(0, 10**9)}", facts, init, goal, actions)


def oracle_posterior(weights, likelihoods):
    """Direct prior*likelihood/Z enumeration; returns None on contradiction."""
    raw = [w * l for w, l in zip(weights, likelihoods)]
    z = sum(raw)
    if z == 0.0:
        return None
    return [r / z for r in raw]
