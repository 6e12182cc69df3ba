"""Scenario documents: schema, validation, and shipped fixtures.

A scenario bundles everything one supervision setting needs: the shared
fact vocabulary and goal, the candidate models with prior weights, the
supervisor's own task model, the agent's actual model, the contract, and
the kernel/measure/utility configuration, plus narrative strings for the
console.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import jsonschema

from .belief import RationalityParams
from .engine import (
    Contract,
    LikelihoodKernel,
    ModelEnsemble,
    TrustMeasureConfig,
    cached_optimal_plan,
    derive_contract,
)
from .errors import ValidationError
from .planning import PlanningModel, make_action, make_model
from .reliance import UtilityProfile

WEIGHT_TOLERANCE = 1e-6

_ATOM_LIST = {"type": "array", "items": {"type": "string", "minLength": 1}}

_ACTION_SCHEMA = {
    "type": "object",
    "properties": {
        "name": {"type": "string", "minLength": 1},
        "preconditions": _ATOM_LIST,
        "add": _ATOM_LIST,
        "delete": _ATOM_LIST,
        "cost": {"type": "number", "exclusiveMinimum": 0},
    },
    "required": ["name", "preconditions", "add", "delete", "cost"],
    "additionalProperties": False,
}

_MODEL_BODY = {
    "id": {"type": "string", "minLength": 1},
    "init": _ATOM_LIST,
    "actions": {"type": "array", "items": _ACTION_SCHEMA},
}

_CANDIDATE_SCHEMA = {
    "type": "object",
    "properties": {
        **_MODEL_BODY,
        "description": {"type": "string"},
        "weight": {"type": "number", "minimum": 0},
    },
    "required": ["id", "description", "weight", "init", "actions"],
    "additionalProperties": False,
}

_TASK_MODEL_SCHEMA = {
    "type": "object",
    "properties": dict(_MODEL_BODY),
    "required": ["id", "init", "actions"],
    "additionalProperties": False,
}

SCENARIO_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "name": {"type": "string", "minLength": 1},
        "narrative": {"type": "string"},
        "facts": _ATOM_LIST,
        "goal": _ATOM_LIST,
        "models": {"type": "array", "items": _CANDIDATE_SCHEMA, "minItems": 1},
        "task_model": _TASK_MODEL_SCHEMA,
        "true_model": {
            "oneOf": [
                {
                    "type": "object",
                    "properties": {"ref": {"type": "string", "minLength": 1}},
                    "required": ["ref"],
                    "additionalProperties": False,
                },
                {
                    "type": "object",
                    "properties": {"model": _TASK_MODEL_SCHEMA},
                    "required": ["model"],
                    "additionalProperties": False,
                },
            ]
        },
        "contract": {
            "oneOf": [
                {
                    "type": "object",
                    "properties": {"cost_bound": {"type": "number", "exclusiveMinimum": 0}},
                    "required": ["cost_bound"],
                    "additionalProperties": False,
                },
                {
                    "type": "object",
                    "properties": {"slack": {"type": "number", "minimum": 0}},
                    "required": ["slack"],
                    "additionalProperties": False,
                },
            ]
        },
        "kernel": {
            "oneOf": [
                {
                    "type": "object",
                    "properties": {
                        "type": {"enum": ["boltzmann", "soft_threshold"]},
                        "beta": {"type": "number", "exclusiveMinimum": 0},
                    },
                    "required": ["type", "beta"],
                    "additionalProperties": False,
                },
                {
                    "type": "object",
                    "properties": {"type": {"const": "hard_threshold"}},
                    "required": ["type"],
                    "additionalProperties": False,
                },
            ]
        },
        "measure": {
            "oneOf": [
                {
                    "type": "object",
                    "properties": {"transform": {"const": "identity"}},
                    "required": ["transform"],
                    "additionalProperties": False,
                },
                {
                    "type": "object",
                    "properties": {
                        "transform": {"const": "affine"},
                        "a": {"type": "number", "exclusiveMinimum": 0},
                        "b": {"type": "number"},
                    },
                    "required": ["transform", "a", "b"],
                    "additionalProperties": False,
                },
                {
                    "type": "object",
                    "properties": {
                        "transform": {"const": "power"},
                        "gamma": {"type": "number", "exclusiveMinimum": 0},
                    },
                    "required": ["transform", "gamma"],
                    "additionalProperties": False,
                },
            ]
        },
        "utilities": {
            "type": "object",
            "properties": {
                "u_success": {"type": "number"},
                "u_failure": {"type": "number"},
                "c_reject": {"type": "number", "minimum": 0},
            },
            "required": ["u_success", "u_failure", "c_reject"],
            "additionalProperties": False,
        },
        "ground_truth": {"enum": ["kernel", "indicator"]},
        "rationality": {
            "type": "object",
            "properties": {"alpha": {"type": "number", "exclusiveMinimum": 0}},
            "required": ["alpha"],
            "additionalProperties": False,
        },
    },
    "required": [
        "name",
        "narrative",
        "facts",
        "goal",
        "models",
        "task_model",
        "true_model",
        "contract",
        "kernel",
        "measure",
        "utilities",
    ],
    "additionalProperties": False,
}

_VALIDATOR = jsonschema.Draft7Validator(SCENARIO_SCHEMA)


@dataclass(frozen=True)
class Scenario:
    name: str
    narrative: str
    facts: frozenset[str]
    goal: frozenset[str]
    models: tuple[PlanningModel, ...]
    weights: tuple[float, ...]
    descriptions: dict[str, str]
    task_model: PlanningModel
    true_model: PlanningModel
    contract: Contract
    kernel: LikelihoodKernel
    measure: TrustMeasureConfig
    utilities: UtilityProfile
    ground_truth: str  # "kernel" | "indicator"
    rationality: RationalityParams
    document: dict

    def ensemble(self) -> ModelEnsemble:
        return ModelEnsemble(self.models, self.weights)

    def ground_truth_semantics(self):
        return self.kernel if self.ground_truth == "kernel" else "indicator"

    def model_by_id(self, model_id: str) -> PlanningModel:
        for model in self.models:
            if model.id == model_id:
                return model
        raise ValidationError(f"unknown model id {model_id!r} in scenario {self.name!r}")


def _build_model(entry: dict, facts, goal) -> PlanningModel:
    actions = [
        make_action(
            a["name"],
            pre=a["preconditions"],
            add=a["add"],
            delete=a["delete"],
            cost=a["cost"],
        )
        for a in entry["actions"]
    ]
    return make_model(entry["id"], facts, entry["init"], goal, actions)


def load_scenario(document) -> Scenario:
    """Validate and construct a Scenario from a dict or JSON text.

    Schema violations raise with the JSON path of the offending field;
    semantic problems (weight sum, dangling references, undeclared atoms)
    raise with the responsible model or field named.
    """
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"scenario document is not valid JSON: {exc}") from exc

    error = jsonschema.exceptions.best_match(_VALIDATOR.iter_errors(document))
    if error is not None:
        raise ValidationError(f"scenario schema violation at {error.json_path}: {error.message}")

    facts = document["facts"]
    goal = document["goal"]
    models = tuple(_build_model(entry, facts, goal) for entry in document["models"])
    ids = [m.id for m in models]
    if len(set(ids)) != len(ids):
        raise ValidationError("scenario model ids must be unique")

    weights = [entry["weight"] for entry in document["models"]]
    total = sum(weights)
    if abs(total - 1.0) > WEIGHT_TOLERANCE:
        raise ValidationError(f"model weights sum to {total!r}, expected 1 within {WEIGHT_TOLERANCE}")
    weights = tuple(w / total for w in weights)

    descriptions = {entry["id"]: entry["description"] for entry in document["models"]}
    task_model = _build_model(document["task_model"], facts, goal)

    true_doc = document["true_model"]
    if "ref" in true_doc:
        ref = true_doc["ref"]
        if ref not in ids:
            raise ValidationError(f"true_model ref {ref!r} does not resolve to a listed model")
        true_model = models[ids.index(ref)]
    else:
        true_model = _build_model(true_doc["model"], facts, goal)

    kernel_doc = document["kernel"]
    kernel = LikelihoodKernel(kernel_doc["type"], kernel_doc.get("beta"))

    contract_doc = document["contract"]
    if "cost_bound" in contract_doc:
        contract = Contract(goal=frozenset(goal), cost_bound=float(contract_doc["cost_bound"]))
    else:
        contract = derive_contract(task_model, slack=float(contract_doc["slack"]))

    measure_doc = document["measure"]
    measure = TrustMeasureConfig(
        transform=measure_doc["transform"],
        a=measure_doc.get("a", 1.0),
        b=measure_doc.get("b", 0.0),
        gamma=measure_doc.get("gamma", 1.0),
    )

    utilities_doc = document["utilities"]
    utilities = UtilityProfile(
        u_success=float(utilities_doc["u_success"]),
        u_failure=float(utilities_doc["u_failure"]),
        c_reject=float(utilities_doc["c_reject"]),
    )

    rationality = RationalityParams(alpha=float(document.get("rationality", {}).get("alpha", 1.0)))

    scenario = Scenario(
        name=document["name"],
        narrative=document["narrative"],
        facts=frozenset(facts),
        goal=frozenset(goal),
        models=models,
        weights=weights,
        descriptions=descriptions,
        task_model=task_model,
        true_model=true_model,
        contract=contract,
        kernel=kernel,
        measure=measure,
        utilities=utilities,
        ground_truth=document.get("ground_truth", "kernel"),
        rationality=rationality,
        document=document,
    )

    if not any(
        cached_optimal_plan(m).solvable and cached_optimal_plan(m).cost <= contract.cost_bound
        for m in models
    ):
        warnings.warn(
            f"scenario {scenario.name!r}: no candidate model can satisfy the contract "
            f"(bound {contract.cost_bound}); belief updates may be uninformative",
            stacklevel=2,
        )
    return scenario


def load_scenario_file(path) -> Scenario:
    return load_scenario(Path(path).read_text())


def fixture_names() -> list[str]:
    files = resources.files("trustkit") / "scenarios"
    return sorted(p.name.removesuffix(".json") for p in files.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> Scenario:
    files = resources.files("trustkit") / "scenarios"
    candidate = files / f"{name}.json"
    if not candidate.is_file():
        raise ValidationError(f"unknown scenario fixture {name!r}; shipped: {fixture_names()}")
    return load_scenario(candidate.read_text())


def resolve_scenario(ref: str) -> Scenario:
    """Accept either a file path or a shipped fixture name."""
    path = Path(ref)
    if path.suffix == ".json" and path.exists():
        return load_scenario_file(path)
    if path.exists() and path.is_file():
        return load_scenario_file(path)
    return load_fixture(ref)
