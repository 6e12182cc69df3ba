import copy
import json
import math
import warnings

import pytest

from trustkit.engine import contract_probability
from trustkit.errors import ValidationError
from trustkit.planning import optimal_plan
from trustkit.scenario import (
    SCENARIO_SCHEMA,
    fixture_names,
    load_fixture,
    load_scenario,
    resolve_scenario,
)

from helpers import coffee_models, coffee_task_model


def test_shipped_fixture_names():
    assert fixture_names() == ["box", "coffee", "door"]


def test_coffee_fixture_matches_reference_encoding():
    scenario = load_fixture("coffee")
    assert scenario.weights == (0.25, 0.25, 0.25, 0.25)
    assert scenario.kernel.variant == "boltzmann"
    assert scenario.kernel.beta == 0.1
    assert scenario.contract.cost_bound == 10.0
    assert scenario.models == tuple(coffee_models().values())
    assert scenario.task_model == coffee_task_model()
    assert scenario.true_model.id == "M3"
    assert scenario.utilities.u_success == 10.0
    assert scenario.ground_truth == "kernel"
    assessment = contract_probability(scenario.ensemble(), scenario.contract, scenario.kernel)
    assert assessment.p_contract == pytest.approx(0.33926345893551424, abs=1e-12)


def test_door_fixture_achievable_in_exactly_one_model():
    scenario = load_fixture("door")
    assert len(scenario.models) == 2
    costs = [optimal_plan(m).cost for m in scenario.models]
    assert sorted(math.isinf(c) for c in costs) == [False, True]


def test_box_fixture_achievable_in_exactly_one_model():
    scenario = load_fixture("box")
    assert len(scenario.models) == 4
    costs = [optimal_plan(m).cost for m in scenario.models]
    assert sum(1 for c in costs if not math.isinf(c)) == 1
    assert optimal_plan(scenario.models[0]).cost == 4.0


def _delete_paths(doc, prefix=()):
    """Every dict key anywhere in the document, as a path tuple."""
    paths = []
    if isinstance(doc, dict):
        for key, value in doc.items():
            paths.append(prefix + (key,))
            paths.extend(_delete_paths(value, prefix + (key,)))
    elif isinstance(doc, list):
        for index, value in enumerate(doc):
            paths.extend(_delete_paths(value, prefix + (index,)))
    return paths


def _without(doc, path):
    mutated = copy.deepcopy(doc)
    target = mutated
    for key in path[:-1]:
        target = target[key]
    del target[path[-1]]
    return mutated


@pytest.mark.parametrize("name", ["coffee", "door", "box"])
def test_mutation_corpus_fully_rejected(name):
    document = load_fixture(name).document
    paths = _delete_paths(document)
    assert paths
    for path in paths:
        mutated = _without(document, path)
        with pytest.raises(ValidationError):
            load_scenario(mutated)


def test_schema_violation_reports_path():
    document = copy.deepcopy(load_fixture("coffee").document)
    del document["models"][0]["weight"]
    with pytest.raises(ValidationError, match=r"models\[0\]"):
        load_scenario(document)


def test_weight_sum_enforced():
    document = copy.deepcopy(load_fixture("coffee").document)
    document["models"][0]["weight"] = 0.5
    with pytest.raises(ValidationError, match="sum"):
        load_scenario(document)


def test_weight_sum_tolerates_tiny_drift():
    document = copy.deepcopy(load_fixture("coffee").document)
    document["models"][0]["weight"] = 0.25 + 5e-7
    scenario = load_scenario(document)
    assert math.fsum(scenario.weights) == pytest.approx(1.0, abs=1e-12)


def test_unknown_atom_rejected():
    document = copy.deepcopy(load_fixture("coffee").document)
    document["models"][0]["init"].append("haunted-attic")
    with pytest.raises(ValidationError, match="haunted-attic"):
        load_scenario(document)


def test_unknown_action_atom_rejected():
    document = copy.deepcopy(load_fixture("coffee").document)
    document["models"][0]["actions"][0]["add"].append("warp-drive")
    with pytest.raises(ValidationError, match="warp-drive"):
        load_scenario(document)


def test_dangling_true_model_ref_rejected():
    document = copy.deepcopy(load_fixture("coffee").document)
    document["true_model"] = {"ref": "M99"}
    with pytest.raises(ValidationError, match="M99"):
        load_scenario(document)


def test_inline_true_model_accepted():
    document = copy.deepcopy(load_fixture("coffee").document)
    document["true_model"] = {"model": document["task_model"]}
    scenario = load_scenario(document)
    assert scenario.true_model.id == "task"


def test_duplicate_model_ids_rejected():
    document = copy.deepcopy(load_fixture("coffee").document)
    document["models"][1]["id"] = "M1"
    with pytest.raises(ValidationError, match="unique"):
        load_scenario(document)


def test_unsatisfiable_contract_warns_not_errors():
    document = copy.deepcopy(load_fixture("coffee").document)
    document["contract"] = {"cost_bound": 0.5}
    document["kernel"] = {"type": "hard_threshold"}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        scenario = load_scenario(document)
    assert scenario.contract.cost_bound == 0.5
    assert any("satisfy the contract" in str(w.message) for w in caught)


def test_load_from_json_text():
    text = json.dumps(load_fixture("door").document)
    scenario = load_scenario(text)
    assert scenario.name == "door"
    with pytest.raises(ValidationError, match="JSON"):
        load_scenario("{not json")


def test_resolve_scenario_by_path(tmp_path):
    path = tmp_path / "custom.json"
    path.write_text(json.dumps(load_fixture("box").document))
    assert resolve_scenario(str(path)).name == "box"
    assert resolve_scenario("coffee").name == "coffee"
    with pytest.raises(ValidationError, match="unknown scenario fixture"):
        resolve_scenario("no-such-scenario")


def test_schema_constant_is_valid_draft7():
    import jsonschema

    jsonschema.Draft7Validator.check_schema(SCENARIO_SCHEMA)
