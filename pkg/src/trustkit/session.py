"""Supervision sessions: state, request semantics, append-only persistence.

A session is a scenario plus an ordered observation log; the current weights
are always exactly what folding that log over the scenario prior produces.
Each session persists as one JSON-lines file (an "open" line carrying the
full scenario document, then one line per committed event), which makes the
file itself the replayable source of truth.
"""

from __future__ import annotations

import json
import math
import threading
import uuid
from dataclasses import dataclass, replace
from pathlib import Path

from .belief import (
    BehaviorObservation,
    ExplanationObservation,
    Observation,
    OutcomeObservation,
    posterior_update,
)
from .engine import Contract, contract_probability
from .errors import UnknownSessionError, ValidationError
from .reliance import calibration_report, ground_truth_probability, reliance_decision
from .scenario import Scenario, load_fixture, load_scenario
from .simhuman import REPORT_SCALE

QUESTIONNAIRE_COMPONENTS = ("competence", "predictability", "reliability", "faith", "overall")


@dataclass(frozen=True)
class QuestionnaireReport:
    """One five-component questionnaire response with the engine's prediction."""

    responses: dict[str, float]
    reported_mean: float
    predicted_trust: float


@dataclass(frozen=True)
class SessionState:
    session_id: str
    scenario: Scenario
    weights: tuple[float, ...]
    observations: tuple[Observation, ...]
    reports: tuple[QuestionnaireReport, ...]


def observation_to_doc(obs: Observation) -> dict:
    if isinstance(obs, ExplanationObservation):
        return {"type": "explanation", "eliminate": sorted(obs.eliminate)}
    if isinstance(obs, BehaviorObservation):
        return {"type": "behavior", "trace": list(obs.trace)}
    if isinstance(obs, OutcomeObservation):
        doc = {"type": "outcome", "success": obs.success}
        return doc
    raise ValidationError(f"unknown observation type {type(obs).__name__}")


def observation_from_doc(doc: dict, contract: Contract) -> Observation:
    if not isinstance(doc, dict) or "type" not in doc:
        raise ValidationError("observation document must be an object with a 'type' field")
    kind = doc["type"]
    if kind == "explanation":
        eliminate = doc.get("eliminate")
        if not isinstance(eliminate, list) or not eliminate:
            raise ValidationError("explanation observation needs a nonempty 'eliminate' list")
        return ExplanationObservation(frozenset(str(x) for x in eliminate))
    if kind == "behavior":
        trace = doc.get("trace")
        if not isinstance(trace, list) or not trace:
            raise ValidationError("behavior observation needs a nonempty 'trace' list")
        return BehaviorObservation(tuple(str(x) for x in trace))
    if kind == "outcome":
        if "success" not in doc or not isinstance(doc["success"], bool):
            raise ValidationError("outcome observation needs a boolean 'success' field")
        if "cost_bound" in doc:
            contract = Contract(goal=contract.goal, cost_bound=float(doc["cost_bound"]))
        return OutcomeObservation(doc["success"], contract)
    raise ValidationError(f"unknown observation type {kind!r}")


def initial_state(scenario: Scenario, session_id: str | None = None) -> SessionState:
    return SessionState(
        session_id=session_id or uuid.uuid4().hex,
        scenario=scenario,
        weights=scenario.weights,
        observations=(),
        reports=(),
    )


def _ensemble(state: SessionState):
    return replace(state.scenario.ensemble(), weights=state.weights)


def state_document(state: SessionState) -> dict:
    """Full JSON view of the session: weights, assessment, reliance, calibration."""
    scenario = state.scenario
    ensemble = _ensemble(state)
    assessment = contract_probability(ensemble, scenario.contract, scenario.kernel, scenario.measure)
    decision = reliance_decision(assessment.p_contract, scenario.utilities)
    p_true = ground_truth_probability(scenario.true_model, scenario.contract, scenario.ground_truth_semantics())
    calibration = calibration_report(assessment.p_contract, p_true)
    return {
        "session_id": state.session_id,
        "scenario_name": scenario.name,
        "true_model_id": scenario.true_model.id,
        "weights": {m.id: w for m, w in zip(scenario.models, state.weights)},
        "assessment": {
            "p_contract": assessment.p_contract,
            "trust": assessment.trust,
            "per_model": {m.id: k for m, k in zip(scenario.models, assessment.per_model)},
        },
        "reliance": {
            "v_accept": decision.v_accept,
            "v_reject": decision.v_reject,
            "decision": decision.decision,
            "threshold": decision.threshold,
        },
        "calibration": {
            "p_human": calibration.p_human,
            "p_true": calibration.p_true,
            "gap": calibration.gap,
            "classification": calibration.classification,
            "epsilon": calibration.epsilon,
        },
        "observations": [observation_to_doc(o) for o in state.observations],
        "reports": [
            {
                "responses": r.responses,
                "reported_mean": r.reported_mean,
                "predicted_trust": r.predicted_trust,
            }
            for r in state.reports
        ],
    }


def apply_observation(state: SessionState, obs: Observation) -> SessionState:
    """Committed belief update; raises ContradictionError without mutating."""
    scenario = state.scenario
    posterior = posterior_update(_ensemble(state), obs, scenario.rationality, scenario.kernel)
    return replace(
        state,
        weights=posterior.weights,
        observations=state.observations + (obs,),
    )


def apply_report(state: SessionState, responses: dict) -> tuple[SessionState, QuestionnaireReport]:
    """Append a questionnaire response; the mean follows the five-component rule."""
    cleaned = {}
    for component in QUESTIONNAIRE_COMPONENTS:
        if component not in responses:
            raise ValidationError(f"report is missing component {component!r}")
        value = float(responses[component])
        if not (0.0 <= value <= 10.0) or not math.isfinite(value):
            raise ValidationError(f"report component {component!r} must be in [0, 10]")
        cleaned[component] = value
    extra = set(responses) - set(QUESTIONNAIRE_COMPONENTS)
    if extra:
        raise ValidationError(f"unknown report components {sorted(extra)}")
    scenario = state.scenario
    assessment = contract_probability(_ensemble(state), scenario.contract, scenario.kernel, scenario.measure)
    report = QuestionnaireReport(
        responses=cleaned,
        reported_mean=math.fsum(cleaned.values()) / len(QUESTIONNAIRE_COMPONENTS),
        predicted_trust=min(REPORT_SCALE, max(0.0, REPORT_SCALE * assessment.trust)),
    )
    return replace(state, reports=state.reports + (report,)), report


def session_step(state: SessionState, request: dict) -> tuple[SessionState, dict]:
    """Dispatch one request document against a session state.

    Request kinds: observe (commits), whatif (projects, never commits),
    report (appends questionnaire), read (no mutation).
    """
    if not isinstance(request, dict) or "kind" not in request:
        raise ValidationError("request must be an object with a 'kind' field")
    kind = request["kind"]
    if kind == "read":
        return state, state_document(state)
    if kind == "observe":
        obs = observation_from_doc(request.get("observation", {}), state.scenario.contract)
        new_state = apply_observation(state, obs)
        return new_state, {"committed": True, "state": state_document(new_state)}
    if kind == "whatif":
        obs = observation_from_doc(request.get("observation", {}), state.scenario.contract)
        projected = apply_observation(state, obs)
        return state, {"committed": False, "projected": state_document(projected)}
    if kind == "report":
        new_state, report = apply_report(state, request.get("responses", {}))
        return new_state, {
            "committed": True,
            "reported_mean": report.reported_mean,
            "predicted_trust": report.predicted_trust,
            "state": state_document(new_state),
        }
    raise ValidationError(f"unknown request kind {kind!r}")


def replay_events(scenario: Scenario, events, session_id: str = "replay") -> SessionState:
    """Fold a list of committed event documents over the scenario prior."""
    state = initial_state(scenario, session_id=session_id)
    for index, event in enumerate(events):
        if not isinstance(event, dict) or "kind" not in event:
            raise ValidationError(f"event {index} must be an object with a 'kind' field")
        kind = event["kind"]
        if kind == "observe":
            obs = observation_from_doc(event.get("observation", {}), scenario.contract)
            state = apply_observation(state, obs)
        elif kind == "report":
            state, _ = apply_report(state, event.get("responses", {}))
        else:
            raise ValidationError(f"event {index}: unknown kind {kind!r}")
    return state


def parse_session_log(text: str) -> tuple[Scenario, str, list[dict]]:
    """Parse a session log (JSON lines, or one JSON object with 'events')."""
    stripped = text.strip()
    if not stripped:
        raise ValidationError("session log is empty")
    if stripped.startswith("{") and "\n" not in stripped:
        lines = [stripped]
    else:
        lines = [line for line in stripped.split("\n") if line.strip()]
    try:
        docs = [json.loads(line) for line in lines]
    except json.JSONDecodeError:
        docs = [json.loads(stripped)]
    if len(docs) == 1 and "events" in docs[0]:
        header = docs[0]
        events = header["events"]
    else:
        header = docs[0]
        if header.get("kind") != "open":
            raise ValidationError("session log must start with an 'open' line")
        events = docs[1:]
    if "scenario" in header and isinstance(header["scenario"], dict):
        scenario = load_scenario(header["scenario"])
    elif "scenario_name" in header:
        scenario = load_fixture(header["scenario_name"])
    else:
        raise ValidationError("session log header names no scenario")
    return scenario, header.get("session_id", "replay"), events


class SessionStore:
    """Disk-backed session registry; one append-only log file per session.

    Mutations on a session are serialized by a per-session lock; reads see
    immutably swapped states, so they need no coordination.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._states: dict[str, SessionState] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def _path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.jsonl"

    def _append(self, session_id: str, doc: dict) -> None:
        with self._path(session_id).open("a") as fh:
            fh.write(json.dumps(doc, separators=(",", ":")) + "\n")

    def create(self, scenario: Scenario, session_id: str | None = None) -> SessionState:
        state = initial_state(scenario, session_id)
        with self._registry_lock:
            if state.session_id in self._states:
                raise ValidationError(f"session {state.session_id!r} already exists")
            self._states[state.session_id] = state
            self._locks[state.session_id] = threading.Lock()
        self._append(
            state.session_id,
            {
                "kind": "open",
                "session_id": state.session_id,
                "scenario_name": scenario.name,
                "scenario": scenario.document,
            },
        )
        return state

    def get(self, session_id: str) -> SessionState:
        with self._registry_lock:
            state = self._states.get(session_id)
        if state is None:
            state = self._load_from_disk(session_id)
        return state

    def _load_from_disk(self, session_id: str) -> SessionState:
        path = self._path(session_id)
        if not path.exists():
            raise UnknownSessionError(f"unknown session {session_id!r}")
        scenario, sid, events = parse_session_log(path.read_text())
        state = replay_events(scenario, events, session_id=sid)
        with self._registry_lock:
            self._states[session_id] = state
            self._locks.setdefault(session_id, threading.Lock())
        return state

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            lock = self._locks.get(session_id)
        if lock is None:
            self.get(session_id)  # raises UnknownSessionError if absent
            with self._registry_lock:
                lock = self._locks[session_id]
        return lock

    def step(self, session_id: str, request: dict) -> dict:
        """Apply one request; committed events are logged before the swap."""
        kind = request.get("kind") if isinstance(request, dict) else None
        if kind in ("read", "whatif"):
            state = self.get(session_id)
            _, response = session_step(state, request)
            return response
        lock = self._lock_for(session_id)
        with lock:
            state = self.get(session_id)
            new_state, response = session_step(state, request)
            # Log the canonical parsed event, not the raw request body.
            if kind == "observe":
                doc = observation_to_doc(new_state.observations[-1])
                self._append(session_id, {"kind": "observe", "observation": doc})
            elif kind == "report":
                self._append(session_id, {"kind": "report", "responses": new_state.reports[-1].responses})
            with self._registry_lock:
                self._states[session_id] = new_state
        return response

    def log_text(self, session_id: str) -> str:
        path = self._path(session_id)
        if not path.exists():
            raise UnknownSessionError(f"unknown session {session_id!r}")
        return path.read_text()
