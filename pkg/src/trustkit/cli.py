"""Command-line surface: planning, trust, updates, studies, service, replay."""

from __future__ import annotations

import json
import math
import sys
from dataclasses import replace
from pathlib import Path

import click

from .belief import posterior_update
from .engine import cached_optimal_plan, contract_probability
from .errors import TrustkitError
from .reliance import calibration_report, ground_truth_probability, reliance_decision, select_explanation
from .scenario import fixture_names, resolve_scenario
from .session import (
    SessionStore,
    observation_from_doc,
    parse_session_log,
    replay_events,
    state_document,
)
from .simhuman import SimulatedHuman
from .study import StudyConfig, default_messages, run_study, write_records_csv


def _emit(ctx, document, csv_rows=None):
    fmt = ctx.obj["format"]
    out = ctx.obj["out"]
    if fmt == "csv":
        if csv_rows is None:
            raise click.UsageError("csv format is not supported for this verb")
        text = "\n".join(",".join(str(v) for v in row) for row in csv_rows) + "\n"
    elif fmt == "text":
        text = _as_text(document) + "\n"
    else:
        text = json.dumps(document, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def _as_text(document, indent=0) -> str:
    pad = "  " * indent
    if isinstance(document, dict):
        lines = []
        for key, value in document.items():
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.append(_as_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
        return "\n".join(lines)
    if isinstance(document, list):
        return "\n".join(_as_text(v, indent) if isinstance(v, (dict, list)) else f"{pad}- {v}" for v in document)
    return f"{pad}{document}"


def _load_json_arg(value: str):
    """JSON literal, or @path to a JSON file."""
    if value.startswith("@"):
        return json.loads(Path(value[1:]).read_text())
    return json.loads(value)


@click.group()
@click.option("--scenario", "scenario_ref", default="coffee", show_default=True,
              help="Scenario file path or shipped fixture name.")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", default=None, type=click.Path(), help="Write output to a file instead of stdout.")
@click.option("--format", "fmt", default="json", show_default=True,
              type=click.Choice(["json", "csv", "text"]))
@click.pass_context
def main(ctx, scenario_ref, seed, out, fmt):
    """Trust inference and calibration over candidate agent task models."""
    ctx.ensure_object(dict)
    ctx.obj.update(scenario_ref=scenario_ref, seed=seed, out=out, format=fmt)


def _scenario(ctx):
    return resolve_scenario(ctx.obj["scenario_ref"])


@main.command()
@click.pass_context
def plan(ctx):
    """Optimal plan cost for every candidate model and the task model."""
    scenario = _scenario(ctx)
    rows = [("model", "status", "cost", "plan")]
    entries = {}
    for model in scenario.models + (scenario.task_model,):
        result = cached_optimal_plan(model)
        entries[model.id] = {
            "status": result.status,
            "cost": result.cost if result.cost != math.inf else "inf",
            "plan": list(result.plan),
        }
        rows.append((model.id, result.status, result.cost, " ".join(result.plan)))
    _emit(ctx, {"scenario": scenario.name, "models": entries}, csv_rows=rows)


@main.command()
@click.pass_context
def trust(ctx):
    """Contract probability and trust for the scenario prior."""
    scenario = _scenario(ctx)
    assessment = contract_probability(scenario.ensemble(), scenario.contract, scenario.kernel, scenario.measure)
    _emit(ctx, {
        "scenario": scenario.name,
        "cost_bound": scenario.contract.cost_bound,
        "weights": {m.id: w for m, w in zip(scenario.models, scenario.weights)},
        "per_model": {m.id: k for m, k in zip(scenario.models, assessment.per_model)},
        "p_contract": assessment.p_contract,
        "trust": assessment.trust,
    })


@main.command()
@click.option("--observation", "observation_json", required=True,
              help="Observation JSON (or @file), e.g. '{\"type\":\"explanation\",\"eliminate\":[\"M2\"]}'.")
@click.pass_context
def update(ctx, observation_json):
    """Posterior weights after one observation."""
    scenario = _scenario(ctx)
    obs = observation_from_doc(_load_json_arg(observation_json), scenario.contract)
    posterior = posterior_update(scenario.ensemble(), obs, scenario.rationality, scenario.kernel)
    assessment = contract_probability(posterior, scenario.contract, scenario.kernel, scenario.measure)
    _emit(ctx, {
        "scenario": scenario.name,
        "weights": {m.id: w for m, w in zip(posterior.models, posterior.weights)},
        "p_contract": assessment.p_contract,
        "trust": assessment.trust,
    })


@main.command()
@click.pass_context
def rely(ctx):
    """Accept/reject recommendation for the scenario prior."""
    scenario = _scenario(ctx)
    assessment = contract_probability(scenario.ensemble(), scenario.contract, scenario.kernel, scenario.measure)
    decision = reliance_decision(assessment.p_contract, scenario.utilities)
    _emit(ctx, {
        "scenario": scenario.name,
        "p_contract": assessment.p_contract,
        "v_accept": decision.v_accept,
        "v_reject": decision.v_reject,
        "threshold": decision.threshold,
        "decision": decision.decision,
    })


@main.command()
@click.option("--epsilon", default=0.05, show_default=True, type=float)
@click.pass_context
def calibrate(ctx, epsilon):
    """Trust gap between the supervisor's belief and the agent's actual model."""
    scenario = _scenario(ctx)
    assessment = contract_probability(scenario.ensemble(), scenario.contract, scenario.kernel, scenario.measure)
    p_true = ground_truth_probability(scenario.true_model, scenario.contract, scenario.ground_truth_semantics())
    report = calibration_report(assessment.p_contract, p_true, epsilon)
    _emit(ctx, {
        "scenario": scenario.name,
        "p_human": report.p_human,
        "p_true": report.p_true,
        "gap": report.gap,
        "classification": report.classification,
        "epsilon": report.epsilon,
    })


@main.command("explain-select")
@click.option("--candidates", "candidates_json", default=None,
              help="JSON list of elimination lists (or @file); default: every single-model elimination.")
@click.option("--epsilon", default=0.05, show_default=True, type=float)
@click.pass_context
def explain_select(ctx, candidates_json, epsilon):
    """Pick the elimination message that best closes the trust gap."""
    from .belief import ExplanationObservation

    scenario = _scenario(ctx)
    if candidates_json:
        raw = _load_json_arg(candidates_json)
        candidates = [ExplanationObservation(frozenset(entry)) for entry in raw]
    else:
        candidates = [ExplanationObservation(frozenset({m.id})) for m in scenario.models]
    p_true = ground_truth_probability(scenario.true_model, scenario.contract, scenario.ground_truth_semantics())
    index, projected = select_explanation(
        scenario.ensemble(), candidates, scenario.contract, scenario.kernel, p_true, epsilon,
        params=scenario.rationality,
    )
    _emit(ctx, {
        "scenario": scenario.name,
        "chosen_index": index,
        "chosen_eliminate": sorted(candidates[index].eliminate) if index is not None else None,
        "projected_gap": projected.gap,
        "projected_classification": projected.classification,
    })


@main.command()
@click.option("--n-per-group", default=21, show_default=True, type=int)
@click.option("--noise-sigma", default=0.0, show_default=True, type=float)
@click.option("--beta-log-sigma", default=0.25, show_default=True, type=float)
@click.option("--kappa", default=50.0, show_default=True, type=float)
@click.option("--messages", "messages_json", default=None,
              help='JSON {"positive": [[ids]...], "negative": [[ids]...]} (or @file); '
                   "default messages derive from the contract-achieving set.")
@click.pass_context
def study(ctx, n_per_group, noise_sigma, beta_log_sigma, kappa, messages_json):
    """Run the positive/negative update study on a simulated cohort."""
    from .belief import ExplanationObservation

    scenario = _scenario(ctx)
    base = SimulatedHuman(
        ensemble=scenario.ensemble(),
        contract=scenario.contract,
        kernel=scenario.kernel,
        rationality=scenario.rationality,
        measure=scenario.measure,
        utilities=scenario.utilities,
    )
    if messages_json:
        raw = _load_json_arg(messages_json)
        positive = tuple(ExplanationObservation(frozenset(e)) for e in raw["positive"])
        negative = tuple(ExplanationObservation(frozenset(e)) for e in raw["negative"])
    else:
        positive, negative = default_messages(base)
    config = StudyConfig(
        base=base,
        positive_messages=positive,
        negative_messages=negative,
        n_per_group=n_per_group,
        beta_log_sigma=beta_log_sigma,
        prior_kappa=kappa,
        noise_sigma=noise_sigma,
        seed=ctx.obj["seed"],
    )
    records, summary = run_study(config)
    out = ctx.obj["out"]
    if out:
        write_records_csv(records, out)
        click.echo(f"wrote {len(records)} subject records to {out}")

    def test_doc(result):
        if result is None:
            return "not applicable"
        return {"t": result.t, "df": result.df, "p_value": result.p_value,
                "tails": result.tails, "direction": result.direction}

    document = {
        "scenario": scenario.name,
        "n_per_group": summary.n_per_group,
        "positive_increases": summary.positive_increases,
        "negative_decreases": summary.negative_decreases,
        "H1_between_groups": test_doc(summary.h1_between_groups),
        "H2_positive_increase": test_doc(summary.h2_positive_increase),
        "H3_negative_decrease": test_doc(summary.h3_negative_decrease),
        "notes": list(summary.notes),
    }
    fmt = ctx.obj["format"]
    if fmt == "csv" and not out:
        from .study import CSV_HEADER

        lines = [CSV_HEADER] + [
            f"{r.subject_id},{r.group},{r.trust_before:.6f},{r.trust_after:.6f},"
            f"{r.delta:.6f},{r.p_before:.6f},{r.p_after:.6f}"
            for r in records
        ]
        click.echo("\n".join(lines))
    else:
        click.echo(json.dumps(document, indent=2) if fmt != "text" else _as_text(document))


@main.command()
@click.option("--port", default=8473, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--static-dir", default=None, type=click.Path(exists=True),
              help="Serve the study console bundle from this directory.")
@click.option("--sessions-dir", default="./sessions", show_default=True, type=click.Path())
def serve(port, host, static_dir, sessions_dir):
    """Run the HTTP session service."""
    import uvicorn

    from .service import build_app

    store = SessionStore(sessions_dir)
    app = build_app(store, static_dir=static_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")


@main.command()
@click.option("--log", "log_path", required=True, type=click.Path(exists=True),
              help="Session log: JSON lines or an exported {scenario, events} object.")
@click.pass_context
def replay(ctx, log_path):
    """Recompute a session's final state from its observation log."""
    scenario, session_id, events = parse_session_log(Path(log_path).read_text())
    state = replay_events(scenario, events, session_id=session_id)
    _emit(ctx, state_document(state))


def entrypoint():
    try:
        main(obj={})
    except TrustkitError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    entrypoint()
