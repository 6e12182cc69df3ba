// Session flow state: the single source of truth behind the UI.
//
// Optimistic rendering is forbidden: `state` only ever changes to a document
// the service returned.  Committed engine events are recorded in order so the
// exported log replays through the CLI to the exact service state.

import { ApiError, type SessionApi } from "./api.js";
import { buildReportPayload, type Component } from "./questionnaire.js";
import type {
  ActionRecord,
  ChoiceRecord,
  ExportedLog,
  ObservationDoc,
  ScenarioInfo,
  SessionEvent,
  StateDoc,
} from "./types.js";

export type Banner = { kind: "contradiction" | "validation" | "network"; message: string } | null;

interface PendingAction {
  action_id: string;
  kind: "observe" | "report";
  observation?: ObservationDoc;
  responses?: Record<string, number>;
}

let counter = 0;

function newActionId(): string {
  counter += 1;
  return `a${Date.now().toString(36)}-${counter}`;
}

export class SessionFlow {
  state: StateDoc | null = null;
  scenario: ScenarioInfo | null = null;
  sessionId: string | null = null;
  events: SessionEvent[] = [];
  choices: ChoiceRecord[] = [];
  actions: ActionRecord[] = [];
  queue: string[][] = [];
  banner: Banner = null;
  pending: PendingAction | null = null;
  debrief = false;

  constructor(private api: SessionApi) {}

  async start(scenarioName: string): Promise<StateDoc> {
    const scenarios = await this.api.listScenarios();
    const scenario = scenarios.find((s) => s.name === scenarioName);
    if (!scenario) throw new Error(`unknown scenario ${scenarioName}`);
    const created = await this.api.createSession(scenarioName);
    this.scenario = scenario;
    this.sessionId = created.session_id;
    this.state = created.state;
    this.events = [];
    this.choices = [];
    this.queue = [];
    this.banner = null;
    this.pending = null;
    this.actions = [
      { action_id: newActionId(), kind: "open", status: "committed", detail: { scenario: scenarioName } },
    ];
    return created.state;
  }

  private requireSession(): string {
    if (!this.sessionId) throw new Error("no active session");
    return this.sessionId;
  }

  /** Commit an observation.  409 turns into an inline banner plus a state
   *  re-fetch; a network failure parks the action for retryPending(). */
  async commitObserve(observation: ObservationDoc): Promise<boolean> {
    const sessionId = this.requireSession();
    const action: PendingAction = { action_id: newActionId(), kind: "observe", observation };
    this.pending = action;
    try {
      const response = await this.api.observe(sessionId, observation);
      this.state = response.state;
      this.events.push({ kind: "observe", observation });
      this.actions.push({ action_id: action.action_id, kind: "observe", status: "committed", detail: observation });
      this.pending = null;
      this.banner = null;
      return true;
    } catch (error) {
      return this.handleCommitFailure(action, error);
    }
  }

  /** Submit a questionnaire report (values keyed by component). */
  async commitReport(values: Partial<Record<Component, number>>): Promise<boolean> {
    const sessionId = this.requireSession();
    const payload = buildReportPayload(values);
    const responses: Record<string, number> = { ...payload };
    const action: PendingAction = { action_id: newActionId(), kind: "report", responses };
    this.pending = action;
    try {
      const response = await this.api.report(sessionId, responses);
      this.state = response.state;
      this.events.push({ kind: "report", responses });
      this.actions.push({ action_id: action.action_id, kind: "report", status: "committed", detail: responses });
      this.pending = null;
      this.banner = null;
      return true;
    } catch (error) {
      return this.handleCommitFailure(action, error);
    }
  }

  private async handleCommitFailure(action: PendingAction, error: unknown): Promise<boolean> {
    if (error instanceof ApiError) {
      this.pending = null;
      this.actions.push({ action_id: action.action_id, kind: action.kind, status: "rejected", detail: String(error.message) });
      this.banner = {
        kind: error.status === 409 ? "contradiction" : "validation",
        message: error.message,
      };
      // Re-fetch so the rendered state is a confirmed service response.
      this.state = await this.api.getState(this.requireSession());
      return false;
    }
    // Network failure: the POST may or may not have landed; keep it pending
    // and let retryPending() decide from a fresh read (no duplicate commits).
    this.banner = { kind: "network", message: "network failure; action pending retry" };
    return false;
  }

  /** Resolve a parked action: adopt it if the service already applied it,
   *  otherwise re-send it.  Never double-commits. */
  async retryPending(): Promise<boolean> {
    const action = this.pending;
    if (!action) return true;
    const sessionId = this.requireSession();
    const remote = await this.api.getState(sessionId);
    const committedObserves = this.events.filter((e) => e.kind === "observe").length;
    const committedReports = this.events.filter((e) => e.kind === "report").length;
    const landed =
      action.kind === "observe"
        ? remote.observations.length > committedObserves
        : remote.reports.length > committedReports;
    if (landed) {
      this.state = remote;
      if (action.kind === "observe") {
        this.events.push({ kind: "observe", observation: action.observation! });
      } else {
        this.events.push({ kind: "report", responses: action.responses! });
      }
      this.actions.push({ action_id: action.action_id, kind: action.kind, status: "committed", detail: action.observation ?? action.responses });
      this.pending = null;
      this.banner = null;
      return true;
    }
    this.pending = null;
    this.banner = null;
    return action.kind === "observe"
      ? this.commitObserve(action.observation!)
      : this.commitReport(action.responses! as Partial<Record<Component, number>>);
  }

  /** Projection only; the session log is untouched. */
  async previewWhatIf(observation: ObservationDoc): Promise<StateDoc> {
    const sessionId = this.requireSession();
    const response = await this.api.whatif(sessionId, observation);
    return response.projected;
  }

  async refresh(): Promise<StateDoc> {
    const sessionId = this.requireSession();
    this.state = await this.api.getState(sessionId);
    return this.state;
  }

  /** Record the participant's rely/intervene choice next to the engine's
   *  recommendation; a disagreement marker is rendered when they differ. */
  recordChoice(choice: "rely" | "intervene"): ChoiceRecord {
    if (!this.state) throw new Error("no state to record a choice against");
    const recommendation = this.state.reliance.decision;
    const record: ChoiceRecord = {
      action_id: newActionId(),
      choice,
      recommendation,
      disagreement: (choice === "rely") !== (recommendation === "accept"),
      p_contract: this.state.assessment.p_contract,
    };
    this.choices.push(record);
    this.actions.push({ action_id: record.action_id, kind: "choice", status: "committed", detail: record });
    return record;
  }

  enqueueMessage(eliminate: string[]): void {
    if (eliminate.length === 0) throw new Error("an elimination message needs at least one model id");
    this.queue.push([...eliminate]);
  }

  /** Deliver the next pending elimination message as a committed observation.
   *  A network-parked delivery stays in `pending` (resolved by retryPending),
   *  not in the queue, so it can never be delivered twice. */
  async deliverNextMessage(): Promise<boolean> {
    const next = this.queue.shift();
    if (!next) return false;
    return this.commitObserve({ type: "explanation", eliminate: next });
  }

  /** Action log export; `events` replays through the CLI to the service state. */
  exportLog(): ExportedLog {
    return {
      session_id: this.requireSession(),
      scenario_name: this.state?.scenario_name ?? this.scenario?.name ?? "",
      events: [...this.events],
      choices: [...this.choices],
      actions: [...this.actions],
    };
  }

  exportLogText(): string {
    return JSON.stringify(this.exportLog(), null, 2);
  }
}
