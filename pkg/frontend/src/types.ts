// Wire types mirroring the session service's JSON bodies.

export interface ModelCardInfo {
  id: string;
  description: string;
  weight: number;
}

export interface ScenarioInfo {
  name: string;
  narrative: string;
  models: ModelCardInfo[];
}

export type ObservationDoc =
  | { type: "explanation"; eliminate: string[] }
  | { type: "behavior"; trace: string[] }
  | { type: "outcome"; success: boolean };

export interface ReportEntry {
  responses: Record<string, number>;
  reported_mean: number;
  predicted_trust: number;
}

export interface StateDoc {
  session_id: string;
  scenario_name: string;
  true_model_id: string;
  weights: Record<string, number>;
  assessment: {
    p_contract: number;
    trust: number;
    per_model: Record<string, number>;
  };
  reliance: {
    v_accept: number;
    v_reject: number;
    decision: "accept" | "reject";
    threshold: number;
  };
  calibration: {
    p_human: number;
    p_true: number;
    gap: number;
    classification: "overtrust" | "undertrust" | "calibrated";
    epsilon: number;
  };
  observations: ObservationDoc[];
  reports: ReportEntry[];
}

export interface ObserveResponse {
  committed: true;
  state: StateDoc;
}

export interface WhatIfResponse {
  committed: false;
  projected: StateDoc;
}

export interface ReportResponse {
  committed: true;
  reported_mean: number;
  predicted_trust: number;
  state: StateDoc;
}

// Committed engine events, in order; this is what the CLI replays.
export type SessionEvent =
  | { kind: "observe"; observation: ObservationDoc }
  | { kind: "report"; responses: Record<string, number> };

// The participant's rely/intervene choices (client-side record only).
export interface ChoiceRecord {
  action_id: string;
  choice: "rely" | "intervene";
  recommendation: "accept" | "reject";
  disagreement: boolean;
  p_contract: number;
}

// Full client action trail with generated ids (idempotent retry bookkeeping).
export interface ActionRecord {
  action_id: string;
  kind: "open" | "observe" | "report" | "choice";
  status: "committed" | "rejected";
  detail: unknown;
}

export interface ExportedLog {
  session_id: string;
  scenario_name: string;
  events: SessionEvent[];
  choices: ChoiceRecord[];
  actions: ActionRecord[];
}
