// Thin fetch wrapper over the session service.

import type {
  ObservationDoc,
  ObserveResponse,
  ReportResponse,
  ScenarioInfo,
  StateDoc,
  WhatIfResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

async function asJson<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const message =
      typeof body === "object" && body !== null && "error" in body
        ? String((body as { error: unknown }).error)
        : `HTTP ${response.status}`;
    throw new ApiError(response.status, message);
  }
  return body as T;
}

export interface SessionApi {
  listScenarios(): Promise<ScenarioInfo[]>;
  createSession(scenarioName: string): Promise<{ session_id: string; state: StateDoc }>;
  getState(sessionId: string): Promise<StateDoc>;
  observe(sessionId: string, observation: ObservationDoc): Promise<ObserveResponse>;
  whatif(sessionId: string, observation: ObservationDoc): Promise<WhatIfResponse>;
  report(sessionId: string, responses: Record<string, number>): Promise<ReportResponse>;
}

export class ApiClient implements SessionApi {
  constructor(private baseUrl: string = "") {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    return asJson<T>(response);
  }

  private async get<T>(path: string): Promise<T> {
    return asJson<T>(await fetch(this.baseUrl + path));
  }

  listScenarios(): Promise<ScenarioInfo[]> {
    return this.get("/scenarios");
  }

  createSession(scenarioName: string): Promise<{ session_id: string; state: StateDoc }> {
    return this.post("/sessions", { scenario_name: scenarioName });
  }

  getState(sessionId: string): Promise<StateDoc> {
    return this.get(`/sessions/${sessionId}`);
  }

  observe(sessionId: string, observation: ObservationDoc): Promise<ObserveResponse> {
    return this.post(`/sessions/${sessionId}/observe`, { observation });
  }

  whatif(sessionId: string, observation: ObservationDoc): Promise<WhatIfResponse> {
    return this.post(`/sessions/${sessionId}/whatif`, { observation });
  }

  report(sessionId: string, responses: Record<string, number>): Promise<ReportResponse> {
    return this.post(`/sessions/${sessionId}/report`, { responses });
  }
}
