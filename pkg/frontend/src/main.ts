// Console bootstrap: wires the session flow to the page.

import { ApiClient } from "./api.js";
import {
  renderBanner,
  renderGauge,
  renderHistoryChart,
  renderModelCards,
  renderNarrative,
  renderObservationLog,
  renderQueue,
  renderReliance,
} from "./render.js";
import { COMPONENTS, type Component } from "./questionnaire.js";
import { SessionFlow } from "./store.js";
import type { StateDoc } from "./types.js";

const api = new ApiClient("");
const flow = new SessionFlow(api);

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

let whatIfPreview: StateDoc | null = null;
let lastChoice: { choice: string; disagreement: boolean } | null = null;

function redraw(): void {
  const state = flow.state;
  const scenario = flow.scenario;
  renderBanner(byId("banner"), flow.banner);
  byId<HTMLButtonElement>("retry-btn").classList.toggle("hidden", flow.pending === null);
  if (!state || !scenario) return;
  renderNarrative(byId("narrative"), scenario);
  renderModelCards(byId("model-cards"), scenario, state, flow.debrief);
  renderGauge(byId("gauge"), state, whatIfPreview);
  renderReliance(byId("reliance"), state, lastChoice);
  renderHistoryChart(byId("history-chart") as unknown as SVGSVGElement, state);
  renderQueue(byId("message-queue"), flow.queue);
  renderObservationLog(byId("observation-log"), state.observations);
  byId("session-label").textContent = `session ${state.session_id} · ${state.scenario_name}`;
  renderEliminationChoices(state);
}

function renderEliminationChoices(state: StateDoc): void {
  const container = byId("elimination-choices");
  container.textContent = "";
  for (const id of Object.keys(state.weights)) {
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.value = id;
    box.className = "elim-box";
    box.disabled = state.weights[id] === 0;
    label.appendChild(box);
    label.appendChild(document.createTextNode(id));
    container.appendChild(label);
  }
}

function checkedEliminations(): string[] {
  return Array.from(document.querySelectorAll<HTMLInputElement>(".elim-box:checked")).map((b) => b.value);
}

function sliderValues(): Partial<Record<Component, number>> {
  const values: Partial<Record<Component, number>> = {};
  for (const component of COMPONENTS) {
    const slider = byId<HTMLInputElement>(`slider-${component}`);
    if (slider.value !== "") values[component] = Number(slider.value);
  }
  return values;
}

async function guard(work: () => Promise<unknown>): Promise<void> {
  try {
    await work();
  } catch (error) {
    flow.banner = { kind: "validation", message: String((error as Error).message ?? error) };
  }
  whatIfPreview = null;
  redraw();
}

async function init(): Promise<void> {
  const picker = byId<HTMLSelectElement>("scenario-picker");
  const scenarios = await api.listScenarios();
  picker.textContent = "";
  for (const scenario of scenarios) {
    const option = document.createElement("option");
    option.value = scenario.name;
    option.textContent = scenario.name;
    picker.appendChild(option);
  }

  byId("start-btn").addEventListener("click", () =>
    guard(async () => {
      lastChoice = null;
      await flow.start(picker.value);
    }),
  );

  byId("deliver-btn").addEventListener("click", () => guard(() => flow.deliverNextMessage()));

  byId("enqueue-btn").addEventListener("click", () =>
    guard(async () => {
      flow.enqueueMessage(checkedEliminations());
    }),
  );

  byId("observe-btn").addEventListener("click", () =>
    guard(() => flow.commitObserve({ type: "explanation", eliminate: checkedEliminations() })),
  );

  byId("whatif-btn").addEventListener("click", async () => {
    try {
      whatIfPreview = await flow.previewWhatIf({ type: "explanation", eliminate: checkedEliminations() });
    } catch (error) {
      flow.banner = { kind: "validation", message: String((error as Error).message ?? error) };
      whatIfPreview = null;
    }
    redraw();
  });

  byId("report-btn").addEventListener("click", () => guard(() => flow.commitReport(sliderValues())));

  byId("rely-btn").addEventListener("click", () =>
    guard(async () => {
      const record = flow.recordChoice("rely");
      lastChoice = { choice: record.choice, disagreement: record.disagreement };
    }),
  );

  byId("intervene-btn").addEventListener("click", () =>
    guard(async () => {
      const record = flow.recordChoice("intervene");
      lastChoice = { choice: record.choice, disagreement: record.disagreement };
    }),
  );

  byId("retry-btn").addEventListener("click", () => guard(() => flow.retryPending()));

  byId("debrief-toggle").addEventListener("click", () => {
    flow.debrief = !flow.debrief;
    redraw();
  });

  byId("export-btn").addEventListener("click", () => {
    const text = flow.exportLogText();
    const blob = new Blob([text], { type: "application/json" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = `${flow.sessionId ?? "session"}-log.json`;
    link.click();
    URL.revokeObjectURL(link.href);
  });

  redraw();
}

init().catch((error) => {
  const banner = document.getElementById("banner");
  if (banner) banner.textContent = `failed to reach the session service: ${error}`;
});
