// DOM rendering; every probability/trust value shown here came out of a
// service response document, never from client-side computation.

import type { Banner } from "./store.js";
import type { ObservationDoc, ScenarioInfo, StateDoc } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

/** Integer percentages that sum to exactly 100 (largest remainder). */
export function displayPercentages(weights: number[]): number[] {
  const scaled = weights.map((w) => w * 100);
  const floors = scaled.map(Math.floor);
  let leftover = 100 - floors.reduce((a, b) => a + b, 0);
  const order = scaled
    .map((value, index) => ({ index, frac: value - Math.floor(value) }))
    .sort((a, b) => b.frac - a.frac || a.index - b.index);
  const result = [...floors];
  for (const { index } of order) {
    if (leftover <= 0) break;
    result[index] += 1;
    leftover -= 1;
  }
  return result;
}

export function renderNarrative(container: HTMLElement, scenario: ScenarioInfo): void {
  container.textContent = scenario.narrative;
}

export function renderModelCards(
  container: HTMLElement,
  scenario: ScenarioInfo,
  state: StateDoc,
  debrief: boolean,
): void {
  container.textContent = "";
  const doc = container.ownerDocument;
  const ids = scenario.models.map((m) => m.id);
  const percentages = displayPercentages(ids.map((id) => state.weights[id] ?? 0));
  scenario.models.forEach((model, index) => {
    const card = el(doc, "div", "model-card");
    card.dataset.modelId = model.id;
    const title = el(doc, "div", "model-card-title", model.id);
    if (debrief && model.id === state.true_model_id) {
      title.appendChild(el(doc, "span", "true-model-marker", " ● actual model"));
    }
    card.appendChild(title);
    card.appendChild(el(doc, "p", "model-card-description", model.description));
    const weight = state.weights[model.id] ?? 0;
    const feasible = (state.assessment.per_model[model.id] ?? 0) > 0;
    const badge = el(doc, "span", feasible ? "badge feasible" : "badge infeasible",
      feasible ? "feasible" : "infeasible");
    const footer = el(doc, "div", "model-card-footer");
    footer.appendChild(el(doc, "span", "weight", `${percentages[index]}%`));
    footer.appendChild(badge);
    card.appendChild(footer);
    const bar = el(doc, "div", "weight-bar");
    const fill = el(doc, "div", "weight-bar-fill");
    fill.style.width = `${(weight * 100).toFixed(1)}%`;
    if (weight === 0) card.classList.add("eliminated");
    bar.appendChild(fill);
    card.appendChild(bar);
    container.appendChild(card);
  });
}

export function renderGauge(container: HTMLElement, state: StateDoc, preview?: StateDoc | null): void {
  container.textContent = "";
  const doc = container.ownerDocument;
  const p = state.assessment.p_contract;
  container.appendChild(el(doc, "div", "gauge-label",
    `P(contract) = ${p.toFixed(4)}   trust = ${state.assessment.trust.toFixed(4)}`));
  const bar = el(doc, "div", "gauge-bar");
  const fill = el(doc, "div", "gauge-fill");
  fill.style.width = `${(p * 100).toFixed(2)}%`;
  bar.appendChild(fill);
  if (preview) {
    const marker = el(doc, "div", "gauge-preview-marker");
    marker.style.left = `${(preview.assessment.p_contract * 100).toFixed(2)}%`;
    marker.title = `what-if: ${preview.assessment.p_contract.toFixed(4)}`;
    bar.appendChild(marker);
    container.appendChild(el(doc, "div", "gauge-preview-label",
      `what-if projection: P = ${preview.assessment.p_contract.toFixed(4)}`));
  }
  container.appendChild(bar);
  container.appendChild(el(doc, "div", "calibration-label",
    `calibration: ${state.calibration.classification} (gap ${state.calibration.gap.toFixed(4)})`));
}

export function renderReliance(container: HTMLElement, state: StateDoc, lastChoice?: { choice: string; disagreement: boolean } | null): void {
  container.textContent = "";
  const doc = container.ownerDocument;
  const rec = state.reliance.decision;
  container.appendChild(el(doc, "div", `recommendation ${rec}`,
    `recommendation: ${rec === "accept" ? "rely on the agent" : "intervene"}`));
  container.appendChild(el(doc, "div", "reliance-values",
    `V(accept) = ${state.reliance.v_accept.toFixed(3)}, V(reject) = ${state.reliance.v_reject.toFixed(3)}, threshold = ${state.reliance.threshold.toFixed(3)}`));
  if (lastChoice) {
    const note = el(doc, "div", "choice-note", `you chose: ${lastChoice.choice}`);
    if (lastChoice.disagreement) {
      note.classList.add("disagreement");
      note.appendChild(el(doc, "span", "disagreement-marker", " ⚠ differs from recommendation"));
    }
    container.appendChild(note);
  }
}

/** Two-series history chart: engine-predicted vs human-reported trust, one
 *  point pair per committed report entry. */
export function renderHistoryChart(svg: SVGSVGElement, state: StateDoc): void {
  const doc = svg.ownerDocument;
  while (svg.firstChild) svg.removeChild(svg.firstChild);
  const width = 320;
  const height = 120;
  const pad = 14;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  const entries = state.reports;
  const n = entries.length;
  const x = (index: number) => (n <= 1 ? width / 2 : pad + (index * (width - 2 * pad)) / (n - 1));
  const y = (value: number) => height - pad - (value / 10) * (height - 2 * pad);

  const mkLine = (values: number[], cls: string) => {
    const poly = doc.createElementNS("http://www.w3.org/2000/svg", "polyline");
    poly.setAttribute("class", cls);
    poly.setAttribute("fill", "none");
    poly.setAttribute("points", values.map((v, i) => `${x(i)},${y(v)}`).join(" "));
    return poly;
  };
  const mkDots = (values: number[], cls: string) => {
    return values.map((v, i) => {
      const dot = doc.createElementNS("http://www.w3.org/2000/svg", "circle");
      dot.setAttribute("class", cls);
      dot.setAttribute("cx", String(x(i)));
      dot.setAttribute("cy", String(y(v)));
      dot.setAttribute("r", "3");
      return dot;
    });
  };
  const predicted = entries.map((e) => e.predicted_trust);
  const reported = entries.map((e) => e.reported_mean);
  if (n > 1) {
    svg.appendChild(mkLine(predicted, "series predicted"));
    svg.appendChild(mkLine(reported, "series reported"));
  }
  for (const dot of mkDots(predicted, "dot predicted")) svg.appendChild(dot);
  for (const dot of mkDots(reported, "dot reported")) svg.appendChild(dot);
}

export function renderQueue(container: HTMLElement, queue: string[][]): void {
  container.textContent = "";
  const doc = container.ownerDocument;
  if (queue.length === 0) {
    container.appendChild(el(doc, "div", "queue-empty", "no pending messages"));
    return;
  }
  queue.forEach((message, index) => {
    container.appendChild(el(doc, "div", "queued-message",
      `${index + 1}. eliminate {${message.join(", ")}}`));
  });
}

export function renderObservationLog(container: HTMLElement, observations: ObservationDoc[]): void {
  container.textContent = "";
  const doc = container.ownerDocument;
  observations.forEach((obs, index) => {
    let text: string;
    if (obs.type === "explanation") text = `explanation: eliminate {${obs.eliminate.join(", ")}}`;
    else if (obs.type === "behavior") text = `behavior: ${obs.trace.join(" → ")}`;
    else text = `outcome: ${obs.success ? "success" : "failure"}`;
    container.appendChild(el(doc, "div", "log-entry", `${index + 1}. ${text}`));
  });
}

export function renderBanner(container: HTMLElement, banner: Banner): void {
  container.textContent = "";
  if (!banner) {
    container.classList.add("hidden");
    return;
  }
  container.classList.remove("hidden");
  const doc = container.ownerDocument;
  container.appendChild(el(doc, "span", `banner ${banner.kind}`, banner.message));
  if (banner.kind === "network") {
    container.appendChild(el(doc, "span", "retry-hint", " — use Retry to resolve safely"));
  }
}
