// Scripted session against a real spawned service: initial report ->
// eliminate M2 -> second report.  The exported action log must replay
// through the CLI to the exact service state, and the second predicted
// trust must be strictly above the first.
import { execFile, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { promisify } from "node:util";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { SessionFlow } from "../src/store.js";

const execFileAsync = promisify(execFile);

const PORT = 8917;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
let workDir: string;

async function waitForService(): Promise<void> {
  const deadline = Date.now() + 30000;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/scenarios`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error("session service did not come up");
}

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), "console-roundtrip-"));
  server = spawn(
    "trustkit",
    ["serve", "--port", String(PORT), "--sessions-dir", join(workDir, "sessions")],
    { stdio: "ignore" },
  );
  await waitForService();
});

afterAll(() => {
  server?.kill();
});

describe("console round trip over the coffee scenario", () => {
  it("replays the exported action log to the exact service state", async () => {
    const api = new ApiClient(BASE);
    const flow = new SessionFlow(api);
    await flow.start("coffee");

    expect(
      await flow.commitReport({ competence: 5, predictability: 5, reliability: 5, faith: 5, overall: 5 }),
    ).toBe(true);
    const firstPredicted = flow.state!.reports[0].predicted_trust;

    // Facilitator sends the positive-update message.
    flow.enqueueMessage(["M2"]);
    expect(await flow.deliverNextMessage()).toBe(true);
    expect(flow.state!.weights["M2"]).toBe(0);

    expect(
      await flow.commitReport({ competence: 7, predictability: 6, reliability: 7, faith: 6, overall: 7 }),
    ).toBe(true);
    const secondPredicted = flow.state!.reports[1].predicted_trust;
    expect(secondPredicted).toBeGreaterThan(firstPredicted);

    // A rely choice is stored client-side and must not disturb the replay.
    flow.recordChoice("rely");

    // Every committed action is visible on a fresh read.
    const serviceState = await api.getState(flow.sessionId!);
    expect(serviceState.observations).toHaveLength(1);
    expect(serviceState.reports).toHaveLength(2);

    const logPath = join(workDir, "exported-log.json");
    writeFileSync(logPath, flow.exportLogText());
    const { stdout } = await execFileAsync("trustkit", ["replay", "--log", logPath]);
    const replayed = JSON.parse(stdout);
    expect(replayed).toEqual(serviceState);
  });

  it("what-if previews commit nothing on the live service", async () => {
    const api = new ApiClient(BASE);
    const flow = new SessionFlow(api);
    await flow.start("coffee");
    const projected = await flow.previewWhatIf({ type: "explanation", eliminate: ["M1"] });
    expect(projected.weights["M1"]).toBe(0);
    const read = await api.getState(flow.sessionId!);
    expect(read.weights["M1"]).toBe(0.25);
    expect(read.observations).toHaveLength(0);
  });

  it("surfaces contradictions as 409 banners and recovers state", async () => {
    const api = new ApiClient(BASE);
    const flow = new SessionFlow(api);
    await flow.start("coffee");
    const ok = await flow.commitObserve({
      type: "explanation",
      eliminate: ["M1", "M2", "M3", "M4"],
    });
    expect(ok).toBe(false);
    expect(flow.banner?.kind).toBe("contradiction");
    expect(flow.state!.weights["M1"]).toBe(0.25);
    expect(flow.events).toHaveLength(0);
  });
});
