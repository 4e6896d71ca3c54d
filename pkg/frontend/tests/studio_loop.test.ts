// End-to-end designer loop against the real service on the mock backend:
// submit a prompt, get an SVG, edit the prompt, resubmit, confirm the
// history grew to 2 and that clicking a history item restores its state.
// (No browser binaries are installable in this environment, so the loop is
// driven through jsdom + real HTTP instead of a browser process.)

import { type ChildProcess, spawn } from "node:child_process";

import { afterAll, beforeAll, beforeEach, describe, expect, it } from "vitest";

import { StudioApi } from "../src/api.js";
import { initStudio } from "../src/app.js";
import { click, mountShell, setPrompt } from "./helpers.js";

const PORT = 8907 + (process.pid % 50);
const BASE = `http://127.0.0.1:${PORT}`;
const nodeFetch = globalThis.fetch.bind(globalThis);

let service: ChildProcess;

async function waitForHealthy(timeoutMs = 25000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const response = await nodeFetch(`${BASE}/healthz`);
      if (response.ok) {
        return;
      }
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error(`service did not become healthy on ${BASE}`);
}

beforeAll(async () => {
  service = spawn("wiregen", ["serve", "--port", String(PORT), "--backend", "mock"], {
    stdio: "ignore",
  });
  await waitForHealthy();
});

afterAll(() => {
  service?.kill();
});

describe("studio loop against the live service", () => {
  beforeEach(() => {
    window.localStorage.clear();
    mountShell();
  });

  it("submit, regenerate, and restore from history", async () => {
    const controller = initStudio(document, new StudioApi(BASE, nodeFetch), window.localStorage);

    setPrompt("a login page");
    click("submit");
    await controller.idle();
    const svgPanel = document.getElementById("svg-panel")!;
    expect(svgPanel.querySelector("svg")).not.toBeNull();
    expect(controller.history.length).toBe(1);
    const firstSvg = svgPanel.innerHTML;
    expect(firstSvg.length).toBeGreaterThan(200);

    setPrompt("a settings page with toggles");
    click("submit");
    await controller.idle();
    expect(controller.history.length).toBe(2);
    const secondSvg = svgPanel.innerHTML;
    expect(secondSvg).not.toBe(firstSvg);

    const items = document.querySelectorAll("#history .history-item");
    expect(items.length).toBe(2);
    (items[0] as HTMLElement).dispatchEvent(new MouseEvent("click", { bubbles: true }));
    const prompt = document.getElementById("prompt") as HTMLTextAreaElement;
    expect(prompt.value).toBe("a login page");
    expect(svgPanel.innerHTML).toBe(firstSvg);
    expect(controller.history.length).toBe(2); // restoring never rewrites history
  });

  it("re-beautifies edited markup through the service", async () => {
    const controller = initStudio(document, new StudioApi(BASE, nodeFetch), window.localStorage);

    setPrompt("a music page");
    click("submit");
    await controller.idle();
    const editor = document.getElementById("dsl-editor") as HTMLTextAreaElement;
    expect(editor.value).toContain("</html>");

    // Edit the markup: rename the title text, then re-beautify.
    editor.value = editor.value.replace(/>My Music</, ">Our Music<");
    click("rebeautify");
    await controller.idle();
    expect(document.getElementById("dsl-banner")!.classList.contains("hidden")).toBe(true);
    expect(document.querySelector("#svg-panel svg")).not.toBeNull();
    expect(editor.value).toContain("Our Music");

    // Broken markup surfaces the 422 as a banner and keeps the SVG.
    const svgBefore = document.getElementById("svg-panel")!.innerHTML;
    editor.value = "definitely not markup";
    click("rebeautify");
    await controller.idle();
    expect(document.getElementById("dsl-banner")!.classList.contains("hidden")).toBe(false);
    expect(document.getElementById("svg-panel")!.innerHTML).toBe(svgBefore);
  });

  it("serves the icon lexicon for the UI", async () => {
    const api = new StudioApi(BASE, nodeFetch);
    const icons = await api.icons();
    expect(icons.length).toBe(10);
    expect(icons.map((entry) => entry.icon_id)).toEqual([1, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
  });
});
