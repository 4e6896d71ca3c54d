import { readFileSync } from "node:fs";
import { join } from "node:path";

import type { GenerateResponse } from "../src/api.js";

/** Mount the static studio shell into the jsdom document body. */
export function mountShell(): void {
  const html = readFileSync(join(process.cwd(), "index.html"), "utf-8");
  const body = html.match(/<body>([\s\S]*)<\/body>/);
  if (!body) {
    throw new Error("index.html has no body");
  }
  document.body.innerHTML = body[1];
}

export function sampleResponse(tag: string): GenerateResponse {
  return {
    raw_dsl: `<html><body><p class=${tag}>raw</p></body></html>`,
    beautified_dsl: `<html><body><p class=${tag}>beautified</p></body></html>`,
    svg: `<svg xmlns="http://www.w3.org/2000/svg" data-tag="${tag}"><rect width="10" height="10" /></svg>`,
    findings: [],
    report: { icons_resolved: [], typography: [], findings_fixed: [], findings_residual: [] },
    request_id: `req-${tag}`,
  };
}

export function setPrompt(value: string): void {
  const prompt = document.getElementById("prompt") as HTMLTextAreaElement;
  prompt.value = value;
  prompt.dispatchEvent(new Event("input", { bubbles: true }));
}

export function click(id: string): void {
  (document.getElementById(id) as HTMLElement).dispatchEvent(
    new MouseEvent("click", { bubbles: true }),
  );
}
