// Studio wiring: the describe -> inspect -> tweak -> regenerate loop.
// All pipeline work happens server-side; this module only moves DOM state.

import { ApiError, StudioApi } from "./api.js";
import type { GenerateOptions, GenerateResponse, LintFinding } from "./api.js";
import { SessionHistory } from "./history.js";

const FLAW_LABELS: Record<string, string> = {
  occlusion: "Occlusion",
  duplication: "Duplication",
  out_of_bound: "OutOfBound",
};

interface StudioElements {
  prompt: HTMLTextAreaElement;
  mode: HTMLSelectElement;
  temperature: HTMLInputElement;
  temperatureValue: HTMLElement;
  seed: HTMLInputElement;
  backend: HTMLSelectElement;
  submit: HTMLButtonElement;
  banner: HTMLElement;
  historyList: HTMLElement;
  findings: HTMLElement;
  svgPanel: HTMLElement;
  dslToggle: HTMLButtonElement;
  rebeautify: HTMLButtonElement;
  dslBanner: HTMLElement;
  dslEditor: HTMLTextAreaElement;
}

function grab(doc: Document): StudioElements {
  const byId = <T extends HTMLElement>(id: string): T => {
    const el = doc.getElementById(id);
    if (!el) {
      throw new Error(`studio markup is missing #${id}`);
    }
    return el as T;
  };
  return {
    prompt: byId<HTMLTextAreaElement>("prompt"),
    mode: byId<HTMLSelectElement>("mode"),
    temperature: byId<HTMLInputElement>("temperature"),
    temperatureValue: byId<HTMLElement>("temperature-value"),
    seed: byId<HTMLInputElement>("seed"),
    backend: byId<HTMLSelectElement>("backend"),
    submit: byId<HTMLButtonElement>("submit"),
    banner: byId<HTMLElement>("banner"),
    historyList: byId<HTMLElement>("history"),
    findings: byId<HTMLElement>("findings"),
    svgPanel: byId<HTMLElement>("svg-panel"),
    dslToggle: byId<HTMLButtonElement>("dsl-toggle"),
    rebeautify: byId<HTMLButtonElement>("rebeautify"),
    dslBanner: byId<HTMLElement>("dsl-banner"),
    dslEditor: byId<HTMLTextAreaElement>("dsl-editor"),
  };
}

export class StudioController {
  readonly elements: StudioElements;
  readonly history: SessionHistory;
  private doc: Document;
  private api: StudioApi;
  private pending = false;
  private inFlight: Promise<void> = Promise.resolve();
  private rawDsl = "";
  private beautifiedDsl = "";

  constructor(doc: Document, api: StudioApi, storage: Storage) {
    this.doc = doc;
    this.api = api;
    this.history = new SessionHistory(storage);
    this.elements = grab(doc);
    this.wire();
    this.renderHistory();
    this.syncSubmitState();
  }

  /** Resolves when no request is in flight; for tests and chained actions. */
  idle(): Promise<void> {
    return this.inFlight;
  }

  get isPending(): boolean {
    return this.pending;
  }

  currentConfig(): GenerateOptions {
    const seedText = this.elements.seed.value.trim();
    return {
      mode: this.elements.mode.value,
      temperature: Number(this.elements.temperature.value),
      seed: seedText === "" ? null : Number(seedText),
      backend: this.elements.backend.value,
    };
  }

  private wire(): void {
    const els = this.elements;
    els.prompt.addEventListener("input", () => this.syncSubmitState());
    els.temperature.addEventListener("input", () => {
      els.temperatureValue.textContent = Number(els.temperature.value).toFixed(2);
    });
    els.submit.addEventListener("click", () => {
      this.inFlight = this.submitPrompt();
    });
    els.dslToggle.addEventListener("click", () => this.toggleDslView());
    els.rebeautify.addEventListener("click", () => {
      this.inFlight = this.rebeautify();
    });
  }

  private syncSubmitState(): void {
    this.elements.submit.disabled = this.pending || this.elements.prompt.value.trim() === "";
  }

  private setPending(value: boolean): void {
    this.pending = value;
    this.syncSubmitState();
    this.elements.rebeautify.disabled = value;
  }

  private showBanner(el: HTMLElement, message: string): void {
    el.textContent = message;
    el.classList.remove("hidden");
  }

  private clearBanner(el: HTMLElement): void {
    el.textContent = "";
    el.classList.add("hidden");
  }

  async submitPrompt(): Promise<void> {
    const description = this.elements.prompt.value.trim();
    if (this.pending || description === "") {
      return;
    }
    const config = this.currentConfig();
    this.setPending(true);
    this.clearBanner(this.elements.banner);
    try {
      const response = await this.api.generate(description, config);
      this.showResponse(response);
      this.history.append({
        prompt: description,
        config,
        response,
        timestamp: Date.now(),
      });
      this.renderHistory();
    } catch (error) {
      this.showBanner(this.elements.banner, describeError(error));
    } finally {
      this.setPending(false);
    }
  }

  async rebeautify(): Promise<void> {
    if (this.pending) {
      return;
    }
    const edited = this.elements.dslEditor.value;
    if (edited.trim() === "") {
      return;
    }
    this.setPending(true);
    this.clearBanner(this.elements.dslBanner);
    try {
      const response = await this.api.beautify(edited);
      this.beautifiedDsl = response.beautified_dsl;
      this.rawDsl = edited;
      this.renderSvg(response.svg);
      this.renderFindings(response.findings);
      this.setDslView("beautified");
    } catch (error) {
      // Parse errors keep the previous SVG and the editor content intact.
      this.showBanner(this.elements.dslBanner, describeError(error, edited));
    } finally {
      this.setPending(false);
    }
  }

  private showResponse(response: GenerateResponse): void {
    this.rawDsl = response.raw_dsl;
    this.beautifiedDsl = response.beautified_dsl;
    this.renderSvg(response.svg);
    this.renderFindings(response.findings);
    this.setDslView("beautified");
  }

  private renderSvg(svg: string): void {
    this.elements.svgPanel.innerHTML = svg;
  }

  private renderFindings(findings: LintFinding[]): void {
    const counts = new Map<string, number>();
    for (const finding of findings) {
      counts.set(finding.kind, (counts.get(finding.kind) ?? 0) + 1);
    }
    this.elements.findings.innerHTML = "";
    for (const [kind, label] of Object.entries(FLAW_LABELS)) {
      const count = counts.get(kind) ?? 0;
      const badge = this.doc.createElement("span");
      badge.className = `badge ${count ? "badge-hit" : "badge-clear"}`;
      badge.dataset.kind = kind;
      badge.textContent = `${label}: ${count}`;
      this.elements.findings.appendChild(badge);
    }
  }

  private setDslView(view: "raw" | "beautified"): void {
    this.elements.dslToggle.dataset.view = view;
    this.elements.dslToggle.textContent = `Showing: ${view}`;
    this.elements.dslEditor.value = view === "raw" ? this.rawDsl : this.beautifiedDsl;
  }

  private toggleDslView(): void {
    const current = this.elements.dslToggle.dataset.view ?? "beautified";
    this.setDslView(current === "raw" ? "beautified" : "raw");
  }

  restoreHistoryItem(index: number): void {
    const item = this.history.at(index);
    if (!item) {
      return;
    }
    this.elements.prompt.value = item.prompt;
    this.elements.mode.value = item.config.mode;
    this.elements.temperature.value = String(item.config.temperature);
    this.elements.temperatureValue.textContent = item.config.temperature.toFixed(2);
    this.elements.seed.value = item.config.seed === null ? "" : String(item.config.seed);
    this.elements.backend.value = item.config.backend;
    this.showResponse(item.response);
    this.syncSubmitState();
  }

  private renderHistory(): void {
    const list = this.elements.historyList;
    list.innerHTML = "";
    this.history.all().forEach((item, index) => {
      const li = this.doc.createElement("li");
      const button = this.doc.createElement("button");
      button.type = "button";
      button.className = "history-item";
      button.dataset.index = String(index);
      button.textContent = `${index + 1}. ${item.prompt}`;
      button.addEventListener("click", () => this.restoreHistoryItem(index));
      li.appendChild(button);
      list.appendChild(li);
    });
  }
}

function describeError(error: unknown, context = ""): string {
  if (error instanceof ApiError) {
    if (error.status === 422 && context) {
      const snippet = context.trim().slice(0, 80);
      return `Markup did not parse (${error.detail}). Offending input starts: "${snippet}"`;
    }
    return `Request failed (${error.status}): ${error.detail}`;
  }
  return `Request failed: ${String(error)}`;
}

export function initStudio(
  doc: Document,
  api: StudioApi = new StudioApi(),
  storage: Storage = window.localStorage,
): StudioController {
  return new StudioController(doc, api, storage);
}
