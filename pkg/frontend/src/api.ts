// Typed client for the wiregen HTTP API. The studio never reimplements
// pipeline logic; everything goes through these endpoints.

export interface GenerateOptions {
  mode: string;
  temperature: number;
  seed: number | null;
  backend: string;
}

export interface LintFinding {
  kind: string;
  element_ids: string[];
  detail: string;
  repair: string;
}

export interface BeautifyReport {
  icons_resolved: { element_id: string; icon_id: number; glyph: string }[];
  typography: unknown[];
  findings_fixed: LintFinding[];
  findings_residual: LintFinding[];
}

export interface GenerateResponse {
  raw_dsl: string;
  beautified_dsl: string;
  svg: string;
  findings: LintFinding[];
  report: BeautifyReport;
  request_id: string;
}

export interface BeautifyResponse {
  beautified_dsl: string;
  svg: string;
  findings: LintFinding[];
  report: BeautifyReport;
}

export interface IconEntry {
  icon_id: number;
  glyph: string;
  semantics: string[];
}

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`${status}: ${detail}`);
  }
}

type Fetch = typeof globalThis.fetch;

export class StudioApi {
  constructor(
    private baseUrl = "",
    private fetchImpl: Fetch = globalThis.fetch.bind(globalThis),
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const payload = await response.json();
        if (payload && typeof payload.detail === "string") {
          detail = payload.detail;
        }
      } catch {
        // keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  generate(description: string, config: GenerateOptions): Promise<GenerateResponse> {
    return this.post<GenerateResponse>("/api/generate", { description, config });
  }

  beautify(dsl: string): Promise<BeautifyResponse> {
    return this.post<BeautifyResponse>("/api/beautify", { dsl });
  }

  async icons(): Promise<IconEntry[]> {
    const response = await this.fetchImpl(this.baseUrl + "/api/icons");
    if (!response.ok) {
      throw new ApiError(response.status, response.statusText);
    }
    return (await response.json()) as IconEntry[];
  }
}
