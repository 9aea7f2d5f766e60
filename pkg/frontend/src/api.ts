// Thin typed client for the screening service. The UI never touches files
// or other transports; everything goes through these endpoints.

import {
  HandwritingDoc,
  PredictionResponse,
  SessionDoc,
  Wordlist,
} from "./schema.js";

export class ApiError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let detail = response.statusText;
  try {
    const body = await response.json();
    if (body && typeof body.detail === "string") detail = body.detail;
    else if (body) detail = JSON.stringify(body);
  } catch {
    // keep the status text
  }
  return new ApiError(response.status, detail);
}

export class ApiClient {
  constructor(private readonly baseUrl = "") {}

  private async get<T>(path: string): Promise<T> {
    const response = await fetch(this.baseUrl + path);
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  health(): Promise<{ status: string }> {
    return this.get("/api/health");
  }

  fetchWordlist(age: number, seed: number): Promise<Wordlist> {
    return this.get(`/api/wordlist?age=${age}&seed=${seed}`);
  }

  submitSession(doc: SessionDoc): Promise<{ id: string }> {
    return this.post("/api/sessions", doc);
  }

  fetchSession(id: string): Promise<SessionDoc> {
    return this.get(`/api/sessions/${id}`);
  }

  submitSample(doc: HandwritingDoc): Promise<{ id: string }> {
    return this.post("/api/samples", doc);
  }

  predictDyslexia(doc: SessionDoc): Promise<PredictionResponse> {
    return this.post("/api/predict/dyslexia", doc);
  }

  predictDysgraphia(doc: HandwritingDoc): Promise<PredictionResponse> {
    return this.post("/api/predict/dysgraphia", doc);
  }
}
