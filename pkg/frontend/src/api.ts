/**
 * Service API client. The UI touches the backend exclusively through this
 * module; the only other network call in the app is the public encyclopedia
 * summary endpoint (wiki.ts).
 */

import { SseParser } from "./sse.js";
import type {
  ExampleDetail,
  ExampleSummary,
  ModelInfo,
  Preview,
  VerdictPayload,
  VerifyRequest,
} from "./types.js";

export class ApiError extends Error {
  constructor(message: string, public status: number) {
    super(message);
  }
}

export class RateLimitedError extends ApiError {
  constructor(message: string, public retryAfterSeconds: number) {
    super(message, 429);
  }
}

export interface StreamHandlers {
  onReasoning: (text: string) => void;
  onVerdict: (verdict: VerdictPayload) => void;
  onError: (code: string, message: string) => void;
  onDone: () => void;
}

async function errorFor(response: Response): Promise<ApiError> {
  let detail = `${response.status}`;
  try {
    const body = await response.json();
    detail = typeof body.detail === "string" ? body.detail : JSON.stringify(body.detail);
  } catch {
    /* non-JSON error body */
  }
  if (response.status === 429) {
    const retryAfter = parseInt(response.headers.get("Retry-After") ?? "60", 10);
    return new RateLimitedError(detail, retryAfter);
  }
  return new ApiError(detail, response.status);
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  async models(): Promise<ModelInfo[]> {
    const response = await fetch(`${this.baseUrl}/api/models`);
    if (!response.ok) throw await errorFor(response);
    return response.json();
  }

  async examples(): Promise<ExampleSummary[]> {
    const response = await fetch(`${this.baseUrl}/api/examples`);
    if (!response.ok) throw await errorFor(response);
    return response.json();
  }

  async example(id: string): Promise<ExampleDetail> {
    const response = await fetch(`${this.baseUrl}/api/examples/${encodeURIComponent(id)}`);
    if (!response.ok) throw await errorFor(response);
    return response.json();
  }

  async ocr(
    file: Blob,
    backend: "vision" | "classical",
  ): Promise<{ csv_text: string; table: Preview & { title: string | null } }> {
    const form = new FormData();
    form.append("image", file);
    form.append("backend", backend);
    const response = await fetch(`${this.baseUrl}/api/ocr`, { method: "POST", body: form });
    if (!response.ok) throw await errorFor(response);
    return response.json();
  }

  /**
   * Open the verify stream and dispatch its events until done or aborted.
   * Aborting the signal closes the connection, which cancels the model
   * request server-side.
   */
  async streamVerify(
    request: VerifyRequest,
    handlers: StreamHandlers,
    signal?: AbortSignal,
  ): Promise<void> {
    const response = await fetch(`${this.baseUrl}/api/verify`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
      signal,
    });
    if (!response.ok || !response.body) throw await errorFor(response);

    const reader = response.body.getReader();
    const decoder = new TextDecoder();
    const parser = new SseParser();
    try {
      while (true) {
        const { done, value } = await reader.read();
        if (done) break;
        for (const event of parser.push(decoder.decode(value, { stream: true }))) {
          if (event.event === "reasoning") {
            handlers.onReasoning((event.data as { text: string }).text);
          } else if (event.event === "verdict") {
            handlers.onVerdict(event.data as VerdictPayload);
          } else if (event.event === "error") {
            const data = event.data as { code: string; message: string };
            handlers.onError(data.code, data.message);
          } else if (event.event === "done") {
            handlers.onDone();
          }
        }
      }
    } finally {
      reader.releaseLock();
    }
  }
}
