import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, RateLimitedError } from "../src/api.js";
import { parsePreview } from "../src/csv.js";
import { initialState, setCsvText } from "../src/state.js";
import type { VerdictPayload, VerifyRequest } from "../src/types.js";

const REQUEST: VerifyRequest = {
  table_csv: "name,score\nAlice,3",
  claim: "Alice scored 3.",
  model_id: "phi4:14b",
  format: "naturalized",
  technique: "chain_of_thought",
  strategy: "direct",
  output_language: "en",
  deep_thinking: false,
};

const VERDICT: VerdictPayload = {
  label: "ENTAILED",
  relevant_cells: [{ row_index: 0, column_name: "score" }],
  dropped_cells: [],
  reasoning: "checked",
  provenance: "STRUCTURED",
};

function frame(event: string, data: unknown): string {
  return `event: ${event}\ndata: ${JSON.stringify(data)}\n\n`;
}

function sseResponse(frames: string[], onPull?: () => void): Response {
  const encoder = new TextEncoder();
  let index = 0;
  const stream = new ReadableStream<Uint8Array>(
    {
      pull(controller) {
        onPull?.();
        if (index < frames.length) {
          controller.enqueue(encoder.encode(frames[index++]!));
        } else {
          controller.close();
        }
      },
    },
    // Demand-driven pulls (no readahead) so tests can observe that each
    // frame is handled before the next one is produced.
    new CountQueuingStrategy({ highWaterMark: 0 }),
  );
  return new Response(stream, {
    status: 200,
    headers: { "Content-Type": "text/event-stream" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("streamVerify", () => {
  it("dispatches reasoning deltas incrementally, then verdict and done", async () => {
    const frames = [
      frame("reasoning", { text: "Check" }),
      frame("reasoning", { text: "ing…" }),
      frame("verdict", VERDICT),
      frame("done", {}),
    ];
    const reasoningSeen: string[] = [];
    const countAtPull: number[] = [];
    vi.stubGlobal(
      "fetch",
      vi.fn(async () => sseResponse(frames, () => countAtPull.push(reasoningSeen.length))),
    );

    const events: string[] = [];
    let verdict: VerdictPayload | null = null;
    await new ApiClient("").streamVerify(REQUEST, {
      onReasoning: (t) => {
        reasoningSeen.push(t);
        events.push("reasoning");
      },
      onVerdict: (v) => {
        verdict = v;
        events.push("verdict");
      },
      onError: () => events.push("error"),
      onDone: () => events.push("done"),
    });

    expect(events).toEqual(["reasoning", "reasoning", "verdict", "done"]);
    expect(reasoningSeen.join("")).toBe("Checking…");
    expect(verdict).toEqual(VERDICT);
    // Deltas were handled between reads, not after the stream finished:
    // by the time the third frame was pulled, both deltas had been seen.
    expect(countAtPull[2]).toBe(2);
  });

  it("dispatches error events in-stream", async () => {
    const frames = [frame("error", { code: "model_unavailable", message: "down" }), frame("done", {})];
    vi.stubGlobal("fetch", vi.fn(async () => sseResponse(frames)));
    const seen: Array<[string, string]> = [];
    await new ApiClient("").streamVerify(REQUEST, {
      onReasoning: () => {},
      onVerdict: () => {},
      onError: (code, message) => seen.push([code, message]),
      onDone: () => {},
    });
    expect(seen).toEqual([["model_unavailable", "down"]]);
  });

  it("maps 429 to RateLimitedError with retry guidance", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        new Response(JSON.stringify({ detail: "rate limit exceeded" }), {
          status: 429,
          headers: { "Retry-After": "42" },
        }),
      ),
    );
    const call = new ApiClient("").streamVerify(REQUEST, {
      onReasoning: () => {},
      onVerdict: () => {},
      onError: () => {},
      onDone: () => {},
    });
    await expect(call).rejects.toBeInstanceOf(RateLimitedError);
    await expect(call).rejects.toMatchObject({ retryAfterSeconds: 42 });
  });

  it("sends the request body to the verify endpoint", async () => {
    const fetchMock = vi.fn(async () => sseResponse([frame("done", {})]));
    vi.stubGlobal("fetch", fetchMock);
    await new ApiClient("http://svc").streamVerify(REQUEST, {
      onReasoning: () => {},
      onVerdict: () => {},
      onError: () => {},
      onDone: () => {},
    });
    const [url, options] = fetchMock.mock.calls[0]! as unknown as [string, RequestInit];
    expect(url).toBe("http://svc/api/verify");
    expect(JSON.parse(options.body as string)).toEqual(REQUEST);
  });
});

describe("ocr round trip", () => {
  it("fills the editor and the preview stays in sync", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        new Response(
          JSON.stringify({
            csv_text: "a,b\n1,2",
            table: { columns: ["row_index", "a", "b"], rows: [["0", "1", "2"]], title: null },
          }),
          { status: 200, headers: { "Content-Type": "application/json" } },
        ),
      ),
    );
    const result = await new ApiClient("").ocr(new Blob([new Uint8Array(8)]), "vision");
    expect(result.csv_text).toBe("a,b\n1,2");

    const state = initialState();
    setCsvText(state, result.csv_text);
    expect(state.csvText).toBe("a,b\n1,2");
    expect(state.preview).toEqual(parsePreview("a,b\n1,2"));
  });

  it("surfaces OCR errors as ApiError", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        new Response(JSON.stringify({ detail: "image is too large" }), { status: 413 }),
      ),
    );
    await expect(new ApiClient("").ocr(new Blob([]), "vision")).rejects.toMatchObject({
      status: 413,
    });
  });
});
