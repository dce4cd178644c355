/**
 * Editor state and stream lifecycle, kept free of DOM concerns so the
 * behavior contract is unit-testable: the preview always reflects the
 * editor text, controls lock while streaming, reasoning accumulates
 * incrementally, and export is possible only for a completed run.
 */

import { parsePreview, PreviewError } from "./csv.js";
import type { Preview, VerdictPayload, VerifyRequest } from "./types.js";

export type StreamState = "idle" | "streaming" | "done" | "error";

export interface EditorState {
  csvText: string;
  preview: Preview | null;
  previewError: string | null;
  title: string;
  claim: string;
  modelId: string;
  format: string;
  technique: string;
  strategy: string;
  ragGranularity: string;
  language: string;
  deepThinking: boolean;
  exampleId: string | null;
  sourcePageUrl: string | null;
  streamState: StreamState;
  reasoning: string;
  verdict: VerdictPayload | null;
  error: { code: string; message: string; retryAfterSeconds?: number } | null;
}

export function initialState(): EditorState {
  return {
    csvText: "",
    preview: null,
    previewError: null,
    title: "",
    claim: "",
    modelId: "",
    format: "naturalized",
    technique: "chain_of_thought",
    strategy: "direct",
    ragGranularity: "row",
    language: "en",
    deepThinking: false,
    exampleId: null,
    sourcePageUrl: null,
    streamState: "idle",
    reasoning: "",
    verdict: null,
    error: null,
  };
}

/** Re-parse the preview so it always reflects the current editor text. */
export function setCsvText(state: EditorState, text: string): void {
  state.csvText = text;
  try {
    state.preview = text.trim() === "" ? null : parsePreview(text);
    state.previewError = null;
  } catch (err) {
    state.preview = null;
    state.previewError = err instanceof PreviewError ? err.message : String(err);
  }
}

export function loadExample(
  state: EditorState,
  example: { id: string; title: string | null; claim: string; table_csv: string; source_page_url: string | null },
): void {
  setCsvText(state, example.table_csv);
  state.title = example.title ?? "";
  state.claim = example.claim;
  state.exampleId = example.id;
  state.sourcePageUrl = example.source_page_url;
  resetRun(state);
}

export function resetRun(state: EditorState): void {
  state.streamState = "idle";
  state.reasoning = "";
  state.verdict = null;
  state.error = null;
}

export function canRun(state: EditorState): boolean {
  return (
    state.streamState !== "streaming" &&
    state.claim.trim() !== "" &&
    state.preview !== null
  );
}

export function controlsDisabled(state: EditorState): boolean {
  return state.streamState === "streaming";
}

export function startStream(state: EditorState): void {
  state.streamState = "streaming";
  state.reasoning = "";
  state.verdict = null;
  state.error = null;
}

export function appendReasoning(state: EditorState, delta: string): void {
  state.reasoning += delta;
}

export function applyVerdict(state: EditorState, verdict: VerdictPayload): void {
  state.verdict = verdict;
}

export function streamError(
  state: EditorState,
  code: string,
  message: string,
  retryAfterSeconds?: number,
): void {
  state.error = { code, message, retryAfterSeconds };
  state.streamState = "error";
}

export function finishStream(state: EditorState): void {
  if (state.streamState === "streaming") {
    state.streamState = state.verdict !== null ? "done" : "error";
  }
}

export function buildRequest(state: EditorState): VerifyRequest {
  const request: VerifyRequest = {
    table_csv: state.csvText,
    claim: state.claim.trim(),
    model_id: state.modelId,
    format: state.format,
    technique: state.technique,
    strategy: state.strategy,
    output_language: state.language,
    deep_thinking: state.deepThinking,
  };
  if (state.strategy === "rag") request.rag_granularity = state.ragGranularity;
  if (state.title.trim() !== "") request.title = state.title.trim();
  return request;
}

/** One language switch drives both the chrome and the answer language. */
export function applyLocale(state: EditorState, tag: string): void {
  state.language = tag;
}

export function canExport(state: EditorState): boolean {
  return state.streamState === "done" && state.verdict !== null;
}

/** The documented verdict schema plus the configuration that produced it. */
export function exportPayload(state: EditorState): {
  verdict: VerdictPayload;
  request: VerifyRequest;
} {
  if (!canExport(state) || state.verdict === null) {
    throw new Error("nothing to export: no completed run");
  }
  return { verdict: state.verdict, request: buildRequest(state) };
}
