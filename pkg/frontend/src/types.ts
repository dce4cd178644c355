export interface CellRef {
  row_index: number;
  column_name: string;
}

export type VerdictLabel = "ENTAILED" | "REFUTED";

export interface VerdictPayload {
  label: VerdictLabel;
  relevant_cells: CellRef[];
  dropped_cells: CellRef[];
  reasoning: string;
  provenance: "STRUCTURED" | "FALLBACK_KEYWORD";
}

export interface SseEvent {
  event: string;
  data: unknown;
}

export interface ModelInfo {
  model_id: string;
  display_name: string;
  context_budget: number;
  supports_deep_thinking: boolean;
}

export interface ExampleSummary {
  id: string;
  title: string | null;
  claim: string;
  label: string;
}

export interface ExampleDetail extends ExampleSummary {
  table_csv: string;
  source_page_url: string | null;
}

/** Client-side table preview: a simplified mirror of the server's parse. */
export interface Preview {
  columns: string[];
  rows: string[][];
}

export interface VerifyRequest {
  table_csv: string;
  claim: string;
  model_id: string;
  format: string;
  technique: string;
  strategy: string;
  rag_granularity?: string;
  output_language: string;
  deep_thinking: boolean;
  title?: string;
}
