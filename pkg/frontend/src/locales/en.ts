export const en = {
  appTitle: "Table Fact Check",
  tagline: "Verify a claim against your table, with the model's reasoning streamed live.",
  tableSection: "Table (editable CSV)",
  tablePlaceholder: "Paste CSV here, or upload a table image…",
  titleLabel: "Table title (optional)",
  uploadImage: "Upload table image",
  ocrBackendLabel: "OCR engine",
  ocrVision: "Vision model (accurate)",
  ocrClassical: "Classical OCR (fast)",
  ocrRunning: "Recognizing table…",
  previewSection: "Live preview",
  previewEmpty: "The preview appears once the CSV parses.",
  exampleSection: "Benchmark example",
  examplePickerDefault: "Choose an example…",
  sourcePage: "Source page",
  claimSection: "Claim",
  claimPlaceholder: "State the claim to verify against the table…",
  modelLabel: "Model",
  formatLabel: "Table format",
  techniqueLabel: "Prompting",
  strategyLabel: "Strategy",
  granularityLabel: "Retrieval granularity",
  uiLanguageLabel: "Interface language",
  deepThinking: "Deep Thinking",
  formatMarkdown: "Markdown",
  formatHtml: "HTML",
  formatJson: "JSON",
  formatNaturalized: "Naturalized text",
  techniqueZeroShot: "Zero-shot",
  techniqueCot: "Chain of thought",
  strategyDirect: "Full table",
  strategyRag: "Retrieval-pruned",
  granularityRow: "Rows",
  granularityColumn: "Columns",
  granularityCell: "Cells",
  runCheck: "Run Live Check",
  streaming: "Checking…",
  reasoningTitle: "Model reasoning",
  verdictEntailed: "ENTAILED",
  verdictRefuted: "REFUTED",
  provenanceFallback: "Verdict recovered from keywords; no cell references available.",
  droppedCells: "Some cited cells did not exist in the table:",
  exportJson: "Export JSON",
  errorRateLimited: "Too many requests. Try again in {seconds} seconds.",
  errorGeneric: "Verification failed",
  darkMode: "Dark mode",
};

export type Messages = typeof en;
export type MessageKey = keyof Messages;
