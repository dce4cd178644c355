/**
 * DOM wiring: builds the page, binds the editor/preview sync, runs live
 * checks over SSE, and renders verdicts with cell highlighting. All logic
 * that matters lives in the imported modules; this file only reflects
 * state into the DOM.
 */

import { ApiClient, RateLimitedError } from "./api.js";
import { cellKey, computeHighlights, displayColumns, ROW_INDEX_COLUMN } from "./highlight.js";
import { I18n, LOCALE_NAMES } from "./i18n.js";
import type { MessageKey } from "./locales/en.js";
import {
  appendReasoning,
  applyLocale,
  applyVerdict,
  buildRequest,
  canExport,
  canRun,
  controlsDisabled,
  exportPayload,
  finishStream,
  initialState,
  loadExample,
  resetRun,
  setCsvText,
  startStream,
  streamError,
} from "./state.js";
import { applyTheme, savedTheme, toggleTheme } from "./theme.js";
import type { ModelInfo } from "./types.js";
import { fetchPageSummary } from "./wiki.js";

declare global {
  interface Window {
    TABLECHECK_API_BASE?: string;
  }
}

// Same-origin by default; set window.TABLECHECK_API_BASE before the module
// loads to point at a service on another origin.
const api = new ApiClient(
  typeof window === "undefined" ? "" : window.TABLECHECK_API_BASE ?? "",
);
const i18n = new I18n(typeof localStorage === "undefined" ? null : localStorage);
const state = initialState();

let models: ModelInfo[] = [];
let inflight: AbortController | null = null;
let theme = savedTheme(typeof localStorage === "undefined" ? null : localStorage);

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [name, value] of Object.entries(attrs)) {
    if (name === "class") node.className = value;
    else node.setAttribute(name, value);
  }
  node.append(...children);
  return node;
}

const labelled: Array<{ node: HTMLElement; key: MessageKey }> = [];

function text(key: MessageKey, tag: keyof HTMLElementTagNameMap = "span"): HTMLElement {
  const node = el(tag, {}, i18n.t(key));
  labelled.push({ node, key });
  return node;
}

// --- static layout ---------------------------------------------------------

const editor = el("textarea", { class: "editor", rows: "10" });
const titleInput = el("input", { class: "title-input", type: "text" });
const claimInput = el("textarea", { class: "claim", rows: "3" });
const previewBox = el("div", { class: "preview" });
const previewNote = el("p", { class: "muted" });

const exampleSelect = el("select", { class: "example-select" });
const wikiCard = el("div", { class: "wiki-card" });

const modelSelect = el("select");
const formatSelect = el("select");
const techniqueSelect = el("select");
const strategySelect = el("select");
const granularitySelect = el("select");
const deepThinkingBox = el("input", { type: "checkbox" });
const uiLanguageSelect = el("select");

const fileInput = el("input", { type: "file", accept: "image/png,image/jpeg", hidden: "" });
const uploadButton = el("button", { class: "secondary" });
const ocrBackendSelect = el("select");

const runButton = el("button", { class: "primary run" });
const exportButton = el("button", { class: "secondary" });
const themeButton = el("button", { class: "secondary" });

const verdictBadge = el("div", { class: "badge hidden" });
const provenanceNote = el("p", { class: "muted hidden" });
const droppedWarning = el("p", { class: "warning hidden" });
const errorBanner = el("div", { class: "banner hidden" });
const reasoningText = el("pre", { class: "reasoning-text" });
const reasoningSummary = text("reasoningTitle", "summary");
const reasoningPanel = el("details", { class: "reasoning" }, reasoningSummary, reasoningText);

function option(value: string, label: string): HTMLOptionElement {
  return el("option", { value }, label);
}

function fillSelect(select: HTMLSelectElement, pairs: Array<[string, MessageKey]>): void {
  select.replaceChildren(...pairs.map(([value, key]) => option(value, i18n.t(key))));
}

function buildPage(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");

  for (const [tag] of Object.entries(LOCALE_NAMES)) void tag;
  uiLanguageSelect.replaceChildren(
    ...Object.entries(LOCALE_NAMES).map(([tag, name]) => option(tag, name)),
  );
  uiLanguageSelect.value = i18n.locale;

  root.replaceChildren(
    el(
      "header",
      {},
      el("div", {}, text("appTitle", "h1"), text("tagline", "p")),
      el(
        "div",
        { class: "header-controls" },
        el("label", {}, text("uiLanguageLabel"), uiLanguageSelect),
        themeButton,
      ),
    ),
    el(
      "main",
      {},
      el(
        "section",
        { class: "column" },
        el("label", {}, text("exampleSection", "h2"), exampleSelect),
        wikiCard,
        el("label", {}, text("tableSection", "h2"), editor),
        el("label", {}, text("titleLabel"), titleInput),
        el(
          "div",
          { class: "ocr-row" },
          uploadButton,
          el("label", {}, text("ocrBackendLabel"), ocrBackendSelect),
          fileInput,
        ),
        text("previewSection", "h2"),
        previewNote,
        previewBox,
      ),
      el(
        "section",
        { class: "column" },
        el("label", {}, text("claimSection", "h2"), claimInput),
        el(
          "div",
          { class: "options" },
          el("label", {}, text("modelLabel"), modelSelect),
          el("label", {}, text("formatLabel"), formatSelect),
          el("label", {}, text("techniqueLabel"), techniqueSelect),
          el("label", {}, text("strategyLabel"), strategySelect),
          el("label", {}, text("granularityLabel"), granularitySelect),
            el("label", { class: "checkbox" }, deepThinkingBox, text("deepThinking")),
        ),
        runButton,
        errorBanner,
        verdictBadge,
        provenanceNote,
        droppedWarning,
        reasoningPanel,
        exportButton,
      ),
    ),
  );
}

// --- rendering -------------------------------------------------------------

function renderTexts(): void {
  document.documentElement.lang = i18n.locale;
  document.documentElement.dir = i18n.direction;
  for (const { node, key } of labelled) node.textContent = i18n.t(key);
  fillSelect(formatSelect, [
    ["naturalized", "formatNaturalized"],
    ["markdown", "formatMarkdown"],
    ["html", "formatHtml"],
    ["json", "formatJson"],
  ]);
  fillSelect(techniqueSelect, [
    ["chain_of_thought", "techniqueCot"],
    ["zero_shot", "techniqueZeroShot"],
  ]);
  fillSelect(strategySelect, [
    ["direct", "strategyDirect"],
    ["rag", "strategyRag"],
  ]);
  fillSelect(granularitySelect, [
    ["row", "granularityRow"],
    ["column", "granularityColumn"],
    ["cell", "granularityCell"],
  ]);
  fillSelect(ocrBackendSelect, [
    ["vision", "ocrVision"],
    ["classical", "ocrClassical"],
  ]);
  formatSelect.value = state.format;
  techniqueSelect.value = state.technique;
  strategySelect.value = state.strategy;
  granularitySelect.value = state.ragGranularity;
  uploadButton.textContent = i18n.t("uploadImage");
  exportButton.textContent = i18n.t("exportJson");
  themeButton.textContent = i18n.t("darkMode");
  editor.setAttribute("placeholder", i18n.t("tablePlaceholder"));
  claimInput.setAttribute("placeholder", i18n.t("claimPlaceholder"));
  renderRunButton();
  renderStream();
}

function renderPreview(): void {
  previewBox.replaceChildren();
  if (state.preview === null) {
    previewNote.textContent = state.previewError ?? i18n.t("previewEmpty");
    previewNote.classList.remove("hidden");
    return;
  }
  previewNote.classList.add("hidden");

  const highlights = state.verdict
    ? computeHighlights(state.preview, state.verdict.relevant_cells).highlighted
    : new Set<string>();

  const table = el("table", { class: "grid" });
  const head = el("tr");
  for (const column of displayColumns(state.preview)) {
    head.append(el("th", {}, column));
  }
  table.append(el("thead", {}, head));
  const body = el("tbody");
  state.preview.rows.forEach((row, r) => {
    const tr = el("tr");
    const gutterClass = highlights.has(cellKey(r, ROW_INDEX_COLUMN)) ? "gutter hit" : "gutter";
    tr.append(el("td", { class: gutterClass }, String(r)));
    row.forEach((value, c) => {
      const column = state.preview!.columns[c]!;
      const css = highlights.has(cellKey(r, column)) ? "hit" : "";
      tr.append(el("td", { class: css }, value));
    });
    body.append(tr);
  });
  table.append(body);
  previewBox.append(table);
}

function renderRunButton(): void {
  runButton.textContent =
    state.streamState === "streaming" ? i18n.t("streaming") : i18n.t("runCheck");
  runButton.toggleAttribute("disabled", !canRun(state));
  const locked = controlsDisabled(state);
  for (const control of [
    editor, titleInput, claimInput, modelSelect, formatSelect, techniqueSelect,
    strategySelect, granularitySelect, deepThinkingBox,
    exampleSelect, uploadButton, ocrBackendSelect,
  ]) {
    control.toggleAttribute("disabled", locked);
  }
  granularitySelect.closest("label")?.classList.toggle("hidden", state.strategy !== "rag");
  const model = models.find((m) => m.model_id === state.modelId);
  deepThinkingBox
    .closest("label")
    ?.classList.toggle("hidden", !(model?.supports_deep_thinking ?? false));
}

function renderStream(): void {
  reasoningText.textContent = state.reasoning;
  reasoningPanel.classList.toggle("hidden", state.reasoning === "");
  if (state.streamState === "streaming") reasoningPanel.setAttribute("open", "");

  if (state.verdict) {
    verdictBadge.textContent = i18n.t(
      state.verdict.label === "ENTAILED" ? "verdictEntailed" : "verdictRefuted",
    );
    verdictBadge.className = `badge ${state.verdict.label === "ENTAILED" ? "entailed" : "refuted"}`;
    provenanceNote.textContent = i18n.t("provenanceFallback");
    provenanceNote.classList.toggle(
      "hidden",
      state.verdict.provenance !== "FALLBACK_KEYWORD",
    );
    const dropped = state.verdict.dropped_cells;
    droppedWarning.textContent =
      `${i18n.t("droppedCells")} ` +
      dropped.map((c) => `(${c.row_index}, ${c.column_name})`).join(", ");
    droppedWarning.classList.toggle("hidden", dropped.length === 0);
    reasoningPanel.removeAttribute("open");
  } else {
    verdictBadge.className = "badge hidden";
    provenanceNote.classList.add("hidden");
    droppedWarning.classList.add("hidden");
  }

  if (state.error) {
    errorBanner.textContent =
      state.error.retryAfterSeconds !== undefined
        ? i18n.t("errorRateLimited", { seconds: state.error.retryAfterSeconds })
        : `${i18n.t("errorGeneric")}: ${state.error.message}`;
    errorBanner.classList.remove("hidden");
  } else {
    errorBanner.classList.add("hidden");
  }

  exportButton.toggleAttribute("disabled", !canExport(state));
  renderRunButton();
}

async function renderWikiCard(): Promise<void> {
  wikiCard.replaceChildren();
  if (!state.sourcePageUrl) return;
  const link = el("a", { href: state.sourcePageUrl, target: "_blank", rel: "noreferrer" });
  link.append(text("sourcePage"));
  const summary = await fetchPageSummary(state.sourcePageUrl);
  if (summary) {
    const card = el("div", { class: "wiki-summary" });
    if (summary.thumbnailUrl) card.append(el("img", { src: summary.thumbnailUrl, alt: "" }));
    card.append(el("strong", {}, summary.title), el("p", {}, summary.extract), link);
    wikiCard.append(card);
  } else {
    wikiCard.append(link); // degrade to a plain link
  }
}

// --- behavior --------------------------------------------------------------

function debounce(fn: () => void, ms: number): () => void {
  let timer: ReturnType<typeof setTimeout> | null = null;
  return () => {
    if (timer !== null) clearTimeout(timer);
    timer = setTimeout(fn, ms);
  };
}

const syncPreview = debounce(() => {
  setCsvText(state, editor.value);
  state.exampleId = null;
  renderPreview();
  renderRunButton();
}, 150);

async function runLiveCheck(): Promise<void> {
  if (!canRun(state)) return;
  inflight?.abort(); // single in-flight verification per tab
  inflight = new AbortController();
  startStream(state);
  renderStream();
  renderPreview();
  try {
    await api.streamVerify(
      buildRequest(state),
      {
        onReasoning: (delta) => {
          appendReasoning(state, delta);
          renderStream();
        },
        onVerdict: (verdict) => {
          applyVerdict(state, verdict);
          renderPreview();
        },
        onError: (code, message) => {
          streamError(state, code, message);
          renderStream();
        },
        onDone: () => {
          finishStream(state);
          renderStream();
        },
      },
      inflight.signal,
    );
    finishStream(state);
  } catch (err) {
    if (err instanceof DOMException && err.name === "AbortError") return;
    if (err instanceof RateLimitedError) {
      streamError(state, "rate_limited", err.message, err.retryAfterSeconds);
    } else {
      streamError(state, "request_failed", String(err));
    }
  }
  renderStream();
}

async function uploadImage(file: File): Promise<void> {
  uploadButton.textContent = i18n.t("ocrRunning");
  try {
    const backend = ocrBackendSelect.value === "classical" ? "classical" : "vision";
    const result = await api.ocr(file, backend);
    editor.value = result.csv_text;
    setCsvText(state, result.csv_text);
    resetRun(state);
    renderPreview();
    renderStream();
  } catch (err) {
    streamError(state, "ocr_failed", String(err));
    renderStream();
  } finally {
    uploadButton.textContent = i18n.t("uploadImage");
  }
}

function downloadExport(): void {
  if (!canExport(state)) return;
  const payload = JSON.stringify(exportPayload(state), null, 2);
  const blob = new Blob([payload], { type: "application/json" });
  const url = URL.createObjectURL(blob);
  const anchor = el("a", { href: url, download: "verdict.json" });
  anchor.click();
  URL.revokeObjectURL(url);
}

async function selectExample(id: string): Promise<void> {
  if (!id) return;
  const detail = await api.example(id);
  loadExample(state, detail);
  editor.value = state.csvText;
  titleInput.value = state.title;
  claimInput.value = state.claim;
  renderPreview();
  renderStream();
  void renderWikiCard();
}

async function main(): Promise<void> {
  buildPage();
  applyTheme(theme, document.documentElement);
  applyLocale(state, i18n.locale);
  renderTexts();
  renderPreview();

  editor.addEventListener("input", syncPreview);
  titleInput.addEventListener("input", () => (state.title = titleInput.value));
  claimInput.addEventListener("input", () => {
    state.claim = claimInput.value;
    renderRunButton();
  });
  modelSelect.addEventListener("change", () => {
    state.modelId = modelSelect.value;
    const model = models.find((m) => m.model_id === state.modelId);
    if (!model?.supports_deep_thinking) {
      state.deepThinking = false;
      deepThinkingBox.checked = false;
    }
    renderRunButton();
  });
  formatSelect.addEventListener("change", () => (state.format = formatSelect.value));
  techniqueSelect.addEventListener("change", () => (state.technique = techniqueSelect.value));
  strategySelect.addEventListener("change", () => {
    state.strategy = strategySelect.value;
    renderRunButton();
  });
  granularitySelect.addEventListener(
    "change",
    () => (state.ragGranularity = granularitySelect.value),
  );
  deepThinkingBox.addEventListener("change", () => (state.deepThinking = deepThinkingBox.checked));
  uiLanguageSelect.addEventListener("change", () => i18n.setLocale(uiLanguageSelect.value));
  i18n.onChange(() => {
    applyLocale(state, i18n.locale);
    renderTexts();
  });
  themeButton.addEventListener("click", () => {
    theme = toggleTheme(theme, typeof localStorage === "undefined" ? null : localStorage);
    applyTheme(theme, document.documentElement);
  });
  uploadButton.addEventListener("click", () => fileInput.click());
  fileInput.addEventListener("change", () => {
    const file = fileInput.files?.[0];
    if (file) void uploadImage(file);
    fileInput.value = "";
  });
  runButton.addEventListener("click", () => void runLiveCheck());
  exportButton.addEventListener("click", downloadExport);
  exampleSelect.addEventListener("change", () => void selectExample(exampleSelect.value));

  try {
    models = await api.models();
    modelSelect.replaceChildren(
      ...models.map((m) => option(m.model_id, m.display_name)),
    );
    if (models.length > 0) state.modelId = models[0]!.model_id;

    const examples = await api.examples();
    exampleSelect.replaceChildren(
      option("", i18n.t("examplePickerDefault")),
      ...examples.map((ex) => option(ex.id, `${ex.id} — ${ex.claim.slice(0, 60)}`)),
    );
  } catch (err) {
    streamError(state, "startup_failed", String(err));
    renderStream();
  }
  renderRunButton();
}

if (typeof document !== "undefined") {
  void main();
}
