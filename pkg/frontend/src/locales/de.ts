import type { Messages } from "./en.js";

export const de: Messages = {
  appTitle: "Tabellen-Faktencheck",
  tagline: "Prüfen Sie eine Behauptung gegen Ihre Tabelle, mit live gestreamter Modellbegründung.",
  tableSection: "Tabelle (editierbares CSV)",
  tablePlaceholder: "CSV hier einfügen oder ein Tabellenbild hochladen…",
  titleLabel: "Tabellentitel (optional)",
  uploadImage: "Tabellenbild hochladen",
  ocrBackendLabel: "OCR-Engine",
  ocrVision: "Vision-Modell (genau)",
  ocrClassical: "Klassische OCR (schnell)",
  ocrRunning: "Tabelle wird erkannt…",
  previewSection: "Live-Vorschau",
  previewEmpty: "Die Vorschau erscheint, sobald das CSV geparst ist.",
  exampleSection: "Benchmark-Beispiel",
  examplePickerDefault: "Beispiel wählen…",
  sourcePage: "Quellseite",
  claimSection: "Behauptung",
  claimPlaceholder: "Formulieren Sie die zu prüfende Behauptung…",
  modelLabel: "Modell",
  formatLabel: "Tabellenformat",
  techniqueLabel: "Prompt-Technik",
  strategyLabel: "Strategie",
  granularityLabel: "Retrieval-Granularität",
  uiLanguageLabel: "Oberflächensprache",
  deepThinking: "Tiefes Nachdenken",
  formatMarkdown: "Markdown",
  formatHtml: "HTML",
  formatJson: "JSON",
  formatNaturalized: "Naturalisierter Text",
  techniqueZeroShot: "Zero-Shot",
  techniqueCot: "Gedankenkette",
  strategyDirect: "Ganze Tabelle",
  strategyRag: "Retrieval-gekürzt",
  granularityRow: "Zeilen",
  granularityColumn: "Spalten",
  granularityCell: "Zellen",
  runCheck: "Live-Prüfung starten",
  streaming: "Prüfung läuft…",
  reasoningTitle: "Begründung des Modells",
  verdictEntailed: "BESTÄTIGT",
  verdictRefuted: "WIDERLEGT",
  provenanceFallback: "Urteil aus Schlüsselwörtern rekonstruiert; keine Zellverweise verfügbar.",
  droppedCells: "Einige zitierte Zellen existieren nicht in der Tabelle:",
  exportJson: "Als JSON exportieren",
  errorRateLimited: "Zu viele Anfragen. Versuchen Sie es in {seconds} Sekunden erneut.",
  errorGeneric: "Prüfung fehlgeschlagen",
  darkMode: "Dunkelmodus",
};
