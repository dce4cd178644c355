import type { Messages } from "./en.js";

export const it: Messages = {
  appTitle: "Verifica di tabelle",
  tagline: "Verifica un'affermazione sulla tua tabella, con il ragionamento del modello in streaming.",
  tableSection: "Tabella (CSV modificabile)",
  tablePlaceholder: "Incolla il CSV qui, o carica un'immagine della tabella…",
  titleLabel: "Titolo della tabella (facoltativo)",
  uploadImage: "Carica immagine della tabella",
  ocrBackendLabel: "Motore OCR",
  ocrVision: "Modello di visione (accurato)",
  ocrClassical: "OCR classico (veloce)",
  ocrRunning: "Riconoscimento della tabella…",
  previewSection: "Anteprima dal vivo",
  previewEmpty: "L'anteprima appare quando il CSV viene analizzato.",
  exampleSection: "Esempio del benchmark",
  examplePickerDefault: "Scegli un esempio…",
  sourcePage: "Pagina di origine",
  claimSection: "Affermazione",
  claimPlaceholder: "Scrivi l'affermazione da verificare sulla tabella…",
  modelLabel: "Modello",
  formatLabel: "Formato tabella",
  techniqueLabel: "Tecnica di prompting",
  strategyLabel: "Strategia",
  granularityLabel: "Granularità di recupero",
  uiLanguageLabel: "Lingua dell'interfaccia",
  deepThinking: "Pensiero profondo",
  formatMarkdown: "Markdown",
  formatHtml: "HTML",
  formatJson: "JSON",
  formatNaturalized: "Testo naturalizzato",
  techniqueZeroShot: "Zero-shot",
  techniqueCot: "Catena di pensiero",
  strategyDirect: "Tabella intera",
  strategyRag: "Potata per recupero",
  granularityRow: "Righe",
  granularityColumn: "Colonne",
  granularityCell: "Celle",
  runCheck: "Avvia verifica",
  streaming: "Verifica in corso…",
  reasoningTitle: "Ragionamento del modello",
  verdictEntailed: "CONFERMATA",
  verdictRefuted: "CONFUTATA",
  provenanceFallback: "Verdetto recuperato da parole chiave; nessun riferimento alle celle.",
  droppedCells: "Alcune celle citate non esistono nella tabella:",
  exportJson: "Esporta JSON",
  errorRateLimited: "Troppe richieste. Riprova tra {seconds} secondi.",
  errorGeneric: "Verifica non riuscita",
  darkMode: "Modalità scura",
};
