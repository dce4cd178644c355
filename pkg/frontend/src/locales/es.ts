import type { Messages } from "./en.js";

export const es: Messages = {
  appTitle: "Verificación de tablas",
  tagline: "Verifique una afirmación contra su tabla, con el razonamiento del modelo transmitido en vivo.",
  tableSection: "Tabla (CSV editable)",
  tablePlaceholder: "Pegue CSV aquí o suba una imagen de la tabla…",
  titleLabel: "Título de la tabla (opcional)",
  uploadImage: "Subir imagen de tabla",
  ocrBackendLabel: "Motor OCR",
  ocrVision: "Modelo de visión (preciso)",
  ocrClassical: "OCR clásico (rápido)",
  ocrRunning: "Reconociendo la tabla…",
  previewSection: "Vista previa en vivo",
  previewEmpty: "La vista previa aparece cuando el CSV se analiza.",
  exampleSection: "Ejemplo del benchmark",
  examplePickerDefault: "Elegir un ejemplo…",
  sourcePage: "Página de origen",
  claimSection: "Afirmación",
  claimPlaceholder: "Escriba la afirmación a verificar contra la tabla…",
  modelLabel: "Modelo",
  formatLabel: "Formato de tabla",
  techniqueLabel: "Técnica de prompting",
  strategyLabel: "Estrategia",
  granularityLabel: "Granularidad de recuperación",
  uiLanguageLabel: "Idioma de la interfaz",
  deepThinking: "Pensamiento profundo",
  formatMarkdown: "Markdown",
  formatHtml: "HTML",
  formatJson: "JSON",
  formatNaturalized: "Texto naturalizado",
  techniqueZeroShot: "Zero-shot",
  techniqueCot: "Cadena de pensamiento",
  strategyDirect: "Tabla completa",
  strategyRag: "Podada por recuperación",
  granularityRow: "Filas",
  granularityColumn: "Columnas",
  granularityCell: "Celdas",
  runCheck: "Ejecutar verificación",
  streaming: "Verificando…",
  reasoningTitle: "Razonamiento del modelo",
  verdictEntailed: "CONFIRMADA",
  verdictRefuted: "REFUTADA",
  provenanceFallback: "Veredicto recuperado por palabras clave; sin referencias de celdas.",
  droppedCells: "Algunas celdas citadas no existen en la tabla:",
  exportJson: "Exportar JSON",
  errorRateLimited: "Demasiadas solicitudes. Inténtelo de nuevo en {seconds} segundos.",
  errorGeneric: "La verificación falló",
  darkMode: "Modo oscuro",
};
