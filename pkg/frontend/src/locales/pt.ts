import type { Messages } from "./en.js";

export const pt: Messages = {
  appTitle: "Verificação de tabelas",
  tagline: "Verifique uma afirmação contra a sua tabela, com o raciocínio do modelo transmitido ao vivo.",
  tableSection: "Tabela (CSV editável)",
  tablePlaceholder: "Cole o CSV aqui ou envie uma imagem da tabela…",
  titleLabel: "Título da tabela (opcional)",
  uploadImage: "Enviar imagem da tabela",
  ocrBackendLabel: "Motor de OCR",
  ocrVision: "Modelo de visão (preciso)",
  ocrClassical: "OCR clássico (rápido)",
  ocrRunning: "Reconhecendo a tabela…",
  previewSection: "Pré-visualização ao vivo",
  previewEmpty: "A pré-visualização aparece quando o CSV é analisado.",
  exampleSection: "Exemplo do benchmark",
  examplePickerDefault: "Escolher um exemplo…",
  sourcePage: "Página de origem",
  claimSection: "Afirmação",
  claimPlaceholder: "Escreva a afirmação a verificar contra a tabela…",
  modelLabel: "Modelo",
  formatLabel: "Formato da tabela",
  techniqueLabel: "Técnica de prompting",
  strategyLabel: "Estratégia",
  granularityLabel: "Granularidade de recuperação",
  uiLanguageLabel: "Idioma da interface",
  deepThinking: "Pensamento profundo",
  formatMarkdown: "Markdown",
  formatHtml: "HTML",
  formatJson: "JSON",
  formatNaturalized: "Texto naturalizado",
  techniqueZeroShot: "Zero-shot",
  techniqueCot: "Cadeia de pensamento",
  strategyDirect: "Tabela completa",
  strategyRag: "Podada por recuperação",
  granularityRow: "Linhas",
  granularityColumn: "Colunas",
  granularityCell: "Células",
  runCheck: "Executar verificação",
  streaming: "Verificando…",
  reasoningTitle: "Raciocínio do modelo",
  verdictEntailed: "CONFIRMADA",
  verdictRefuted: "REFUTADA",
  provenanceFallback: "Veredito recuperado por palavras-chave; sem referências de células.",
  droppedCells: "Algumas células citadas não existem na tabela:",
  exportJson: "Exportar JSON",
  errorRateLimited: "Muitas solicitações. Tente novamente em {seconds} segundos.",
  errorGeneric: "A verificação falhou",
  darkMode: "Modo escuro",
};
