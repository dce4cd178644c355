import type { Messages } from "./en.js";

export const fr: Messages = {
  appTitle: "Vérification de tableaux",
  tagline: "Vérifiez une affirmation sur votre tableau, avec le raisonnement du modèle diffusé en direct.",
  tableSection: "Tableau (CSV modifiable)",
  tablePlaceholder: "Collez du CSV ici, ou importez une image de tableau…",
  titleLabel: "Titre du tableau (facultatif)",
  uploadImage: "Importer une image de tableau",
  ocrBackendLabel: "Moteur OCR",
  ocrVision: "Modèle de vision (précis)",
  ocrClassical: "OCR classique (rapide)",
  ocrRunning: "Reconnaissance du tableau…",
  previewSection: "Aperçu en direct",
  previewEmpty: "L'aperçu apparaît dès que le CSV est analysé.",
  exampleSection: "Exemple du benchmark",
  examplePickerDefault: "Choisir un exemple…",
  sourcePage: "Page source",
  claimSection: "Affirmation",
  claimPlaceholder: "Énoncez l'affirmation à vérifier sur le tableau…",
  modelLabel: "Modèle",
  formatLabel: "Format du tableau",
  techniqueLabel: "Technique d'invite",
  strategyLabel: "Stratégie",
  granularityLabel: "Granularité de récupération",
  uiLanguageLabel: "Langue de l'interface",
  deepThinking: "Réflexion approfondie",
  formatMarkdown: "Markdown",
  formatHtml: "HTML",
  formatJson: "JSON",
  formatNaturalized: "Texte naturel",
  techniqueZeroShot: "Zero-shot",
  techniqueCot: "Chaîne de pensée",
  strategyDirect: "Tableau complet",
  strategyRag: "Élagué par récupération",
  granularityRow: "Lignes",
  granularityColumn: "Colonnes",
  granularityCell: "Cellules",
  runCheck: "Lancer la vérification",
  streaming: "Vérification…",
  reasoningTitle: "Raisonnement du modèle",
  verdictEntailed: "CONFIRMÉE",
  verdictRefuted: "RÉFUTÉE",
  provenanceFallback: "Verdict récupéré par mots-clés ; aucune référence de cellule disponible.",
  droppedCells: "Certaines cellules citées n'existent pas dans le tableau :",
  exportJson: "Exporter en JSON",
  errorRateLimited: "Trop de requêtes. Réessayez dans {seconds} secondes.",
  errorGeneric: "Échec de la vérification",
  darkMode: "Mode sombre",
};
