import type { Messages } from "./en.js";

export const zh: Messages = {
  appTitle: "表格事实核查",
  tagline: "对照您的表格核查一条断言，实时查看模型的推理过程。",
  tableSection: "表格（可编辑 CSV）",
  tablePlaceholder: "在此粘贴 CSV，或上传表格图片…",
  titleLabel: "表格标题（可选）",
  uploadImage: "上传表格图片",
  ocrBackendLabel: "OCR 引擎",
  ocrVision: "视觉模型（更准确）",
  ocrClassical: "经典 OCR（更快）",
  ocrRunning: "正在识别表格…",
  previewSection: "实时预览",
  previewEmpty: "CSV 解析成功后将显示预览。",
  exampleSection: "基准示例",
  examplePickerDefault: "选择一个示例…",
  sourcePage: "来源页面",
  claimSection: "断言",
  claimPlaceholder: "输入要对照表格核查的断言…",
  modelLabel: "模型",
  formatLabel: "表格格式",
  techniqueLabel: "提示技术",
  strategyLabel: "策略",
  granularityLabel: "检索粒度",
  uiLanguageLabel: "界面语言",
  deepThinking: "深度思考",
  formatMarkdown: "Markdown",
  formatHtml: "HTML",
  formatJson: "JSON",
  formatNaturalized: "自然语言文本",
  techniqueZeroShot: "零样本",
  techniqueCot: "思维链",
  strategyDirect: "完整表格",
  strategyRag: "检索裁剪",
  granularityRow: "按行",
  granularityColumn: "按列",
  granularityCell: "按单元格",
  runCheck: "开始实时核查",
  streaming: "核查中…",
  reasoningTitle: "模型推理",
  verdictEntailed: "成立",
  verdictRefuted: "不成立",
  provenanceFallback: "结论由关键词恢复；没有可用的单元格引用。",
  droppedCells: "部分被引用的单元格在表格中不存在：",
  exportJson: "导出 JSON",
  errorRateLimited: "请求过多。请在 {seconds} 秒后重试。",
  errorGeneric: "核查失败",
  darkMode: "深色模式",
};
