/**
 * Interface localization. All user-visible chrome strings live in the
 * per-language bundles under locales/; the selected tag doubles as the
 * verify request's output_language.
 */

import { ar } from "./locales/ar.js";
import { de } from "./locales/de.js";
import { en, type MessageKey, type Messages } from "./locales/en.js";
import { es } from "./locales/es.js";
import { fr } from "./locales/fr.js";
import { it } from "./locales/it.js";
import { pt } from "./locales/pt.js";
import { zh } from "./locales/zh.js";

export const LOCALES: Record<string, Messages> = { en, fr, de, es, it, pt, zh, ar };

export const LOCALE_NAMES: Record<string, string> = {
  en: "English",
  fr: "Français",
  de: "Deutsch",
  es: "Español",
  it: "Italiano",
  pt: "Português",
  zh: "中文",
  ar: "العربية",
};

const STORAGE_KEY = "tablecheck-locale";
const RTL_LOCALES = new Set(["ar"]);

export class I18n {
  private tag = "en";
  private listeners: Array<() => void> = [];

  constructor(private storage: Pick<Storage, "getItem" | "setItem"> | null = null) {
    const saved = storage?.getItem(STORAGE_KEY);
    if (saved && saved in LOCALES) this.tag = saved;
  }

  get locale(): string {
    return this.tag;
  }

  get direction(): "ltr" | "rtl" {
    return RTL_LOCALES.has(this.tag) ? "rtl" : "ltr";
  }

  setLocale(tag: string): void {
    if (!(tag in LOCALES)) throw new Error(`unknown locale ${tag}`);
    this.tag = tag;
    this.storage?.setItem(STORAGE_KEY, tag);
    for (const listener of this.listeners) listener();
  }

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  t(key: MessageKey, params?: Record<string, string | number>): string {
    let text: string = LOCALES[this.tag]?.[key] ?? en[key];
    if (params) {
      for (const [name, value] of Object.entries(params)) {
        text = text.replace(`{${name}}`, String(value));
      }
    }
    return text;
  }
}
