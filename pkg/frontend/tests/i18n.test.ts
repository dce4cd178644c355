import { describe, expect, it } from "vitest";

import { I18n, LOCALE_NAMES, LOCALES } from "../src/i18n.js";
import { en } from "../src/locales/en.js";

class FakeStorage {
  private store = new Map<string, string>();
  getItem(key: string) {
    return this.store.get(key) ?? null;
  }
  setItem(key: string, value: string) {
    this.store.set(key, value);
  }
}

describe("locale bundles", () => {
  it("ships exactly eight languages", () => {
    expect(Object.keys(LOCALES)).toHaveLength(8);
    expect(Object.keys(LOCALE_NAMES).sort()).toEqual(Object.keys(LOCALES).sort());
  });

  it("every bundle covers the full key set", () => {
    const keys = Object.keys(en).sort();
    for (const [tag, bundle] of Object.entries(LOCALES)) {
      expect(Object.keys(bundle).sort(), tag).toEqual(keys);
      for (const value of Object.values(bundle)) {
        expect(value.trim()).not.toBe("");
      }
    }
  });
});

describe("I18n", () => {
  it("switching locale changes chrome strings", () => {
    const i18n = new I18n(new FakeStorage());
    const before = i18n.t("runCheck");
    i18n.setLocale("de");
    expect(i18n.t("runCheck")).not.toBe(before);
    expect(i18n.locale).toBe("de");
  });

  it("persists the chosen locale", () => {
    const storage = new FakeStorage();
    new I18n(storage).setLocale("zh");
    expect(new I18n(storage).locale).toBe("zh");
  });

  it("rejects unknown locales", () => {
    expect(() => new I18n(new FakeStorage()).setLocale("tlh")).toThrow();
  });

  it("substitutes parameters", () => {
    const i18n = new I18n(new FakeStorage());
    expect(i18n.t("errorRateLimited", { seconds: 7 })).toContain("7");
  });

  it("arabic switches direction to rtl", () => {
    const i18n = new I18n(new FakeStorage());
    expect(i18n.direction).toBe("ltr");
    i18n.setLocale("ar");
    expect(i18n.direction).toBe("rtl");
  });

  it("notifies listeners on change", () => {
    const i18n = new I18n(new FakeStorage());
    let fired = 0;
    i18n.onChange(() => fired++);
    i18n.setLocale("fr");
    expect(fired).toBe(1);
  });
});
