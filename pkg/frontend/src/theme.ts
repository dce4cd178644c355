/** Dark-mode toggle, persisted locally. */

const STORAGE_KEY = "tablecheck-theme";

export type Theme = "light" | "dark";

export function savedTheme(storage: Pick<Storage, "getItem"> | null): Theme {
  const saved = storage?.getItem(STORAGE_KEY);
  return saved === "dark" ? "dark" : "light";
}

export function toggleTheme(
  current: Theme,
  storage: Pick<Storage, "setItem"> | null,
): Theme {
  const next: Theme = current === "dark" ? "light" : "dark";
  storage?.setItem(STORAGE_KEY, next);
  return next;
}

export function applyTheme(theme: Theme, root: { dataset: DOMStringMap }): void {
  root.dataset.theme = theme;
}
