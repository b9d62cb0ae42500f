import type { ApiClient } from "../api.js";

// Shared plumbing handed to every screen: the API client, who is acting,
// a clock, a status line, and a way to force an immediate re-poll.
export interface ScreenContext {
  api: ApiClient;
  resident: string;
  now: () => number;
  notify: (message: string, kind?: "info" | "error") => void;
  refresh: () => Promise<void>;
}

export function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}
