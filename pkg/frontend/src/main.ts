// Bootstrap: connection settings come from the query string, the acting
// resident from the query string or a stored prompt.
//
//   index.html?api=http://localhost:8000&house=h1&resident=r3[&key=...]

import { ApiClient } from "./api.js";
import { App } from "./app.js";

function setting(name: string, fallback: string): string {
  const params = new URLSearchParams(window.location.search);
  const fromQuery = params.get(name);
  if (fromQuery) {
    window.localStorage.setItem(`commons.${name}`, fromQuery);
    return fromQuery;
  }
  const stored = window.localStorage.getItem(`commons.${name}`);
  if (stored) return stored;
  const entered = window.prompt(`${name}?`, fallback) ?? fallback;
  window.localStorage.setItem(`commons.${name}`, entered);
  return entered;
}

const api = setting("api", "http://localhost:8000");
const house = setting("house", "h1");
const resident = setting("resident", "");
const key = new URLSearchParams(window.location.search).get("key") ?? undefined;

const root = document.getElementById("app");
if (root && resident) {
  const client = new ApiClient(api, house, undefined, key);
  const app = new App(root, client, resident);
  void app.start().catch((error) => {
    root.textContent = `cannot reach ${api}: ${error}`;
  });
} else if (root) {
  root.textContent = "a resident id is required (add ?resident=... to the URL)";
}
