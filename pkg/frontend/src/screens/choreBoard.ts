// The chore board: live point values ticking client-side from the last
// poll's anchors, sorted so the most valuable work is on top. One tap
// claims at the server's frozen value; engine errors surface verbatim.

import { ApiError } from "../api.js";
import { formatPoints } from "../format.js";
import type { ValueTicker } from "../ticker.js";
import type { ChoreBoard } from "../types.js";
import { clear, el, type ScreenContext } from "./context.js";

const pendingClaims = new Set<string>();

export function renderChoreBoard(
  container: HTMLElement,
  board: ChoreBoard,
  ticker: ValueTicker,
  ctx: ScreenContext,
): void {
  const doc = container.ownerDocument;
  clear(container);
  const now = ctx.now();
  const rows = [...board.chores].sort(
    (a, b) => (ticker.valueAt(b.id, now) ?? b.value) - (ticker.valueAt(a.id, now) ?? a.value),
  );
  for (const chore of rows) {
    const row = el(doc, "div", "chore-row");
    row.dataset.chore = chore.id;

    const name = el(doc, "span", "chore-name", chore.name);
    name.title = chore.description;

    const value = el(doc, "span", "chore-value",
      formatPoints(ticker.valueAt(chore.id, now) ?? chore.value));
    value.dataset.tickValue = chore.id;

    const rate = el(doc, "span", "chore-rate",
      `+${chore.rate_per_hour.toFixed(2)}/h`);
    rate.title = "server-reported accrual rate; value between polls is extrapolated";

    const button = el(doc, "button", "claim-button",
      pendingClaims.has(chore.id) ? "pending…" : "claim");
    button.disabled = pendingClaims.has(chore.id);
    button.addEventListener("click", async () => {
      button.disabled = true;
      pendingClaims.add(chore.id);
      button.textContent = "pending…";
      try {
        const receipt = await ctx.api.claimChore(chore.id, ctx.resident);
        ctx.notify(
          `claimed ${chore.name} at ${formatPoints(receipt.value)} points — `
          + `verification poll ${receipt.proposal_id} is open`,
        );
      } catch (error) {
        ctx.notify(error instanceof ApiError ? error.message : String(error), "error");
      } finally {
        pendingClaims.delete(chore.id);
        await ctx.refresh();
      }
    });

    row.append(name, value, rate, button);
    container.append(row);
  }
  if (!rows.length) {
    container.append(el(doc, "p", "empty", "no active chores"));
  }
}

/** Advance displayed values between polls; called on a short timer. */
export function tickChoreValues(root: HTMLElement, ticker: ValueTicker, now: number): void {
  root.querySelectorAll<HTMLElement>("[data-tick-value]").forEach((node) => {
    const id = node.dataset.tickValue;
    if (!id) return;
    const value = ticker.valueAt(id, now);
    if (value !== null) node.textContent = formatPoints(value);
  });
}
