// The public hearts board, quarter-heart rendering, plus the karma (++)
// and challenge forms. Stakes are symmetric: the loser of a challenge —
// challengee if it passes, challenger if it fails — loses the stated hearts.

import { ApiError } from "../api.js";
import { quarterHearts } from "../format.js";
import type { HeartsRow } from "../types.js";
import { clear, el, type ScreenContext } from "./context.js";

export function renderHeartsBoard(
  container: HTMLElement,
  rows: HeartsRow[],
  ctx: ScreenContext,
): void {
  const doc = container.ownerDocument;
  clear(container);

  const board = el(doc, "div", "hearts-board");
  for (const row of rows) {
    const line = el(doc, "div", "hearts-row");
    line.dataset.resident = row.resident;
    line.append(
      el(doc, "span", "hearts-resident", row.resident),
      el(doc, "span", "hearts-glyphs", quarterHearts(row.hearts)),
      el(doc, "span", "hearts-number", row.hearts.toFixed(2)),
    );
    if (row.sanction !== "none") {
      line.append(el(doc, "span", `sanction sanction-${row.sanction}`, row.sanction));
    }
    board.append(line);
  }
  container.append(board);

  const others = rows.filter((r) => r.resident !== ctx.resident);

  const karmaForm = el(doc, "div", "karma-form");
  karmaForm.append(el(doc, "label", undefined, "give karma (name++): "));
  const karmaSelect = el(doc, "select", "karma-recipient");
  for (const row of others) {
    const option = el(doc, "option", undefined, row.resident);
    option.value = row.resident;
    karmaSelect.append(option);
  }
  const karmaButton = el(doc, "button", "karma-give", "++");
  karmaButton.addEventListener("click", async () => {
    const recipient = karmaSelect.value;
    if (!recipient) return;
    try {
      await ctx.api.giveKarma(ctx.resident, recipient);
      ctx.notify(`${recipient}++ recorded`);
    } catch (error) {
      ctx.notify(error instanceof ApiError ? error.message : String(error), "error");
    }
    await ctx.refresh();
  });
  karmaForm.append(karmaSelect, karmaButton);
  container.append(karmaForm);

  const challengeForm = el(doc, "div", "challenge-form");
  challengeForm.append(el(doc, "label", undefined, "open a challenge: "));
  const challengeSelect = el(doc, "select", "challenge-target");
  for (const row of others) {
    const option = el(doc, "option", undefined, row.resident);
    option.value = row.resident;
    challengeSelect.append(option);
  }
  const stakeInput = el(doc, "input", "challenge-stake");
  stakeInput.type = "number";
  stakeInput.step = "0.25";
  stakeInput.value = "1";
  stakeInput.title = "hearts at stake; the loser pays them";
  const reasonInput = el(doc, "input", "challenge-reason");
  reasonInput.placeholder = "reason";
  const challengeButton = el(doc, "button", "challenge-open", "challenge");
  challengeButton.addEventListener("click", async () => {
    const challengee = challengeSelect.value;
    if (!challengee) return;
    try {
      await ctx.api.openChallenge(
        ctx.resident, challengee, Number(stakeInput.value) || null, reasonInput.value);
      ctx.notify(`challenge against ${challengee} is open for votes`);
    } catch (error) {
      ctx.notify(error instanceof ApiError ? error.message : String(error), "error");
    }
    await ctx.refresh();
  });
  challengeForm.append(challengeSelect, stakeInput, reasonInput, challengeButton);
  container.append(challengeForm);
}
