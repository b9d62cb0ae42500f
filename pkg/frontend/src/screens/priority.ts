// Priority nudging: the current distribution as a bar, plus exactly one
// pairwise question at a time — never a full ranking form. Each answer
// posts one preference input; the bar updates on the next poll.

import { ApiError } from "../api.js";
import type { PriorityRow } from "../types.js";
import { clear, el, type ScreenContext } from "./context.js";

let pairCursor = 0;

export function currentPair(priorities: PriorityRow[], cursor = pairCursor):
  [PriorityRow, PriorityRow] | null {
  if (priorities.length < 2) return null;
  const n = priorities.length;
  const pairs: Array<[number, number]> = [];
  for (let i = 0; i < n; i++) {
    for (let j = i + 1; j < n; j++) pairs.push([i, j]);
  }
  const pick = pairs[cursor % pairs.length];
  if (!pick) return null;
  const [i, j] = pick;
  const a = priorities[i];
  const b = priorities[j];
  return a && b ? [a, b] : null;
}

export function renderPriorities(
  container: HTMLElement,
  priorities: PriorityRow[],
  ctx: ScreenContext,
): void {
  const doc = container.ownerDocument;
  clear(container);

  const bar = el(doc, "div", "priority-bar");
  for (const row of [...priorities].sort((x, y) => y.weight - x.weight)) {
    const segment = el(doc, "div", "priority-segment");
    segment.style.width = `${(row.weight * 100).toFixed(2)}%`;
    segment.title = `${row.name}: ${(row.weight * 100).toFixed(1)}% · +${row.rate_per_hour.toFixed(2)}/h`;
    segment.append(el(doc, "span", "priority-label",
      `${row.name} ${(row.weight * 100).toFixed(0)}%`));
    bar.append(segment);
  }
  container.append(bar);

  const pair = currentPair(priorities);
  if (!pair) {
    container.append(el(doc, "p", "empty", "need at least two chores"));
    return;
  }
  const [first, second] = pair;
  const question = el(doc, "div", "pair-question");
  question.append(el(doc, "p", "pair-prompt", "Which should earn points faster right now?"));

  const submit = async (preferred: PriorityRow, deprioritized: PriorityRow) => {
    try {
      await ctx.api.submitPreference(ctx.resident, preferred.chore, deprioritized.chore);
      ctx.notify(`noted: ${preferred.name} over ${deprioritized.name}`);
      pairCursor += 1;
    } catch (error) {
      ctx.notify(error instanceof ApiError ? error.message : String(error), "error");
    }
    await ctx.refresh();
  };

  const pickFirst = el(doc, "button", "pair-choice", `${first.name} over ${second.name}`);
  pickFirst.dataset.preferred = first.chore;
  pickFirst.addEventListener("click", () => void submit(first, second));
  const pickSecond = el(doc, "button", "pair-choice", `${second.name} over ${first.name}`);
  pickSecond.dataset.preferred = second.chore;
  pickSecond.addEventListener("click", () => void submit(second, first));
  const skip = el(doc, "button", "pair-skip", "skip this pair");
  skip.addEventListener("click", async () => {
    pairCursor += 1;
    await ctx.refresh();
  });

  question.append(pickFirst, pickSecond, skip);
  container.append(question);
}

export function resetPairCursor(): void {
  pairCursor = 0;
}
