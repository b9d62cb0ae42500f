// Open polls with countdowns and tallies. Voting buttons disable once a
// poll's window has elapsed; a revote simply overwrites the earlier ballot.

import { ApiError } from "../api.js";
import { formatRemaining } from "../format.js";
import type { ProposalView } from "../types.js";
import { clear, el, type ScreenContext } from "./context.js";

function describe(proposal: ProposalView): string {
  const payload = proposal.payload as Record<string, unknown>;
  switch (proposal.kind) {
    case "choreClaim":
      return `chore claim ${payload["claim_id"] ?? ""}`;
    case "heartChallenge":
      return `challenge ${payload["challenge_id"] ?? ""}`;
    case "purchase":
      return `purchase ${payload["purchase_id"] ?? ""}`;
    case "choreAmendment":
      return `chore list: ${payload["action"]} ${payload["name"] ?? payload["chore"] ?? ""}`;
    case "buyListAmendment":
      return `buy list: ${payload["action"]} ${payload["name"] ?? payload["item"] ?? ""}`;
    case "accountAmendment":
      return `accounts: ${payload["action"]} ${payload["name"] ?? payload["account"] ?? ""}`;
    default:
      return proposal.kind;
  }
}

export function renderBallots(
  container: HTMLElement,
  proposals: ProposalView[],
  ctx: ScreenContext,
): void {
  const doc = container.ownerDocument;
  clear(container);
  const open = proposals.filter((p) => !p.resolved);
  for (const proposal of open) {
    const row = el(doc, "div", "proposal-row");
    row.dataset.proposal = proposal.id;
    const closed = proposal.remaining_ms <= 0;

    const title = el(doc, "span", "proposal-title",
      `${describe(proposal)} · by ${proposal.proposer ?? "system"}`);
    const tally = el(doc, "span", "proposal-tally",
      `▲${proposal.upvotes} ▼${proposal.downvotes} · needs ${proposal.min_upvotes}`
      + (proposal.require_majority ? " + majority" : ""));
    const countdown = el(doc, "span", "proposal-countdown",
      closed ? "awaiting resolution" : formatRemaining(proposal.remaining_ms));

    const vote = async (direction: "up" | "down") => {
      try {
        await ctx.api.castBallot(proposal.id, ctx.resident, direction);
        ctx.notify(`ballot recorded on ${proposal.id}`);
      } catch (error) {
        ctx.notify(error instanceof ApiError ? error.message : String(error), "error");
      }
      await ctx.refresh();
    };
    const up = el(doc, "button", "vote-up", "▲ up");
    const down = el(doc, "button", "vote-down", "▼ down");
    up.disabled = down.disabled = closed;
    up.addEventListener("click", () => void vote("up"));
    down.addEventListener("click", () => void vote("down"));

    row.append(title, tally, countdown, up, down);
    container.append(row);
  }
  if (!open.length) {
    container.append(el(doc, "p", "empty", "no open polls"));
  }
}
