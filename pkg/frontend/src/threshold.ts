// Purchase approval threshold, mirrored from the engine for the instant
// "needs N upvotes" label. A contract test pins this to the engine's own
// computation; the engine remains the authority at proposal time.

export function minUpvotesForPrice(
  priceCents: number,
  stepCents: number,
  listed: boolean,
  freeformExtra: number,
): number {
  let votes = 1 + Math.floor(priceCents / stepCents);
  if (!listed) votes += freeformExtra;
  return votes;
}

export function thresholdLabel(
  priceCents: number,
  stepCents: number,
  listed: boolean,
  freeformExtra: number,
): string {
  const votes = minUpvotesForPrice(priceCents, stepCents, listed, freeformExtra);
  return votes === 1 ? "needs 1 upvote" : `needs ${votes} upvotes`;
}
