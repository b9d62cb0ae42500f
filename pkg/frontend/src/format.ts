// Small display helpers: countdowns, money, quarter-heart strings.

export function formatRemaining(ms: number): string {
  if (ms <= 0) return "due";
  const minutes = Math.floor(ms / 60_000);
  if (minutes < 1) return "<1m";
  const days = Math.floor(minutes / 1440);
  const hours = Math.floor((minutes % 1440) / 60);
  const mins = minutes % 60;
  if (days > 0) return `${days}d ${hours}h`;
  if (hours > 0) return `${hours}h ${String(mins).padStart(2, "0")}m`;
  return `${mins}m`;
}

export function formatMoney(cents: number): string {
  const sign = cents < 0 ? "-" : "";
  const absolute = Math.abs(cents);
  return `${sign}$${Math.floor(absolute / 100)}.${String(absolute % 100).padStart(2, "0")}`;
}

export function formatPoints(value: number): string {
  return value.toFixed(1);
}

/** Render a balance as hearts in quarter steps: full, ¾, ½, ¼, empty. */
export function quarterHearts(balance: number, max = 7): string {
  const quarters = Math.round(balance * 4);
  const glyphs: string[] = [];
  for (let slot = 0; slot < max; slot++) {
    const filled = Math.max(0, Math.min(4, quarters - slot * 4));
    glyphs.push(["♡", "♡¼", "♡½", "♡¾", "♥"][filled] as string);
  }
  return glyphs.join(" ");
}
