// Client-side value extrapolation between polls.
//
// The server reports each chore's value and accrual rate at a poll instant;
// between polls the display advances linearly from that anchor. Every poll
// re-anchors, so a server-side change (someone else claimed) is reflected
// within one poll period. Extrapolated figures are display-only.

const HOUR_MS = 3_600_000;

export interface Anchor {
  value: number;
  ratePerHour: number;
  anchoredAt: number;
}

export class ValueTicker {
  private anchors = new Map<string, Anchor>();

  reanchor(id: string, value: number, ratePerHour: number, at: number): void {
    this.anchors.set(id, { value, ratePerHour, anchoredAt: at });
  }

  /** Drop anchors for ids no longer present (retired chores). */
  retain(ids: Iterable<string>): void {
    const keep = new Set(ids);
    for (const key of [...this.anchors.keys()]) {
      if (!keep.has(key)) this.anchors.delete(key);
    }
  }

  valueAt(id: string, now: number): number | null {
    const anchor = this.anchors.get(id);
    if (!anchor) return null;
    const elapsed = Math.max(0, now - anchor.anchoredAt);
    return anchor.value + (anchor.ratePerHour * elapsed) / HOUR_MS;
  }

  anchorOf(id: string): Anchor | null {
    return this.anchors.get(id) ?? null;
  }
}
