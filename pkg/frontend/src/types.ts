// Response shapes from the commons-engine HTTP API.

export interface ChoreEntry {
  id: string;
  name: string;
  description: string;
  value: number;
  rate_per_hour: number;
  weight: number;
}

export interface ChoreBoard {
  at: number;
  chores: ChoreEntry[];
}

export interface ProposalView {
  id: string;
  kind: string;
  proposer: string | null;
  opened_at: number;
  due_at: number;
  remaining_ms: number;
  min_upvotes: number;
  require_majority: boolean;
  payload: Record<string, unknown>;
  upvotes: number;
  downvotes: number;
  resolved: boolean;
  outcome: string | null;
}

export interface HeartsRow {
  resident: string;
  hearts: number;
  sanction: "none" | "warning" | "financial";
}

export interface PriorityRow {
  chore: string;
  name: string;
  weight: number;
  rate_per_hour: number;
}

export interface Account {
  id: string;
  name: string;
  balance_cents: number;
  monthly_refill_cents: number;
  created_at: number;
}

export interface PurchaseView {
  id: string;
  item: string;
  listed: boolean;
  price_cents: number;
  account: string;
  proposer: string;
  at: number;
  month: string;
  proposal_id: string;
  status: string;
  min_upvotes?: number;
}

export interface BuyListItem {
  id: string;
  name: string;
  vendor_hint: string;
  typical_price_cents: number;
  active: boolean;
}

export interface HouseConfigView {
  threshold_step_cents: number;
  freeform_extra_upvotes: number;
  [key: string]: unknown;
}

export interface ClaimReceipt {
  id: string;
  chore: string;
  claimant: string;
  value: number;
  at: number;
  month: string;
  proposal_id: string;
  status: string;
}
