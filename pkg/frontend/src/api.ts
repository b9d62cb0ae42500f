// The API client: every screen action maps 1:1 to one documented endpoint.
// The dashboard performs no governance computation of record — everything
// shown is a server value or a labeled extrapolation from server anchors.

import type {
  Account,
  BuyListItem,
  ChoreBoard,
  ClaimReceipt,
  HeartsRow,
  HouseConfigView,
  PriorityRow,
  ProposalView,
  PurchaseView,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public errorName: string,
    public detail: string,
  ) {
    super(`${errorName}: ${detail}`);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private base: string,
    public house: string,
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
    private apiKey?: string,
  ) {
    this.base = base.replace(/\/+$/, "");
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.apiKey) headers["X-API-Key"] = this.apiKey;
    const response = await this.fetchFn(this.base + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const parsed = text ? JSON.parse(text) : null;
    if (!response.ok) {
      const name = parsed?.error ?? `HTTP ${response.status}`;
      const detail = typeof parsed?.detail === "string" ? parsed.detail : text;
      throw new ApiError(response.status, name, detail);
    }
    return parsed as T;
  }

  // ---- reads ------------------------------------------------------------

  choreBoard(): Promise<ChoreBoard> {
    return this.request("GET", `/houses/${this.house}/chores`);
  }

  proposals(openOnly = false): Promise<ProposalView[]> {
    const query = openOnly ? "?open=true" : "";
    return this.request("GET", `/houses/${this.house}/proposals${query}`);
  }

  priorities(): Promise<PriorityRow[]> {
    return this.request("GET", `/houses/${this.house}/priorities`);
  }

  heartsBoard(): Promise<HeartsRow[]> {
    return this.request("GET", `/houses/${this.house}/hearts`);
  }

  accounts(): Promise<Account[]> {
    return this.request("GET", `/houses/${this.house}/accounts`);
  }

  purchases(month?: string): Promise<PurchaseView[]> {
    const query = month ? `?month=${encodeURIComponent(month)}` : "";
    return this.request("GET", `/houses/${this.house}/purchases${query}`);
  }

  buylist(): Promise<BuyListItem[]> {
    return this.request("GET", `/houses/${this.house}/buylist`);
  }

  config(): Promise<HouseConfigView> {
    return this.request("GET", `/houses/${this.house}/config`);
  }

  purchaseThreshold(priceCents: number, item?: string): Promise<{ min_upvotes: number }> {
    const query = item === undefined ? "" : `&item=${encodeURIComponent(item)}`;
    return this.request(
      "GET",
      `/houses/${this.house}/purchases/threshold?price_cents=${priceCents}${query}`,
    );
  }

  // ---- mutations (the recorded-interaction contract surface) -------------

  claimChore(chore: string, claimant: string): Promise<ClaimReceipt> {
    return this.request("POST", `/houses/${this.house}/chores/${chore}/claim`, {
      claimant,
    });
  }

  castBallot(proposal: string, voter: string, direction: "up" | "down"): Promise<ProposalView> {
    return this.request("POST", `/houses/${this.house}/proposals/${proposal}/ballots`, {
      voter,
      direction,
    });
  }

  submitPreference(resident: string, preferred: string, deprioritized: string): Promise<unknown> {
    return this.request("POST", `/houses/${this.house}/preferences`, {
      resident,
      preferred,
      deprioritized,
    });
  }

  giveKarma(giver: string, recipient: string, source = "dashboard"): Promise<unknown> {
    return this.request("POST", `/houses/${this.house}/karma`, {
      giver,
      recipient,
      source,
    });
  }

  openChallenge(
    challenger: string,
    challengee: string,
    statedHearts: number | null,
    reason: string,
  ): Promise<unknown> {
    return this.request("POST", `/houses/${this.house}/challenges`, {
      challenger,
      challengee,
      stated_hearts: statedHearts,
      reason,
    });
  }

  proposePurchase(
    proposer: string,
    item: string,
    priceCents: number,
    account: string,
  ): Promise<PurchaseView> {
    return this.request("POST", `/houses/${this.house}/purchases`, {
      proposer,
      item,
      price_cents: priceCents,
      account,
    });
  }
}
