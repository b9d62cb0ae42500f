// The dashboard shell: a 5-second poll loop re-anchors every displayed
// number from the server; a 1-second display tick advances chore values
// between polls. The server is the arbiter of every race.

import type { ApiClient } from "./api.js";
import { renderBallots } from "./screens/ballots.js";
import { renderChoreBoard, tickChoreValues } from "./screens/choreBoard.js";
import { clear, el, type ScreenContext } from "./screens/context.js";
import { renderHeartsBoard } from "./screens/heartsBoard.js";
import { renderPriorities } from "./screens/priority.js";
import { renderPurchases, type PurchasesState } from "./screens/purchases.js";
import { ValueTicker } from "./ticker.js";
import type {
  Account, BuyListItem, ChoreBoard, HeartsRow, HouseConfigView,
  PriorityRow, ProposalView, PurchaseView,
} from "./types.js";

export const TABS = ["chores", "ballots", "priorities", "hearts", "purchases"] as const;
export type Tab = (typeof TABS)[number];

export interface AppOptions {
  pollMs?: number;
  tickMs?: number;
  now?: () => number;
}

interface AppState {
  board: ChoreBoard | null;
  proposals: ProposalView[];
  priorities: PriorityRow[];
  hearts: HeartsRow[];
  accounts: Account[];
  purchases: PurchaseView[];
  buylist: BuyListItem[];
  config: HouseConfigView | null;
}

export class App {
  readonly ticker = new ValueTicker();
  state: AppState = {
    board: null, proposals: [], priorities: [], hearts: [],
    accounts: [], purchases: [], buylist: [], config: null,
  };
  activeTab: Tab = "chores";
  private pollMs: number;
  private tickMs: number;
  private now: () => number;
  private timers: ReturnType<typeof setInterval>[] = [];
  private content: HTMLElement;
  private status: HTMLElement;

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    private resident: string,
    options: AppOptions = {},
  ) {
    this.pollMs = options.pollMs ?? 5000;
    this.tickMs = options.tickMs ?? 1000;
    this.now = options.now ?? (() => Date.now());
    const doc = root.ownerDocument;
    clear(root);

    const header = el(doc, "header", "topbar");
    header.append(el(doc, "h1", undefined, `house: ${api.house} · you: ${resident}`));
    const nav = el(doc, "nav", "tabs");
    for (const tab of TABS) {
      const button = el(doc, "button", "tab", tab);
      button.dataset.tab = tab;
      button.addEventListener("click", () => {
        this.activeTab = tab;
        this.render();
      });
      nav.append(button);
    }
    header.append(nav);
    this.status = el(doc, "div", "status");
    this.content = el(doc, "main", "content");
    root.append(header, this.status, this.content);
  }

  notify = (message: string, kind: "info" | "error" = "info"): void => {
    this.status.textContent = message;
    this.status.className = `status status-${kind}`;
  };

  private context(): ScreenContext {
    return {
      api: this.api,
      resident: this.resident,
      now: this.now,
      notify: this.notify,
      refresh: () => this.pollOnce(),
    };
  }

  async pollOnce(): Promise<void> {
    const [board, proposals, priorities, hearts, accounts, purchases, buylist] =
      await Promise.all([
        this.api.choreBoard(),
        this.api.proposals(),
        this.api.priorities(),
        this.api.heartsBoard(),
        this.api.accounts(),
        this.api.purchases(),
        this.api.buylist(),
      ]);
    if (this.state.config === null) {
      this.state.config = await this.api.config();
    }
    this.state = { ...this.state, board, proposals, priorities, hearts,
                   accounts, purchases, buylist };
    // every poll re-anchors the client-side extrapolation
    for (const chore of board.chores) {
      this.ticker.reanchor(chore.id, chore.value, chore.rate_per_hour, board.at);
    }
    this.ticker.retain(board.chores.map((c) => c.id));
    this.render();
  }

  render(): void {
    this.root.querySelectorAll<HTMLElement>(".tab").forEach((button) => {
      button.classList.toggle("tab-active", button.dataset.tab === this.activeTab);
    });
    const ctx = this.context();
    switch (this.activeTab) {
      case "chores":
        if (this.state.board) {
          renderChoreBoard(this.content, this.state.board, this.ticker, ctx);
        }
        break;
      case "ballots":
        renderBallots(this.content, this.state.proposals, ctx);
        break;
      case "priorities":
        renderPriorities(this.content, this.state.priorities, ctx);
        break;
      case "hearts":
        renderHeartsBoard(this.content, this.state.hearts, ctx);
        break;
      case "purchases":
        if (this.state.config) {
          const purchasesState: PurchasesState = {
            accounts: this.state.accounts,
            purchases: this.state.purchases,
            buylist: this.state.buylist,
            config: this.state.config,
          };
          renderPurchases(this.content, purchasesState, ctx);
        }
        break;
    }
  }

  tickDisplays(): void {
    if (this.activeTab === "chores") {
      tickChoreValues(this.content, this.ticker, this.now());
    }
  }

  async start(): Promise<void> {
    await this.pollOnce();
    this.timers.push(setInterval(() => void this.pollOnce().catch(
      (error) => this.notify(String(error), "error")), this.pollMs));
    this.timers.push(setInterval(() => this.tickDisplays(), this.tickMs));
  }

  stop(): void {
    for (const timer of this.timers) clearInterval(timer);
    this.timers = [];
  }
}
