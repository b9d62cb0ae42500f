// Recorded-fetch double: captures every request the client makes and
// serves canned responses keyed by "METHOD /path".

import type { FetchLike } from "../src/api.js";

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
}

export interface FetchDouble {
  fetch: FetchLike;
  calls: RecordedCall[];
  respond: (key: string, data: unknown, status?: number) => void;
}

export function makeFetchDouble(): FetchDouble {
  const calls: RecordedCall[] = [];
  const responses = new Map<string, { data: unknown; status: number }>();

  const fetchFn: FetchLike = async (input, init) => {
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(init.body as string) : undefined;
    calls.push({ method, path: input, body });
    const exact = responses.get(`${method} ${input}`);
    const pathOnly = responses.get(`${method} ${input.split("?")[0]}`);
    const found = exact ?? pathOnly;
    if (!found) {
      return new Response(JSON.stringify({ error: "NotStubbed", detail: input }), {
        status: 500,
      });
    }
    return new Response(JSON.stringify(found.data), { status: found.status });
  };

  return {
    fetch: fetchFn,
    calls,
    respond: (key, data, status = 200) => responses.set(key, { data, status }),
  };
}

export function flushTasks(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

export const EMPTY_HOUSE = {
  board: { at: 0, chores: [] },
  proposals: [],
  priorities: [],
  hearts: [],
  accounts: [],
  purchases: [],
  buylist: [],
  config: {
    threshold_step_cents: 5000,
    freeform_extra_upvotes: 1,
  },
};

export function stubHouse(double: FetchDouble, house: string,
                          overrides: Partial<typeof EMPTY_HOUSE> = {}): void {
  const data = { ...EMPTY_HOUSE, ...overrides };
  double.respond(`GET /houses/${house}/chores`, data.board);
  double.respond(`GET /houses/${house}/proposals`, data.proposals);
  double.respond(`GET /houses/${house}/priorities`, data.priorities);
  double.respond(`GET /houses/${house}/hearts`, data.hearts);
  double.respond(`GET /houses/${house}/accounts`, data.accounts);
  double.respond(`GET /houses/${house}/purchases`, data.purchases);
  double.respond(`GET /houses/${house}/buylist`, data.buylist);
  double.respond(`GET /houses/${house}/config`, data.config);
}
