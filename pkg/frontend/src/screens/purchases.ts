// Accounts, purchase history, and the proposal form with its live
// "needs N upvotes" label. The label mirrors the engine's threshold
// formula from server-supplied config (contract-tested); the engine's own
// computation governs at proposal time.

import { ApiError } from "../api.js";
import { formatMoney } from "../format.js";
import { thresholdLabel } from "../threshold.js";
import type { Account, BuyListItem, HouseConfigView, PurchaseView } from "../types.js";
import { clear, el, type ScreenContext } from "./context.js";

export interface PurchasesState {
  accounts: Account[];
  purchases: PurchaseView[];
  buylist: BuyListItem[];
  config: HouseConfigView;
}

export function renderPurchases(
  container: HTMLElement,
  state: PurchasesState,
  ctx: ScreenContext,
): void {
  const doc = container.ownerDocument;
  clear(container);

  const accountsBox = el(doc, "div", "accounts");
  for (const account of state.accounts) {
    const row = el(doc, "div", "account-row");
    row.dataset.account = account.id;
    row.append(
      el(doc, "span", "account-name", account.name),
      el(doc, "span", "account-balance", formatMoney(account.balance_cents)),
      el(doc, "span", "account-refill",
        `refills ${formatMoney(account.monthly_refill_cents)}/mo`),
    );
    accountsBox.append(row);
  }
  container.append(accountsBox);

  const form = el(doc, "div", "purchase-form");
  const itemInput = el(doc, "input", "purchase-item");
  itemInput.placeholder = "what ran low?";
  const datalist = el(doc, "datalist");
  datalist.id = "buylist-items";
  for (const item of state.buylist) {
    const option = el(doc, "option");
    option.value = item.name;
    datalist.append(option);
  }
  itemInput.setAttribute("list", datalist.id);

  const priceInput = el(doc, "input", "purchase-price");
  priceInput.type = "number";
  priceInput.min = "0.01";
  priceInput.step = "0.01";
  priceInput.placeholder = "price $";

  const accountSelect = el(doc, "select", "purchase-account");
  for (const account of state.accounts) {
    const option = el(doc, "option", undefined,
      `${account.name} (${formatMoney(account.balance_cents)})`);
    option.value = account.id;
    accountSelect.append(option);
  }

  const label = el(doc, "span", "threshold-label", "");
  const updateLabel = () => {
    const cents = Math.round(Number(priceInput.value) * 100);
    if (!cents || cents <= 0) {
      label.textContent = "";
      return;
    }
    const listed = state.buylist.some((i) => i.name === itemInput.value);
    label.textContent = thresholdLabel(
      cents, state.config.threshold_step_cents, listed,
      state.config.freeform_extra_upvotes)
      + (listed ? "" : " (off-list item)");
  };
  priceInput.addEventListener("input", updateLabel);
  itemInput.addEventListener("input", updateLabel);

  const submit = el(doc, "button", "purchase-submit", "propose purchase");
  submit.addEventListener("click", async () => {
    const cents = Math.round(Number(priceInput.value) * 100);
    const account = accountSelect.value;
    if (!itemInput.value || !cents || !account) {
      ctx.notify("item, price, and account are required", "error");
      return;
    }
    try {
      const purchase = await ctx.api.proposePurchase(
        ctx.resident, itemInput.value, cents, account);
      ctx.notify(
        `purchase proposed: ${purchase.item} for ${formatMoney(purchase.price_cents)}`
        + ` — needs ${purchase.min_upvotes} upvote(s)`);
    } catch (error) {
      ctx.notify(error instanceof ApiError ? error.message : String(error), "error");
    }
    await ctx.refresh();
  });

  form.append(itemInput, datalist, priceInput, accountSelect, label, submit);
  container.append(form);

  const history = el(doc, "div", "purchase-history");
  for (const purchase of [...state.purchases].sort((a, b) => b.at - a.at).slice(0, 30)) {
    const row = el(doc, "div", `purchase-row purchase-${purchase.status}`);
    row.append(
      el(doc, "span", undefined, purchase.item),
      el(doc, "span", undefined, formatMoney(purchase.price_cents)),
      el(doc, "span", undefined, purchase.proposer),
      el(doc, "span", "purchase-status", purchase.status),
    );
    history.append(row);
  }
  container.append(history);
}
