"""Shared-fund purchasing arithmetic.

All money is integer cents; no floating point ever touches a balance. The
approval threshold scales linearly with price so routine purchases pass on
the proposer's implicit vote while large ones need broad support.
"""

from __future__ import annotations

import csv
import io
from typing import Iterable

LEDGER_COLUMNS = ["at", "account", "delta_cents", "kind", "buyer"]

ENTRY_INITIAL = "initial"
ENTRY_REFILL = "refill"
ENTRY_PURCHASE = "purchase"

PURCHASE_PENDING = "pending"
PURCHASE_DONE = "purchased"
PURCHASE_REJECTED = "rejected"
PURCHASE_FAILED_INSUFFICIENT = "failed-insufficient"


def purchase_min_upvotes(
    price_cents: int,
    step_cents: int,
    listed: bool = True,
    freeform_extra: int = 1,
) -> int:
    """1 + floor(price/step), plus extra scrutiny for off-list items."""
    votes = 1 + price_cents // step_cents
    if not listed:
        votes += freeform_extra
    return votes


def ledger_csv(entries: Iterable[dict]) -> str:
    """Render ledger entries as the documented CSV export."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=LEDGER_COLUMNS)
    writer.writeheader()
    for entry in entries:
        writer.writerow({
            "at": entry["at"],
            "account": entry["account"],
            "delta_cents": entry["delta_cents"],
            "kind": entry["kind"],
            "buyer": entry.get("buyer") or "",
        })
    return buf.getvalue()
