"""Recompute observable dynamics from an event log (live or simulated).

Everything here derives from the log alone: chore point shares, per-resident
specialization, hearts trajectories, and purchasing patterns. CSV files are
the contract; plots are a convenience layer on top.

Specialization normalization: each resident-month's shares are that month's
points per chore divided by the resident's total points that month, so
shares sum to 1 per resident-month and time out of town does not distort
the mix.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Optional

from .. import events as ev
from ..engine import replay
from ..errors import EmptyLog, EmptyWindow
from ..events import Event


@dataclass
class Dataset:
    name: str
    columns: list[str]
    rows: list[dict[str, Any]]
    meta: dict[str, Any] = field(default_factory=dict)

    def write_csv(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=self.columns)
            writer.writeheader()
            for row in self.rows:
                writer.writerow({c: row.get(c, "") for c in self.columns})
        return path


@dataclass
class PurchaseStats:
    balances: Dataset
    buyers: Dataset
    top_share: Optional[float]   # fraction of residents covering >= 80% of purchases
    coverage: float = 0.8


def _single_house(events: list[Event]) -> str:
    houses = {e.house for e in events}
    if not houses:
        raise EmptyLog("no events")
    if len(houses) > 1:
        raise EmptyLog(f"log covers {len(houses)} houses; analyze one at a time")
    return houses.pop()


def _chore_names(events: Iterable[Event]) -> dict[str, str]:
    names: dict[str, str] = {}
    for event in events:
        if event.kind == ev.HOUSE_CREATED:
            for chore in event.payload.get("chores", []):
                names[chore["id"]] = chore["name"]
        elif event.kind == ev.PROPOSAL_RESOLVED:
            amendment = event.payload.get("effects", {}).get("amendment") or {}
            if amendment.get("scope") == "chore" and amendment.get("applied"):
                if amendment["action"] == "add":
                    names[amendment["chore_id"]] = amendment["name"]
                elif amendment["action"] == "edit" and amendment.get("name"):
                    names[amendment["chore_id"]] = amendment["name"]
    return names


def _claims(events: Iterable[Event]) -> list[dict[str, Any]]:
    claims: dict[str, dict[str, Any]] = {}
    for event in events:
        if event.kind == ev.CHORE_CLAIMED:
            record = dict(event.payload["claim"])
            record["at"] = event.at
            record["status"] = "pending"
            claims[record["id"]] = record
        elif event.kind == ev.PROPOSAL_RESOLVED:
            effect = event.payload.get("effects", {}).get("claim")
            if effect and effect["id"] in claims:
                claims[effect["id"]]["status"] = effect["status"]
    return sorted(claims.values(), key=lambda c: c["at"])


def verified_claims(events: Iterable[Event]) -> list[dict[str, Any]]:
    return [c for c in _claims(events) if c["status"] == "verified"]


def compute_chore_shares(events: list[Event],
                         groups: dict[str, list[str]] | None = None) -> Dataset:
    """Per-chore totals, claim counts, and mean points per performance."""
    names = _chore_names(events)
    verified = verified_claims(events)
    if not verified:
        raise EmptyLog("no verified claims in log")
    totals: dict[str, float] = {}
    counts: dict[str, int] = {}
    for claim in verified:
        chore = names.get(claim["chore"], claim["chore"])
        totals[chore] = totals.get(chore, 0.0) + claim["value"]
        counts[chore] = counts.get(chore, 0) + 1
    grand_total = sum(totals.values())
    rows = [
        {
            "chore": chore,
            "total_points": totals[chore],
            "claim_count": counts[chore],
            "mean_points": totals[chore] / counts[chore],
            "share": totals[chore] / grand_total,
        }
        for chore in sorted(totals, key=lambda c: -totals[c])
    ]
    meta: dict[str, Any] = {"total_points": grand_total}
    if groups:
        meta["group_shares"] = {
            group: sum(totals.get(member, 0.0) for member in members) / grand_total
            for group, members in groups.items()
        }
    return Dataset(
        name="chore_shares",
        columns=["chore", "total_points", "claim_count", "mean_points", "share"],
        rows=rows, meta=meta,
    )


def compute_specialization(events: list[Event],
                           months: list[str] | None = None) -> Dataset:
    """Per-resident, per-month chore shares normalized to sum to 1."""
    names = _chore_names(events)
    verified = verified_claims(events)
    if months is not None:
        window = set(months)
        verified = [c for c in verified if c["month"] in window]
    if not verified:
        raise EmptyWindow("no verified claims in window")
    points: dict[tuple[str, str], dict[str, float]] = {}
    for claim in verified:
        key = (claim["claimant"], claim["month"])
        chore = names.get(claim["chore"], claim["chore"])
        bucket = points.setdefault(key, {})
        bucket[chore] = bucket.get(chore, 0.0) + claim["value"]
    rows = []
    for (resident, month), bucket in sorted(points.items()):
        total = sum(bucket.values())
        for chore, value in sorted(bucket.items()):
            rows.append({
                "resident": resident, "month": month, "chore": chore,
                "points": value, "share": value / total,
            })
    return Dataset(
        name="specialization",
        columns=["resident", "month", "chore", "points", "share"],
        rows=rows, meta={"residents": sorted({r for r, _ in points})},
    )


def compute_hearts_trajectories(events: list[Event]) -> Dataset:
    """Per-resident hearts time series with the cause of every change.

    Replays the log (replay is the derivation: state is a pure function of
    events) and reads each account's ledgered history.
    """
    house = _single_house(events)
    engine = replay(events)
    hs = engine.houses[house]
    rows = []
    for resident in sorted(hs.residents):
        record = hs.residents[resident]
        if record.tenures:
            rows.append({
                "resident": resident, "at": record.tenures[0].start,
                "hearts": hs.config.hearts.baseline, "delta": 0.0,
                "cause": "baseline",
            })
        for entry in hs.heart_log.get(resident, []):
            rows.append({
                "resident": resident, "at": entry.at,
                "hearts": entry.balance_after, "delta": entry.delta,
                "cause": entry.cause,
            })
    rows.sort(key=lambda r: (r["resident"], r["at"]))
    return Dataset(
        name="hearts_trajectories",
        columns=["resident", "at", "hearts", "delta", "cause"],
        rows=rows, meta={"baseline": hs.config.hearts.baseline},
    )


def compute_purchase_stats(events: list[Event], coverage: float = 0.8) -> PurchaseStats:
    """Account balance series, per-resident purchase counts, top-buyer share."""
    account_names: dict[str, str] = {}
    balances: dict[str, int] = {}
    purchase_records: dict[str, dict[str, Any]] = {}
    residents: set[str] = set()
    balance_rows: list[dict[str, Any]] = []

    def snapshot(at: int, account_id: str) -> None:
        balance_rows.append({
            "at": at, "account": account_names.get(account_id, account_id),
            "balance_cents": balances[account_id],
        })

    for event in events:
        if event.kind == ev.HOUSE_CREATED:
            for acct in event.payload.get("accounts", []):
                account_names[acct["id"]] = acct["name"]
                balances[acct["id"]] = acct.get("initial_balance_cents", 0)
                snapshot(event.at, acct["id"])
        elif event.kind == ev.RESIDENT_ADDED:
            residents.add(event.payload["resident"])
        elif event.kind == ev.ACCOUNTS_REFILLED:
            for entry in event.payload["entries"]:
                balances[entry["account"]] += entry["amount"]
                snapshot(event.at, entry["account"])
        elif event.kind == ev.PROPOSAL_OPENED:
            purchase = event.payload.get("purchase")
            if purchase:
                purchase_records[purchase["id"]] = dict(purchase)
        elif event.kind == ev.PROPOSAL_RESOLVED:
            amendment = event.payload.get("effects", {}).get("amendment") or {}
            if amendment.get("scope") == "account" and amendment.get("applied"):
                if amendment["action"] == "create":
                    account_names[amendment["account_id"]] = amendment["name"]
                    balances[amendment["account_id"]] = 0
                    snapshot(event.at, amendment["account_id"])
                elif amendment["action"] == "rename":
                    account_names[amendment["account_id"]] = amendment["name"]
            effect = event.payload.get("effects", {}).get("purchase")
            if effect and effect["id"] in purchase_records:
                record = purchase_records[effect["id"]]
                record["status"] = effect["status"]
                if effect["status"] == "purchased":
                    balances[record["account"]] -= record["price_cents"]
                    snapshot(event.at, record["account"])

    settled = [p for p in purchase_records.values() if p.get("status") == "purchased"]
    counts: dict[str, int] = {rid: 0 for rid in residents}
    for purchase in settled:
        counts[purchase["proposer"]] = counts.get(purchase["proposer"], 0) + 1
    buyer_rows = [
        {"resident": rid, "purchase_count": counts[rid]}
        for rid in sorted(counts, key=lambda r: (-counts[r], r))
    ]

    top_share: Optional[float] = None
    if settled and counts:
        total = len(settled)
        covered, needed = 0, 0
        for row in buyer_rows:
            needed += 1
            covered += row["purchase_count"]
            if covered >= coverage * total:
                break
        top_share = needed / len(counts)

    balances_ds = Dataset(
        name="account_balances",
        columns=["at", "account", "balance_cents"],
        rows=balance_rows,
        meta={"accounts": sorted(set(account_names.values()))},
    )
    buyers_ds = Dataset(
        name="purchase_counts",
        columns=["resident", "purchase_count"],
        rows=buyer_rows,
        meta={"settled_purchases": len(settled), "residents": len(counts)},
    )
    return PurchaseStats(balances=balances_ds, buyers=buyers_ds,
                         top_share=top_share, coverage=coverage)
