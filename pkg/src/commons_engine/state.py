"""In-memory state of one house, derived entirely from the event log.

Nothing in here is mutated outside the engine's apply functions; replaying
the same events always reconstructs this state field-for-field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .config import HouseConfig


@dataclass
class Tenure:
    start: int
    end: Optional[int] = None  # exclusive; None while active

    def active_at(self, ts: int) -> bool:
        return self.start <= ts and (self.end is None or ts < self.end)

    def overlaps(self, start: int, end: int) -> bool:
        hi = self.end if self.end is not None else end
        return max(self.start, start) < min(hi, end)


@dataclass
class ResidentRecord:
    id: str
    tenures: list[Tenure] = field(default_factory=list)

    def active_at(self, ts: int) -> bool:
        return any(t.active_at(ts) for t in self.tenures)

    @property
    def current(self) -> Optional[Tenure]:
        if self.tenures and self.tenures[-1].end is None:
            return self.tenures[-1]
        return None


@dataclass
class ChoreRecord:
    id: str
    name: str
    description: str = ""
    active: bool = True
    created_at: int = 0
    retired_at: Optional[int] = None


@dataclass
class ChoreValue:
    accrued: float = 0.0
    last_event_at: int = 0


@dataclass
class PreferenceRecord:
    resident: str
    preferred: str
    deprioritized: str
    at: int


@dataclass
class Proposal:
    id: str
    kind: str
    proposer: Optional[str]
    opened_at: int
    window_ms: int
    min_upvotes: int
    require_majority: bool
    payload: dict[str, Any] = field(default_factory=dict)
    ballots: dict[str, tuple[str, int]] = field(default_factory=dict)  # voter -> (direction, at)
    resolved: bool = False
    outcome: Optional[str] = None  # "passed" | "failed"
    resolved_at: Optional[int] = None
    upvotes: int = 0
    downvotes: int = 0

    @property
    def due_at(self) -> int:
        return self.opened_at + self.window_ms

    def open_at(self, ts: int) -> bool:
        return not self.resolved and ts < self.due_at


@dataclass
class Claim:
    id: str
    chore: str
    claimant: str
    value: float
    at: int
    month: str
    proposal_id: str
    status: str = "pending"  # pending | verified | rejected


@dataclass
class Challenge:
    id: str
    challenger: str
    challengee: str
    stake: float
    reason: str
    opened_at: int
    proposal_id: str
    resolution: Optional[str] = None  # "passed" | "failed"


@dataclass
class ObligationStatement:
    resident: str
    month: str
    owed: float
    earned: float
    exempt_days: int
    shortfall: float


@dataclass
class HeartEventRecord:
    at: int
    delta: float  # applied (post-clamp) delta
    cause: str
    balance_after: float
    note: str = ""


@dataclass
class SanctionRecord:
    at: int
    resident: str
    level: str


@dataclass
class Account:
    id: str
    name: str
    balance_cents: int
    monthly_refill_cents: int
    created_at: int


@dataclass
class BuyListItem:
    id: str
    name: str
    vendor_hint: str = ""
    typical_price_cents: int = 0
    active: bool = True


@dataclass
class PurchaseRecord:
    id: str
    item: str
    listed: bool
    price_cents: int
    account: str
    proposer: str
    at: int
    month: str
    proposal_id: str
    status: str = "pending"


@dataclass
class HouseState:
    id: str
    config: HouseConfig
    created_at: int

    residents: dict[str, ResidentRecord] = field(default_factory=dict)

    chores: dict[str, ChoreRecord] = field(default_factory=dict)
    chore_values: dict[str, ChoreValue] = field(default_factory=dict)
    weights: dict[str, float] = field(default_factory=dict)
    preferences: dict[tuple[str, tuple[str, str]], PreferenceRecord] = field(default_factory=dict)
    claims: dict[str, Claim] = field(default_factory=dict)
    exemptions: dict[tuple[str, str], set[int]] = field(default_factory=dict)  # (resident, month) -> days
    obligations: dict[str, dict[str, ObligationStatement]] = field(default_factory=dict)
    chores_months_resolved: set[str] = field(default_factory=set)

    proposals: dict[str, Proposal] = field(default_factory=dict)

    hearts: dict[str, float] = field(default_factory=dict)
    heart_log: dict[str, list[HeartEventRecord]] = field(default_factory=dict)
    karma: dict[str, dict[str, int]] = field(default_factory=dict)  # month -> recipient -> tally
    karma_months_awarded: set[str] = field(default_factory=set)
    hearts_months_ticked: set[str] = field(default_factory=set)
    challenges: dict[str, Challenge] = field(default_factory=dict)
    sanctions: list[SanctionRecord] = field(default_factory=list)

    accounts: dict[str, Account] = field(default_factory=dict)
    ledger: list[dict[str, Any]] = field(default_factory=list)
    months_refilled: set[str] = field(default_factory=set)
    buylist: dict[str, BuyListItem] = field(default_factory=dict)
    purchases: dict[str, PurchaseRecord] = field(default_factory=dict)

    # point-conservation accumulators (see chores.advance_value)
    emission_accrued: float = 0.0
    credits_total: float = 0.0
    writeoff_retired: float = 0.0
    writeoff_capped: float = 0.0

    counters: dict[str, int] = field(default_factory=dict)

    # -- roster helpers ------------------------------------------------

    def active_resident_ids(self, ts: int) -> list[str]:
        return sorted(r.id for r in self.residents.values() if r.active_at(ts))

    def active_count(self, ts: int) -> int:
        return sum(1 for r in self.residents.values() if r.active_at(ts))

    def is_active(self, resident: str, ts: int) -> bool:
        record = self.residents.get(resident)
        return record is not None and record.active_at(ts)

    def residents_during(self, start: int, end: int) -> list[str]:
        return sorted(
            r.id for r in self.residents.values()
            if any(t.overlaps(start, end) for t in r.tenures)
        )

    # -- chore helpers -------------------------------------------------

    def active_chore_ids(self) -> list[str]:
        return sorted(c.id for c in self.chores.values() if c.active)

    def chore_by_name(self, name: str) -> Optional[ChoreRecord]:
        for chore in self.chores.values():
            if chore.active and chore.name == name:
                return chore
        return None

    def pending_escrow(self) -> float:
        """Value frozen in unresolved claims; part of the conservation identity."""
        return sum(c.value for c in self.claims.values() if c.status == "pending")

    # -- accounts ------------------------------------------------------

    def account_by_name(self, name: str) -> Optional[Account]:
        for account in self.accounts.values():
            if account.name == name:
                return account
        return None

    def buylist_item_by_name(self, name: str) -> Optional[BuyListItem]:
        for item in self.buylist.values():
            if item.active and item.name == name:
                return item
        return None

    def next_id(self, prefix: str) -> str:
        """Peek the next id for ``prefix``; apply bumps the counter."""
        return f"{prefix}-{self.counters.get(prefix, 0) + 1}"

    def bump(self, prefix: str) -> None:
        self.counters[prefix] = self.counters.get(prefix, 0) + 1
