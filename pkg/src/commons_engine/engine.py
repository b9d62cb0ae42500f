"""The event-sourced governance engine.

Commands validate against current state, append exactly one event, and the
event's apply function performs every resulting mutation. State is only
ever touched inside apply, so replaying the log reconstructs a live engine
field-for-field, and a crash between command and acknowledgment loses at
most the unacknowledged event.

Each command's event is atomic: batch outcomes (monthly jobs, proposal
resolutions with their side effects) travel in a single payload so a log
prefix is always a consistent state — no half-applied monthly job can be
observed after a restart.

Single writer per engine: commands funnel through one lock and are applied
in timestamp order; queries are pure reads of current state at a supplied
timestamp.
"""

from __future__ import annotations

import dataclasses
import threading
import time
from typing import Any, Iterable, Optional

from . import chores as chore_math
from . import consensus
from . import events as ev
from . import hearts as heart_math
from . import things as things_math
from .config import HouseConfig
from .errors import (
    CommonsError,
    CorruptLog,
    DuplicateAccountName,
    DuplicateHouse,
    DuplicateName,
    DuplicateResident,
    ExcessiveStake,
    InsufficientFunds,
    InvalidRange,
    InvalidWindow,
    MonthNotEnded,
    NonPositivePrice,
    ProposalClosed,
    SameChore,
    SelfChallenge,
    SelfKarma,
    TimestampRegression,
    UnknownAccount,
    UnknownChore,
    UnknownHouse,
    UnknownKind,
    UnknownProposal,
    UnknownResident,
    UnknownVoter,
    ZeroValue,
)
from .events import Event, check_log_shape
from .prioritize import build_matrix, compute_priorities
from .state import (
    Account,
    BuyListItem,
    Challenge,
    ChoreRecord,
    ChoreValue,
    Claim,
    HeartEventRecord,
    HouseState,
    ObligationStatement,
    PreferenceRecord,
    Proposal,
    PurchaseRecord,
    ResidentRecord,
    SanctionRecord,
    Tenure,
)
from .store import MemoryStore
from .timeutil import (
    HOUR_MS,
    active_days_in_month,
    days_in_month,
    month_boundaries_between,
    month_end,
    month_key,
    month_length_ms,
    month_start,
    next_month,
    parse_month,
)


class SystemClock:
    def now(self) -> int:
        return int(time.time() * 1000)


class SimClock:
    """Injected clock for simulations and tests; never moves backward."""

    def __init__(self, start: int = 0):
        self._now = start

    def now(self) -> int:
        return self._now

    def advance(self, ms: int) -> int:
        if ms < 0:
            raise ValueError("clock cannot move backward")
        self._now += ms
        return self._now

    def set(self, ts: int) -> int:
        if ts < self._now:
            raise ValueError("clock cannot move backward")
        self._now = ts
        return self._now


@dataclasses.dataclass(frozen=True)
class Resolution:
    proposal_id: str
    kind: str
    outcome: str
    upvotes: int
    downvotes: int
    resolved_at: int


class Engine:
    def __init__(self, store=None, clock=None):
        self.store = store if store is not None else MemoryStore()
        self.clock = clock if clock is not None else SystemClock()
        self.houses: dict[str, HouseState] = {}
        self._events: list[Event] = []
        self._seq = 0
        self._last_at = 0
        self._lock = threading.RLock()
        existing = self.store.load()
        check_log_shape(existing)
        for event in existing:
            self._dispatch(event)
            self._events.append(event)
            self._seq = event.seq + 1
            self._last_at = event.at

    # ------------------------------------------------------------------
    # plumbing

    @property
    def events(self) -> list[Event]:
        return list(self._events)

    def now(self) -> int:
        return self.clock.now()

    def _append(self, house: str, kind: str, payload: dict[str, Any], at: int) -> Event:
        event = Event(seq=self._seq, at=at, house=house, kind=kind, payload=payload)
        self.store.append(event)
        self._dispatch(event)
        self._events.append(event)
        self._seq += 1
        self._last_at = at
        return event

    def _check_at(self, at: int) -> int:
        if at is None:
            at = self.clock.now()
        if at < 0:
            raise TimestampRegression("timestamps must be >= 0")
        if at < self._last_at:
            raise TimestampRegression(
                f"timestamp {at} precedes log head {self._last_at}"
            )
        return at

    def _house(self, house: str) -> HouseState:
        try:
            return self.houses[house]
        except KeyError:
            raise UnknownHouse(house) from None

    @staticmethod
    def _active_resident(hs: HouseState, resident: str, at: int,
                         error: type[CommonsError] = UnknownResident) -> ResidentRecord:
        record = hs.residents.get(resident)
        if record is None or not record.active_at(at):
            raise error(resident)
        return record

    @staticmethod
    def _active_chore(hs: HouseState, chore: str) -> ChoreRecord:
        record = hs.chores.get(chore)
        if record is None or not record.active:
            raise UnknownChore(chore)
        return record

    # ------------------------------------------------------------------
    # accrual checkpointing (used only inside apply)

    def _checkpoint_chore(self, hs: HouseState, chore_id: str, at: int) -> None:
        value = hs.chore_values[chore_id]
        if at <= value.last_event_at:
            return
        step = chore_math.advance_value(
            value.accrued, value.last_event_at, at,
            hs.weights.get(chore_id, 0.0), hs.active_count(at),
            hs.config.points_per_resident_per_month, hs.config.timezone,
            hs.config.accrual_cap_multiple,
        )
        value.accrued = step.value
        value.last_event_at = at
        hs.emission_accrued += step.emitted
        hs.writeoff_capped += step.overflow

    def _checkpoint_all(self, hs: HouseState, at: int) -> None:
        for chore_id in hs.active_chore_ids():
            self._checkpoint_chore(hs, chore_id, at)

    def _recompute_weights(self, hs: HouseState, at: int) -> None:
        active = hs.active_chore_ids()
        if not active:
            hs.weights = {}
            return
        pairs = [
            (record.preferred, record.deprioritized)
            for (resident, _), record in sorted(hs.preferences.items())
            if hs.is_active(resident, at)
        ]
        matrix = build_matrix(active, pairs)
        floor = hs.config.priority_floor_mass / len(active)
        hs.weights = compute_priorities(matrix, hs.config.damping, floor)

    def _live_value(self, hs: HouseState, chore_id: str, at: int) -> float:
        value = hs.chore_values[chore_id]
        if at <= value.last_event_at:
            return value.accrued
        step = chore_math.advance_value(
            value.accrued, value.last_event_at, at,
            hs.weights.get(chore_id, 0.0), hs.active_count(at),
            hs.config.points_per_resident_per_month, hs.config.timezone,
            hs.config.accrual_cap_multiple,
        )
        return step.value

    def _apply_heart_delta(self, hs: HouseState, resident: str, delta: float,
                           cause: str, at: int, note: str = "") -> float:
        policy = hs.config.hearts
        balance = hs.hearts.get(resident, policy.baseline)
        applied = heart_math.clamp_delta(balance, delta, policy.max_hearts)
        updated = balance + applied
        hs.hearts[resident] = updated
        hs.heart_log.setdefault(resident, []).append(
            HeartEventRecord(at=at, delta=applied, cause=cause,
                             balance_after=updated, note=note)
        )
        if delta < 0 and updated <= 0.0 and balance > 0.0:
            hs.sanctions.append(
                SanctionRecord(at=at, resident=resident,
                               level=heart_math.SANCTION_FINANCIAL)
            )
        return applied

    # ------------------------------------------------------------------
    # event application (the only code that mutates state)

    def _dispatch(self, event: Event) -> None:
        handler = getattr(self, f"_apply_{event.kind}", None)
        if handler is None:
            raise CorruptLog(f"unknown event kind {event.kind!r}")
        handler(event)

    def _apply_house_created(self, event: Event) -> None:
        payload = event.payload
        config = HouseConfig.from_dict(payload["config"])
        hs = HouseState(id=event.house, config=config, created_at=event.at)
        for chore in payload.get("chores", []):
            hs.chores[chore["id"]] = ChoreRecord(
                id=chore["id"], name=chore["name"],
                description=chore.get("description", ""), created_at=event.at,
            )
            hs.chore_values[chore["id"]] = ChoreValue(0.0, event.at)
            hs.bump("chore")
        for item in payload.get("buylist", []):
            hs.buylist[item["id"]] = BuyListItem(
                id=item["id"], name=item["name"],
                vendor_hint=item.get("vendor_hint", ""),
                typical_price_cents=item.get("typical_price_cents", 0),
            )
            hs.bump("item")
        for acct in payload.get("accounts", []):
            hs.accounts[acct["id"]] = Account(
                id=acct["id"], name=acct["name"],
                balance_cents=acct.get("initial_balance_cents", 0),
                monthly_refill_cents=acct["monthly_refill_cents"],
                created_at=event.at,
            )
            hs.bump("acct")
            if acct.get("initial_balance_cents", 0) > 0:
                hs.ledger.append({
                    "at": event.at, "account": acct["id"],
                    "delta_cents": acct["initial_balance_cents"],
                    "kind": things_math.ENTRY_INITIAL, "buyer": None,
                })
        self.houses[event.house] = hs
        self._recompute_weights(hs, event.at)

    def _apply_config_updated(self, event: Event) -> None:
        hs = self.houses[event.house]
        self._checkpoint_all(hs, event.at)
        hs.config = HouseConfig.from_dict(event.payload["config"])
        self._recompute_weights(hs, event.at)

    def _apply_resident_added(self, event: Event) -> None:
        hs = self.houses[event.house]
        self._checkpoint_all(hs, event.at)
        resident = event.payload["resident"]
        record = hs.residents.setdefault(resident, ResidentRecord(id=resident))
        record.tenures.append(Tenure(start=event.at))
        hs.hearts.setdefault(resident, hs.config.hearts.baseline)
        hs.heart_log.setdefault(resident, [])
        self._recompute_weights(hs, event.at)

    def _apply_resident_removed(self, event: Event) -> None:
        hs = self.houses[event.house]
        self._checkpoint_all(hs, event.at)
        record = hs.residents[event.payload["resident"]]
        assert record.current is not None
        record.current.end = event.at
        self._recompute_weights(hs, event.at)

    def _create_proposal(self, hs: HouseState, event: Event) -> Proposal:
        data = event.payload["proposal"]
        proposal = Proposal(
            id=data["id"], kind=data["kind"], proposer=data.get("proposer"),
            opened_at=event.at, window_ms=data["window_ms"],
            min_upvotes=data["min_upvotes"],
            require_majority=data["require_majority"],
            payload=data.get("payload", {}),
        )
        hs.proposals[proposal.id] = proposal
        hs.bump("prop")
        if event.payload.get("implicit_upvote") and proposal.proposer:
            proposal.ballots[proposal.proposer] = (consensus.UP, event.at)
        return proposal

    def _apply_proposal_opened(self, event: Event) -> None:
        hs = self.houses[event.house]
        proposal = self._create_proposal(hs, event)
        challenge = event.payload.get("challenge")
        if challenge:
            hs.challenges[challenge["id"]] = Challenge(
                id=challenge["id"], challenger=challenge["challenger"],
                challengee=challenge["challengee"], stake=challenge["stake"],
                reason=challenge.get("reason", ""), opened_at=event.at,
                proposal_id=proposal.id,
            )
            hs.bump("chal")
        purchase = event.payload.get("purchase")
        if purchase:
            hs.purchases[purchase["id"]] = PurchaseRecord(
                id=purchase["id"], item=purchase["item"],
                listed=purchase["listed"], price_cents=purchase["price_cents"],
                account=purchase["account"], proposer=purchase["proposer"],
                at=event.at, month=purchase["month"], proposal_id=proposal.id,
            )
            hs.bump("pur")

    def _apply_ballot_cast(self, event: Event) -> None:
        hs = self.houses[event.house]
        proposal = hs.proposals[event.payload["proposal"]]
        proposal.ballots[event.payload["voter"]] = (event.payload["direction"], event.at)

    def _apply_chore_claimed(self, event: Event) -> None:
        hs = self.houses[event.house]
        claim_data = event.payload["claim"]
        chore_id = claim_data["chore"]
        self._checkpoint_chore(hs, chore_id, event.at)
        value = hs.chore_values[chore_id]
        frozen = value.accrued
        value.accrued = 0.0
        hs.claims[claim_data["id"]] = Claim(
            id=claim_data["id"], chore=chore_id, claimant=claim_data["claimant"],
            value=frozen, at=event.at, month=claim_data["month"],
            proposal_id=event.payload["proposal"]["id"],
        )
        hs.bump("claim")
        self._create_proposal(hs, event)

    def _apply_preference_submitted(self, event: Event) -> None:
        hs = self.houses[event.house]
        self._checkpoint_all(hs, event.at)
        payload = event.payload
        pair = tuple(sorted((payload["preferred"], payload["deprioritized"])))
        hs.preferences[(payload["resident"], pair)] = PreferenceRecord(
            resident=payload["resident"], preferred=payload["preferred"],
            deprioritized=payload["deprioritized"], at=event.at,
        )
        self._recompute_weights(hs, event.at)

    def _apply_exemption_declared(self, event: Event) -> None:
        hs = self.houses[event.house]
        payload = event.payload
        days = hs.exemptions.setdefault((payload["resident"], payload["month"]), set())
        days.update(range(payload["from_day"], payload["to_day"] + 1))

    def _apply_chores_month_resolved(self, event: Event) -> None:
        hs = self.houses[event.house]
        month = event.payload["month"]
        self._checkpoint_all(hs, event.at)
        statements = {}
        for st in event.payload["statements"]:
            statements[st["resident"]] = ObligationStatement(
                resident=st["resident"], month=month, owed=st["owed"],
                earned=st["earned"], exempt_days=st["exempt_days"],
                shortfall=st["shortfall"],
            )
        hs.obligations[month] = statements
        for pen in event.payload["penalties"]:
            self._apply_heart_delta(
                hs, pen["resident"], -pen["penalty"],
                heart_math.CAUSE_SHORTFALL, event.at,
                note=f"shortfall {pen['shortfall']:.2f} of {pen['owed']:.2f} for {month}",
            )
        hs.chores_months_resolved.add(month)

    def _apply_karma_recorded(self, event: Event) -> None:
        hs = self.houses[event.house]
        month = event.payload["month"]
        tallies = hs.karma.setdefault(month, {})
        recipient = event.payload["recipient"]
        tallies[recipient] = tallies.get(recipient, 0) + 1

    def _apply_karma_awards_granted(self, event: Event) -> None:
        hs = self.houses[event.house]
        for resident in event.payload["recipients"]:
            self._apply_heart_delta(
                hs, resident, hs.config.hearts.karma_award,
                heart_math.CAUSE_KARMA, event.at,
                note=f"karma award for {event.payload['month']}",
            )
        hs.karma_months_awarded.add(event.payload["month"])

    def _apply_hearts_ticked(self, event: Event) -> None:
        hs = self.houses[event.house]
        policy = hs.config.hearts
        for resident in event.payload["residents"]:
            balance = hs.hearts.get(resident, policy.baseline)
            delta = heart_math.tick_delta(balance, policy)
            if delta != 0.0:
                self._apply_heart_delta(
                    hs, resident, delta, heart_math.tick_cause(balance, policy),
                    event.at, note=f"monthly dynamics for {event.payload['month']}",
                )
        hs.hearts_months_ticked.add(event.payload["month"])

    def _apply_heart_adjusted(self, event: Event) -> None:
        hs = self.houses[event.house]
        payload = event.payload
        self._apply_heart_delta(
            hs, payload["resident"], payload["delta"],
            payload.get("cause", heart_math.CAUSE_MANUAL), event.at,
            note=payload.get("note", ""),
        )

    def _apply_accounts_refilled(self, event: Event) -> None:
        hs = self.houses[event.house]
        for entry in event.payload["entries"]:
            account = hs.accounts[entry["account"]]
            account.balance_cents += entry["amount"]
            hs.ledger.append({
                "at": event.at, "account": account.id,
                "delta_cents": entry["amount"],
                "kind": things_math.ENTRY_REFILL, "buyer": None,
            })
        hs.months_refilled.add(event.payload["month"])

    def _apply_proposal_resolved(self, event: Event) -> None:
        hs = self.houses[event.house]
        proposal = hs.proposals[event.payload["proposal"]]
        proposal.resolved = True
        proposal.outcome = event.payload["outcome"]
        proposal.resolved_at = event.at
        proposal.upvotes = event.payload["upvotes"]
        proposal.downvotes = event.payload["downvotes"]
        effects = event.payload.get("effects", {})

        claim_effect = effects.get("claim")
        if claim_effect:
            claim = hs.claims[claim_effect["id"]]
            claim.status = claim_effect["status"]
            if claim.status == "verified":
                hs.credits_total += claim.value
            else:
                chore = hs.chores.get(claim.chore)
                if chore is not None and chore.active:
                    # restore the escrowed value on top of accrual since the
                    # claim; restoration bypasses the cap (it is not new emission)
                    self._checkpoint_chore(hs, claim.chore, event.at)
                    hs.chore_values[claim.chore].accrued += claim.value
                else:
                    hs.writeoff_retired += claim.value

        challenge_effect = effects.get("challenge")
        if challenge_effect:
            challenge = hs.challenges[challenge_effect["id"]]
            challenge.resolution = challenge_effect["resolution"]
            self._apply_heart_delta(
                hs, challenge_effect["loser"], -challenge.stake,
                heart_math.CAUSE_CHALLENGE, event.at,
                note=f"challenge {challenge.id} {challenge_effect['resolution']}",
            )

        purchase_effect = effects.get("purchase")
        if purchase_effect:
            purchase = hs.purchases[purchase_effect["id"]]
            purchase.status = purchase_effect["status"]
            if purchase.status == things_math.PURCHASE_DONE:
                account = hs.accounts[purchase.account]
                account.balance_cents -= purchase.price_cents
                hs.ledger.append({
                    "at": event.at, "account": account.id,
                    "delta_cents": -purchase.price_cents,
                    "kind": things_math.ENTRY_PURCHASE, "buyer": purchase.proposer,
                })

        amendment = effects.get("amendment")
        if amendment and amendment.get("applied"):
            self._apply_amendment(hs, amendment, event.at)

    def _apply_amendment(self, hs: HouseState, amendment: dict[str, Any], at: int) -> None:
        scope, action = amendment["scope"], amendment["action"]
        if scope == "chore":
            if action == "add":
                self._checkpoint_all(hs, at)
                hs.chores[amendment["chore_id"]] = ChoreRecord(
                    id=amendment["chore_id"], name=amendment["name"],
                    description=amendment.get("description", ""), created_at=at,
                )
                hs.chore_values[amendment["chore_id"]] = ChoreValue(0.0, at)
                hs.bump("chore")
                self._recompute_weights(hs, at)
            elif action == "retire":
                self._checkpoint_all(hs, at)
                chore = hs.chores[amendment["chore_id"]]
                value = hs.chore_values[chore.id]
                hs.writeoff_retired += value.accrued
                value.accrued = 0.0
                chore.active = False
                chore.retired_at = at
                self._recompute_weights(hs, at)
            elif action == "edit":
                chore = hs.chores[amendment["chore_id"]]
                if amendment.get("name"):
                    chore.name = amendment["name"]
                if amendment.get("description") is not None:
                    chore.description = amendment["description"]
        elif scope == "buylist":
            if action == "add":
                hs.buylist[amendment["item_id"]] = BuyListItem(
                    id=amendment["item_id"], name=amendment["name"],
                    vendor_hint=amendment.get("vendor_hint", ""),
                    typical_price_cents=amendment.get("typical_price_cents", 0),
                )
                hs.bump("item")
            elif action == "retire":
                hs.buylist[amendment["item_id"]].active = False
        elif scope == "account":
            if action == "create":
                hs.accounts[amendment["account_id"]] = Account(
                    id=amendment["account_id"], name=amendment["name"],
                    balance_cents=0,
                    monthly_refill_cents=amendment["monthly_refill_cents"],
                    created_at=at,
                )
                hs.bump("acct")
            elif action == "rename":
                hs.accounts[amendment["account_id"]].name = amendment["name"]
            elif action == "retarget_refill":
                hs.accounts[amendment["account_id"]].monthly_refill_cents = (
                    amendment["monthly_refill_cents"]
                )

    # ------------------------------------------------------------------
    # commands: core ledger

    def create_house(
        self,
        house: str,
        config: HouseConfig | None = None,
        at: int | None = None,
        chores: Iterable[tuple[str, str]] = (),
        buylist: Iterable[dict[str, Any]] = (),
    ) -> HouseState:
        with self._lock:
            at = self._check_at(at)
            if house in self.houses:
                raise DuplicateHouse(house)
            if not house:
                raise UnknownHouse("house id must be non-empty")
            config = config or HouseConfig()
            chore_payload = []
            names = set()
            for i, (name, description) in enumerate(chores, start=1):
                if name in names:
                    raise DuplicateName(name)
                names.add(name)
                chore_payload.append(
                    {"id": f"chore-{i}", "name": name, "description": description}
                )
            buylist_payload = []
            for i, item in enumerate(buylist, start=1):
                buylist_payload.append({
                    "id": f"item-{i}", "name": item["name"],
                    "vendor_hint": item.get("vendor_hint", ""),
                    "typical_price_cents": item.get("typical_price_cents", 0),
                })
            account_payload = [
                {
                    "id": f"acct-{i}", "name": acct.name,
                    "monthly_refill_cents": acct.monthly_refill_cents,
                    "initial_balance_cents": acct.initial_balance_cents,
                }
                for i, acct in enumerate(config.accounts, start=1)
            ]
            self._append(house, ev.HOUSE_CREATED, {
                "config": config.to_dict(),
                "chores": chore_payload,
                "buylist": buylist_payload,
                "accounts": account_payload,
            }, at)
            return self.houses[house]

    def update_config(self, house: str, config: HouseConfig, at: int | None = None) -> None:
        with self._lock:
            at = self._check_at(at)
            self._house(house)
            self._append(house, ev.CONFIG_UPDATED, {"config": config.to_dict()}, at)

    def add_resident(self, house: str, resident: str, at: int | None = None) -> ResidentRecord:
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            if not resident:
                raise UnknownResident("resident id must be non-empty")
            record = hs.residents.get(resident)
            if record is not None and record.active_at(at):
                raise DuplicateResident(resident)
            self._append(house, ev.RESIDENT_ADDED, {"resident": resident}, at)
            return hs.residents[resident]

    def remove_resident(self, house: str, resident: str, at: int | None = None) -> ResidentRecord:
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            self._active_resident(hs, resident, at)
            self._append(house, ev.RESIDENT_REMOVED, {"resident": resident}, at)
            return hs.residents[resident]

    # ------------------------------------------------------------------
    # commands: consensus

    def open_proposal(
        self,
        house: str,
        kind: str,
        payload: dict[str, Any],
        proposer: Optional[str],
        min_upvotes: int,
        require_majority: bool,
        window_ms: int,
        at: int | None = None,
        implicit_upvote: bool = False,
        extra: dict[str, Any] | None = None,
    ) -> Proposal:
        """Shared primitive behind claims, challenges, purchases and amendments.

        Prefer the specific commands; they construct the structured payloads
        the resolution side effects expect.
        """
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            if kind not in consensus.PROPOSAL_KINDS:
                raise UnknownKind(kind)
            if window_ms <= 0:
                raise InvalidWindow(f"window must be > 0, got {window_ms}")
            if min_upvotes < 1:
                raise InvalidWindow(f"min_upvotes must be >= 1, got {min_upvotes}")
            if proposer is not None:
                self._active_resident(hs, proposer, at)
            proposal_id = hs.next_id("prop")
            event_payload: dict[str, Any] = {
                "proposal": {
                    "id": proposal_id, "kind": kind, "proposer": proposer,
                    "window_ms": window_ms, "min_upvotes": min_upvotes,
                    "require_majority": require_majority, "payload": payload,
                },
                "implicit_upvote": implicit_upvote,
            }
            if extra:
                event_payload.update(extra)
            self._append(house, ev.PROPOSAL_OPENED, event_payload, at)
            return hs.proposals[proposal_id]

    def cast_ballot(self, house: str, proposal_id: str, voter: str,
                    direction: str, at: int | None = None) -> None:
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            proposal = hs.proposals.get(proposal_id)
            if proposal is None:
                raise UnknownProposal(proposal_id)
            if proposal.resolved or at >= proposal.due_at:
                raise ProposalClosed(proposal_id)
            self._active_resident(hs, voter, at, error=UnknownVoter)
            if direction not in (consensus.UP, consensus.DOWN):
                raise ValueError(f"ballot direction must be up or down, got {direction!r}")
            self._append(house, ev.BALLOT_CAST, {
                "proposal": proposal_id, "voter": voter, "direction": direction,
            }, at)

    def resolve_due(self, house: str, at: int | None = None) -> list[Resolution]:
        """Resolve every proposal whose window has elapsed; idempotent sweep."""
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            due = sorted(
                (p for p in hs.proposals.values() if not p.resolved and p.due_at <= at),
                key=lambda p: (p.due_at, p.opened_at, _id_ordinal(p.id)),
            )
            results = []
            for proposal in due:
                outcome = consensus.resolve(
                    {v: d for v, (d, _) in proposal.ballots.items()},
                    proposal.min_upvotes, proposal.require_majority,
                )
                verdict = "passed" if outcome.passed else "failed"
                effects = self._effects_for(hs, proposal, outcome.passed)
                self._append(house, ev.PROPOSAL_RESOLVED, {
                    "proposal": proposal.id, "outcome": verdict,
                    "upvotes": outcome.upvotes, "downvotes": outcome.downvotes,
                    "effects": effects,
                }, at)
                results.append(Resolution(
                    proposal_id=proposal.id, kind=proposal.kind, outcome=verdict,
                    upvotes=outcome.upvotes, downvotes=outcome.downvotes,
                    resolved_at=at,
                ))
            return results

    def _effects_for(self, hs: HouseState, proposal: Proposal, passed: bool) -> dict[str, Any]:
        """Side effects of a resolution, computed against current state.

        Amendments that became infeasible while the poll ran (a name taken,
        a chore already retired) resolve with applied=false rather than
        corrupting state.
        """
        kind, payload = proposal.kind, proposal.payload
        if kind == consensus.CHORE_CLAIM:
            return {"claim": {
                "id": payload["claim_id"],
                "status": "verified" if passed else "rejected",
            }}
        if kind == consensus.HEART_CHALLENGE:
            challenge = hs.challenges[payload["challenge_id"]]
            loser = challenge.challengee if passed else challenge.challenger
            return {"challenge": {
                "id": challenge.id,
                "resolution": "passed" if passed else "failed",
                "loser": loser,
            }}
        if kind == consensus.PURCHASE:
            purchase = hs.purchases[payload["purchase_id"]]
            if not passed:
                status = things_math.PURCHASE_REJECTED
            elif hs.accounts[purchase.account].balance_cents >= purchase.price_cents:
                status = things_math.PURCHASE_DONE
            else:
                status = things_math.PURCHASE_FAILED_INSUFFICIENT
            return {"purchase": {"id": purchase.id, "status": status}}
        if kind == consensus.CHORE_AMENDMENT:
            action = payload.get("action")
            amendment = {"scope": "chore", "action": action, "applied": False}
            if action == "add":
                name = payload.get("name")
                amendment.update(name=name,
                                 description=payload.get("description", ""),
                                 chore_id=hs.next_id("chore"))
                feasible = bool(name) and hs.chore_by_name(name) is None
            elif action in ("retire", "edit"):
                chore = hs.chores.get(payload.get("chore") or "")
                feasible = chore is not None and chore.active
                amendment.update(chore_id=payload.get("chore"),
                                 name=payload.get("name"),
                                 description=payload.get("description"))
                if action == "edit" and payload.get("name"):
                    existing = hs.chore_by_name(payload["name"])
                    feasible = feasible and (
                        existing is None or existing.id == payload.get("chore")
                    )
            else:
                feasible = False
            amendment["applied"] = bool(passed and feasible)
            return {"amendment": amendment}
        if kind == consensus.BUYLIST_AMENDMENT:
            action = payload.get("action")
            amendment = {"scope": "buylist", "action": action, "applied": False}
            if action == "add":
                name = payload.get("name")
                amendment.update(name=name,
                                 vendor_hint=payload.get("vendor_hint", ""),
                                 typical_price_cents=payload.get("typical_price_cents", 0),
                                 item_id=hs.next_id("item"))
                feasible = bool(name) and hs.buylist_item_by_name(name) is None
            elif action == "retire":
                item = hs.buylist.get(payload.get("item") or "")
                feasible = item is not None and item.active
                amendment.update(item_id=payload.get("item"))
            else:
                feasible = False
            amendment["applied"] = bool(passed and feasible)
            return {"amendment": amendment}
        if kind == consensus.ACCOUNT_AMENDMENT:
            action = payload.get("action")
            amendment = {"scope": "account", "action": action, "applied": False}
            if action == "create":
                name = payload.get("name")
                amendment.update(name=name,
                                 monthly_refill_cents=payload.get("monthly_refill_cents", 0),
                                 account_id=hs.next_id("acct"))
                feasible = bool(name) and hs.account_by_name(name) is None
            elif action == "rename":
                name = payload.get("name")
                amendment.update(account_id=payload.get("account"), name=name)
                feasible = bool(name) and (payload.get("account") in hs.accounts
                                           and hs.account_by_name(name) is None)
            elif action == "retarget_refill":
                amendment.update(account_id=payload.get("account"),
                                 monthly_refill_cents=payload.get("monthly_refill_cents", 0))
                feasible = payload.get("account") in hs.accounts
            else:
                feasible = False
            amendment["applied"] = bool(passed and feasible)
            return {"amendment": amendment}
        return {}

    # ------------------------------------------------------------------
    # commands: chores

    def claim_chore(self, house: str, chore: str, claimant: str,
                    at: int | None = None) -> Claim:
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            self._active_chore(hs, chore)
            self._active_resident(hs, claimant, at)
            value = self._live_value(hs, chore, at)
            if value <= 0.0:
                raise ZeroValue(f"chore {chore} has no accrued value")
            cfg = hs.config
            min_upvotes = chore_math.claim_min_upvotes(
                value, cfg.claim_small_max_points,
                cfg.claim_min_upvotes_small, cfg.claim_min_upvotes_large,
            )
            claim_id = hs.next_id("claim")
            proposal_id = hs.next_id("prop")
            self._append(house, ev.CHORE_CLAIMED, {
                "claim": {
                    "id": claim_id, "chore": chore, "claimant": claimant,
                    "value": value, "month": month_key(at, cfg.timezone),
                },
                "proposal": {
                    "id": proposal_id, "kind": consensus.CHORE_CLAIM,
                    "proposer": claimant, "window_ms": cfg.claim_window_ms,
                    "min_upvotes": min_upvotes,
                    "require_majority": cfg.claim_require_majority,
                    "payload": {"claim_id": claim_id},
                },
                "implicit_upvote": True,
            }, at)
            return hs.claims[claim_id]

    def propose_chore_amendment(
        self, house: str, action: str, proposer: str, at: int | None = None,
        name: str | None = None, description: str | None = None, chore: str | None = None,
    ) -> Proposal:
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            self._active_resident(hs, proposer, at)
            if action not in ("add", "retire", "edit"):
                raise UnknownKind(f"chore amendment action {action!r}")
            if action == "add":
                if not name:
                    raise DuplicateName("chore name must be non-empty")
                if hs.chore_by_name(name) is not None:
                    raise DuplicateName(name)
                payload = {"action": "add", "name": name, "description": description or ""}
            else:
                record = hs.chores.get(chore or "")
                if record is None or not record.active:
                    raise UnknownChore(chore)
                if action == "edit" and name and (found := hs.chore_by_name(name)) and found.id != chore:
                    raise DuplicateName(name)
                payload = {"action": action, "chore": chore,
                           "name": name, "description": description}
            min_upvotes = consensus.quorum_upvotes(
                hs.active_count(at), hs.config.chore_amendment_quorum
            )
            return self.open_proposal(
                house, consensus.CHORE_AMENDMENT, payload, proposer,
                min_upvotes, True, hs.config.amendment_window_ms, at,
            )

    def declare_exemption(self, house: str, resident: str, month: str,
                          from_day: int, to_day: int, at: int | None = None) -> dict[str, Any]:
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            self._active_resident(hs, resident, at)
            try:
                parse_month(month)
            except ValueError as exc:
                raise InvalidRange(str(exc)) from None
            limit = days_in_month(month)
            if not (1 <= from_day <= to_day <= limit):
                raise InvalidRange(f"days {from_day}..{to_day} out of range for {month}")
            if month_end(month, hs.config.timezone) <= at:
                raise InvalidRange(f"month {month} has already ended")
            self._append(house, ev.EXEMPTION_DECLARED, {
                "resident": resident, "month": month,
                "from_day": from_day, "to_day": to_day,
            }, at)
            return {"resident": resident, "month": month,
                    "from_day": from_day, "to_day": to_day}

    def monthly_resolution(self, house: str, month: str,
                           at: int | None = None) -> list[ObligationStatement]:
        """Close a month's books: owed vs earned per resident, shortfall penalties.

        Claims still pending at resolution count toward earned points; a later
        rejection restores the chore's value but never amends an issued
        statement.
        """
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            tz = hs.config.timezone
            if month_end(month, tz) > at:
                raise MonthNotEnded(month)
            if month in hs.chores_months_resolved:
                return sorted(hs.obligations[month].values(), key=lambda s: s.resident)
            start, end = month_start(month, tz), month_end(month, tz)
            statements, penalties = [], []
            for resident in hs.residents_during(start, end):
                record = hs.residents[resident]
                active_days: set[int] = set()
                for tenure in record.tenures:
                    active_days |= active_days_in_month(month, tz, tenure.start, tenure.end)
                exempt = hs.exemptions.get((resident, month), set()) & active_days
                owed = chore_math.prorated_obligation(
                    hs.config.points_per_resident_per_month,
                    len(active_days), len(exempt), days_in_month(month),
                )
                earned = sum(
                    c.value for c in hs.claims.values()
                    if c.claimant == resident and c.month == month and c.status != "rejected"
                )
                shortfall = max(0.0, owed - earned)
                statements.append({
                    "resident": resident, "owed": owed, "earned": earned,
                    "exempt_days": len(exempt), "shortfall": shortfall,
                })
                penalty = heart_math.shortfall_penalty(shortfall, owed, hs.config.hearts)
                if penalty > 0.0:
                    penalties.append({
                        "resident": resident, "penalty": penalty,
                        "shortfall": shortfall, "owed": owed,
                    })
            self._append(house, ev.CHORES_MONTH_RESOLVED, {
                "month": month, "statements": statements, "penalties": penalties,
            }, at)
            return sorted(hs.obligations[month].values(), key=lambda s: s.resident)

    # ------------------------------------------------------------------
    # commands: prioritization

    def submit_preference(self, house: str, resident: str, preferred: str,
                          deprioritized: str, at: int | None = None) -> PreferenceRecord:
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            if preferred == deprioritized:
                raise SameChore(preferred)
            self._active_chore(hs, preferred)
            self._active_chore(hs, deprioritized)
            self._active_resident(hs, resident, at)
            self._append(house, ev.PREFERENCE_SUBMITTED, {
                "resident": resident, "preferred": preferred,
                "deprioritized": deprioritized,
            }, at)
            pair = tuple(sorted((preferred, deprioritized)))
            return hs.preferences[(resident, pair)]

    # ------------------------------------------------------------------
    # commands: hearts

    def record_karma(self, house: str, giver: str, recipient: str,
                     at: int | None = None, source: str = "") -> dict[str, Any]:
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            if giver == recipient:
                raise SelfKarma(giver)
            self._active_resident(hs, giver, at)
            self._active_resident(hs, recipient, at)
            month = month_key(at, hs.config.timezone)
            self._append(house, ev.KARMA_RECORDED, {
                "giver": giver, "recipient": recipient,
                "month": month, "source": source,
            }, at)
            return {"giver": giver, "recipient": recipient, "month": month}

    def award_monthly_karma_hearts(self, house: str, month: str,
                                   at: int | None = None) -> list[dict[str, Any]]:
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            if month_end(month, hs.config.timezone) > at:
                raise MonthNotEnded(month)
            if month in hs.karma_months_awarded:
                return []
            policy = hs.config.hearts
            tallies = {
                rid: count for rid, count in hs.karma.get(month, {}).items()
                if hs.is_active(rid, at)
            }
            k = heart_math.karma_award_count(hs.active_count(at), policy)
            recipients = heart_math.select_karma_recipients(tallies, k)
            awards = [
                {"resident": rid,
                 "applied": heart_math.clamp_delta(
                     hs.hearts.get(rid, policy.baseline),
                     policy.karma_award, policy.max_hearts)}
                for rid in recipients
            ]
            self._append(house, ev.KARMA_AWARDS_GRANTED, {
                "month": month, "k": k, "recipients": recipients,
            }, at)
            return awards

    def open_challenge(self, house: str, challenger: str, challengee: str,
                       at: int | None = None, stated_hearts: float | None = None,
                       reason: str = "") -> Challenge:
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            if challenger == challengee:
                raise SelfChallenge(challenger)
            self._active_resident(hs, challenger, at)
            self._active_resident(hs, challengee, at)
            policy = hs.config.hearts
            stake = policy.challenge_stake_default if stated_hearts is None else stated_hearts
            if not 0.0 < stake <= policy.challenge_stake_max:
                raise ExcessiveStake(f"stake must be in (0, {policy.challenge_stake_max}]")
            challenge_id = hs.next_id("chal")
            min_upvotes = consensus.quorum_upvotes(
                hs.active_count(at), hs.config.challenge_quorum, minimum=2
            )
            self.open_proposal(
                house, consensus.HEART_CHALLENGE,
                {"challenge_id": challenge_id}, challenger,
                min_upvotes, True, hs.config.challenge_window_ms, at,
                implicit_upvote=False,
                extra={"challenge": {
                    "id": challenge_id, "challenger": challenger,
                    "challengee": challengee, "stake": stake, "reason": reason,
                }},
            )
            return hs.challenges[challenge_id]

    def tick_time_dynamics(self, house: str, month: str,
                           at: int | None = None) -> list[dict[str, Any]]:
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            if month_end(month, hs.config.timezone) > at:
                raise MonthNotEnded(month)
            if month in hs.hearts_months_ticked:
                return []
            policy = hs.config.hearts
            residents = hs.active_resident_ids(at)
            adjustments = [
                {"resident": rid,
                 "delta": heart_math.tick_delta(hs.hearts.get(rid, policy.baseline), policy)}
                for rid in residents
            ]
            self._append(house, ev.HEARTS_TICKED, {
                "month": month, "residents": residents,
            }, at)
            return [a for a in adjustments if a["delta"] != 0.0]

    def adjust_hearts(self, house: str, resident: str, delta: float,
                      at: int | None = None, note: str = "") -> float:
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            if resident not in hs.residents:
                raise UnknownResident(resident)
            before = hs.hearts.get(resident, hs.config.hearts.baseline)
            self._append(house, ev.HEART_ADJUSTED, {
                "resident": resident, "delta": delta,
                "cause": heart_math.CAUSE_MANUAL, "note": note,
            }, at)
            return hs.hearts[resident] - before

    # ------------------------------------------------------------------
    # commands: things

    def propose_purchase(self, house: str, proposer: str, item: str,
                         price_cents: int, account: str,
                         at: int | None = None) -> PurchaseRecord:
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            self._active_resident(hs, proposer, at)
            if price_cents <= 0:
                raise NonPositivePrice(str(price_cents))
            record = hs.accounts.get(account)
            if record is None:
                raise UnknownAccount(account)
            if price_cents > record.balance_cents:
                raise InsufficientFunds(
                    f"price {price_cents} exceeds balance {record.balance_cents}"
                )
            listed = hs.buylist_item_by_name(item) is not None
            min_upvotes = things_math.purchase_min_upvotes(
                price_cents, hs.config.threshold_step_cents,
                listed, hs.config.freeform_extra_upvotes,
            )
            purchase_id = hs.next_id("pur")
            self.open_proposal(
                house, consensus.PURCHASE, {"purchase_id": purchase_id}, proposer,
                min_upvotes, hs.config.purchase_require_majority,
                hs.config.purchase_window_ms, at,
                implicit_upvote=True,
                extra={"purchase": {
                    "id": purchase_id, "item": item, "listed": listed,
                    "price_cents": price_cents, "account": account,
                    "proposer": proposer,
                    "month": month_key(at, hs.config.timezone),
                }},
            )
            return hs.purchases[purchase_id]

    def monthly_refill(self, house: str, month: str,
                       at: int | None = None) -> list[dict[str, Any]]:
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            if month_start(month, hs.config.timezone) > at:
                raise MonthNotEnded(f"month {month} has not started")
            if month in hs.months_refilled:
                return []
            entries = [
                {"account": account.id, "amount": account.monthly_refill_cents}
                for account in sorted(hs.accounts.values(), key=lambda a: a.id)
                if account.monthly_refill_cents > 0
            ]
            if not entries:
                return []
            self._append(house, ev.ACCOUNTS_REFILLED, {
                "month": month, "entries": entries,
            }, at)
            return entries

    def propose_account_amendment(
        self, house: str, action: str, proposer: str, at: int | None = None,
        name: str | None = None, account: str | None = None,
        monthly_refill_cents: int | None = None,
    ) -> Proposal:
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            self._active_resident(hs, proposer, at)
            if action == "create":
                if not name:
                    raise DuplicateAccountName("account name must be non-empty")
                if hs.account_by_name(name) is not None:
                    raise DuplicateAccountName(name)
                if monthly_refill_cents is None or monthly_refill_cents < 0:
                    raise NonPositivePrice("monthly_refill_cents must be >= 0")
                payload = {"action": "create", "name": name,
                           "monthly_refill_cents": monthly_refill_cents}
            elif action == "rename":
                if account not in hs.accounts:
                    raise UnknownAccount(account)
                if not name:
                    raise DuplicateAccountName("account name must be non-empty")
                existing = hs.account_by_name(name)
                if existing is not None and existing.id != account:
                    raise DuplicateAccountName(name)
                payload = {"action": "rename", "account": account, "name": name}
            elif action == "retarget_refill":
                if account not in hs.accounts:
                    raise UnknownAccount(account)
                if monthly_refill_cents is None or monthly_refill_cents < 0:
                    raise NonPositivePrice("monthly_refill_cents must be >= 0")
                payload = {"action": "retarget_refill", "account": account,
                           "monthly_refill_cents": monthly_refill_cents}
            else:
                raise UnknownKind(f"account amendment action {action!r}")
            min_upvotes = consensus.quorum_upvotes(
                hs.active_count(at), hs.config.account_amendment_quorum
            )
            return self.open_proposal(
                house, consensus.ACCOUNT_AMENDMENT, payload, proposer,
                min_upvotes, True, hs.config.amendment_window_ms, at,
            )

    def propose_buylist_amendment(
        self, house: str, action: str, proposer: str, at: int | None = None,
        name: str | None = None, vendor_hint: str = "",
        typical_price_cents: int = 0, item: str | None = None,
    ) -> Proposal:
        with self._lock:
            at = self._check_at(at)
            hs = self._house(house)
            self._active_resident(hs, proposer, at)
            if action == "add":
                if not name:
                    raise DuplicateName("item name must be non-empty")
                if hs.buylist_item_by_name(name) is not None:
                    raise DuplicateName(name)
                payload = {"action": "add", "name": name, "vendor_hint": vendor_hint,
                           "typical_price_cents": typical_price_cents}
            elif action == "retire":
                found = hs.buylist.get(item or "")
                if found is None or not found.active:
                    raise UnknownKind(f"no active buy-list item {item!r}")
                payload = {"action": "retire", "item": item}
            else:
                raise UnknownKind(f"buy-list amendment action {action!r}")
            min_upvotes = consensus.quorum_upvotes(
                hs.active_count(at), hs.config.buylist_amendment_quorum
            )
            return self.open_proposal(
                house, consensus.BUYLIST_AMENDMENT, payload, proposer,
                min_upvotes, True, hs.config.amendment_window_ms, at,
            )

    # ------------------------------------------------------------------
    # scheduler

    def run_scheduler_tick(self, at: int | None = None) -> dict[str, Any]:
        """Resolve due proposals and run any monthly jobs whose boundary passed.

        Monthly jobs run in a fixed order — chores resolution, account refill,
        karma awards, hearts tick — so shortfall penalties always precede
        regeneration. Idempotent: a duplicate tick produces no new events.
        """
        with self._lock:
            at = self._check_at(at)
            summary: dict[str, Any] = {"resolved": 0, "months": []}
            for house in sorted(self.houses):
                hs = self.houses[house]
                tz = hs.config.timezone
                for month, boundary in month_boundaries_between(hs.created_at, at, tz):
                    done = (
                        month in hs.chores_months_resolved
                        and month in hs.karma_months_awarded
                        and month in hs.hearts_months_ticked
                        and next_month(month) in hs.months_refilled
                    )
                    if done:
                        continue
                    eff = max(boundary, self._last_at)
                    summary["resolved"] += len(self.resolve_due(house, eff))
                    if month not in hs.chores_months_resolved:
                        self.monthly_resolution(house, month, eff)
                    if next_month(month) not in hs.months_refilled:
                        self.monthly_refill(house, next_month(month), eff)
                    if month not in hs.karma_months_awarded:
                        self.award_monthly_karma_hearts(house, month, eff)
                    if month not in hs.hearts_months_ticked:
                        self.tick_time_dynamics(house, month, eff)
                    summary["months"].append({"house": house, "month": month})
                summary["resolved"] += len(self.resolve_due(house, max(at, self._last_at)))
            return summary

    # ------------------------------------------------------------------
    # queries (pure reads)

    def current_value(self, house: str, chore: str, at: int | None = None) -> float:
        with self._lock:
            hs = self._house(house)
            self._active_chore(hs, chore)
            return self._live_value(hs, chore, at if at is not None else self.clock.now())

    def chore_board(self, house: str, at: int | None = None) -> list[dict[str, Any]]:
        with self._lock:
            hs = self._house(house)
            at = at if at is not None else self.clock.now()
            rates = self._rates_per_hour(hs, at)
            return [
                {
                    "id": chore_id,
                    "name": hs.chores[chore_id].name,
                    "description": hs.chores[chore_id].description,
                    "value": self._live_value(hs, chore_id, at),
                    "rate_per_hour": rates[chore_id],
                    "weight": hs.weights.get(chore_id, 0.0),
                }
                for chore_id in hs.active_chore_ids()
            ]

    def _rates_per_hour(self, hs: HouseState, at: int) -> dict[str, float]:
        key = month_key(at, hs.config.timezone)
        length = month_length_ms(key, hs.config.timezone)
        active = hs.active_count(at)
        return {
            chore_id: hs.weights.get(chore_id, 0.0)
            * hs.config.points_per_resident_per_month * active / length * HOUR_MS
            for chore_id in hs.active_chore_ids()
        }

    def effective_weights(self, house: str) -> dict[str, float]:
        with self._lock:
            return dict(self._house(house).weights)

    def priorities(self, house: str, at: int | None = None) -> list[dict[str, Any]]:
        with self._lock:
            hs = self._house(house)
            at = at if at is not None else self.clock.now()
            rates = self._rates_per_hour(hs, at)
            return [
                {"chore": chore_id, "name": hs.chores[chore_id].name,
                 "weight": hs.weights[chore_id], "rate_per_hour": rates[chore_id]}
                for chore_id in hs.active_chore_ids()
            ]

    def get_obligations(self, house: str, month: str,
                        at: int | None = None) -> dict[str, Any]:
        """Issued statements for a resolved month, or a live preview."""
        with self._lock:
            hs = self._house(house)
            at = at if at is not None else self.clock.now()
            if month in hs.chores_months_resolved:
                return {
                    "month": month, "resolved": True,
                    "statements": [dataclasses.asdict(s) for _, s in
                                   sorted(hs.obligations[month].items())],
                }
            tz = hs.config.timezone
            start, end = month_start(month, tz), month_end(month, tz)
            statements = []
            for resident in hs.residents_during(start, end):
                record = hs.residents[resident]
                active_days: set[int] = set()
                for tenure in record.tenures:
                    active_days |= active_days_in_month(month, tz, tenure.start, tenure.end)
                exempt = hs.exemptions.get((resident, month), set()) & active_days
                owed = chore_math.prorated_obligation(
                    hs.config.points_per_resident_per_month,
                    len(active_days), len(exempt), days_in_month(month),
                )
                earned = sum(
                    c.value for c in hs.claims.values()
                    if c.claimant == resident and c.month == month and c.status != "rejected"
                )
                statements.append({
                    "resident": resident, "month": month, "owed": owed,
                    "earned": earned, "exempt_days": len(exempt),
                    "shortfall": max(0.0, owed - earned),
                })
            return {"month": month, "resolved": False, "statements": statements}

    def hearts_board(self, house: str, at: int | None = None) -> list[dict[str, Any]]:
        with self._lock:
            hs = self._house(house)
            at = at if at is not None else self.clock.now()
            return [
                {"resident": rid, "hearts": hs.hearts[rid],
                 "sanction": heart_math.sanction_level(hs.hearts[rid], hs.config.hearts)}
                for rid in hs.active_resident_ids(at)
            ]

    def hearts_history(self, house: str, resident: str) -> list[HeartEventRecord]:
        with self._lock:
            hs = self._house(house)
            if resident not in hs.residents:
                raise UnknownResident(resident)
            return list(hs.heart_log.get(resident, []))

    def sanction_check(self, house: str, resident: str) -> str:
        with self._lock:
            hs = self._house(house)
            if resident not in hs.residents:
                raise UnknownResident(resident)
            return heart_math.sanction_level(
                hs.hearts.get(resident, hs.config.hearts.baseline), hs.config.hearts
            )

    def list_accounts(self, house: str) -> list[Account]:
        with self._lock:
            hs = self._house(house)
            return [hs.accounts[k] for k in sorted(hs.accounts)]

    def ledger_entries(self, house: str, account: str | None = None) -> list[dict[str, Any]]:
        with self._lock:
            hs = self._house(house)
            if account is not None and account not in hs.accounts:
                raise UnknownAccount(account)
            return [dict(e) for e in hs.ledger
                    if account is None or e["account"] == account]

    def list_purchases(self, house: str, month: str | None = None) -> list[PurchaseRecord]:
        with self._lock:
            hs = self._house(house)
            purchases = sorted(hs.purchases.values(), key=lambda p: (p.at, _id_ordinal(p.id)))
            if month is not None:
                purchases = [p for p in purchases if p.month == month]
            return purchases

    def purchase_threshold(self, house: str, price_cents: int,
                           item: str | None = None) -> int:
        with self._lock:
            hs = self._house(house)
            if price_cents <= 0:
                raise NonPositivePrice(str(price_cents))
            listed = item is None or hs.buylist_item_by_name(item) is not None
            return things_math.purchase_min_upvotes(
                price_cents, hs.config.threshold_step_cents,
                listed, hs.config.freeform_extra_upvotes,
            )

    def list_proposals(self, house: str, open_only: bool = False,
                       at: int | None = None) -> list[Proposal]:
        with self._lock:
            hs = self._house(house)
            at = at if at is not None else self.clock.now()
            proposals = sorted(hs.proposals.values(),
                               key=lambda p: (p.opened_at, _id_ordinal(p.id)))
            if open_only:
                proposals = [p for p in proposals if p.open_at(at)]
            return proposals

    def list_residents(self, house: str) -> list[ResidentRecord]:
        with self._lock:
            hs = self._house(house)
            return [hs.residents[k] for k in sorted(hs.residents)]

    def list_chores(self, house: str, include_retired: bool = False) -> list[ChoreRecord]:
        with self._lock:
            hs = self._house(house)
            return [
                hs.chores[k] for k in sorted(hs.chores)
                if include_retired or hs.chores[k].active
            ]

    def buylist_items(self, house: str) -> list[BuyListItem]:
        with self._lock:
            hs = self._house(house)
            return [hs.buylist[k] for k in sorted(hs.buylist) if hs.buylist[k].active]

    def conservation_report(self, house: str, at: int | None = None) -> dict[str, float]:
        """Both sides of the point-conservation identity at instant ``at``.

        emission == credits + live accrued + pending escrow + write-offs,
        where write-offs cover retired value and cap-discarded emission.
        """
        with self._lock:
            hs = self._house(house)
            at = at if at is not None else self.clock.now()
            emission = hs.emission_accrued
            accrued = 0.0
            capped = hs.writeoff_capped
            for chore_id in hs.active_chore_ids():
                value = hs.chore_values[chore_id]
                step = chore_math.advance_value(
                    value.accrued, value.last_event_at, max(at, value.last_event_at),
                    hs.weights.get(chore_id, 0.0), hs.active_count(at),
                    hs.config.points_per_resident_per_month, hs.config.timezone,
                    hs.config.accrual_cap_multiple,
                )
                emission += step.emitted
                accrued += step.value
                capped += step.overflow
            escrow = hs.pending_escrow()
            accounted = hs.credits_total + accrued + escrow + hs.writeoff_retired + capped
            return {
                "emission": emission,
                "credits": hs.credits_total,
                "accrued": accrued,
                "escrow": escrow,
                "writeoff_retired": hs.writeoff_retired,
                "writeoff_capped": capped,
                "accounted": accounted,
                "residual": emission - accounted,
            }

    def snapshot(self) -> dict[str, Any]:
        """Deep, comparable image of all engine state (for replay checks)."""
        with self._lock:
            return {
                "seq": self._seq,
                "last_at": self._last_at,
                "houses": {
                    house: dataclasses.asdict(hs)
                    for house, hs in sorted(self.houses.items())
                },
            }


def _id_ordinal(identifier: str) -> int:
    return int(identifier.rsplit("-", 1)[1])


def replay(events: Iterable[Event]) -> Engine:
    """Rebuild an engine from an event log; pure function of its input."""
    return Engine(store=MemoryStore(list(events)))
