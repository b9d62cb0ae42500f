"""The append-only event record: the sole source of truth.

Every externally visible state change corresponds to exactly one event, and
each event is atomic: batch outcomes (a month's obligations and penalties,
a proposal resolution with its side effects) travel inside one payload so
any log prefix replays to a consistent state.

Events serialize to newline-delimited JSON (one object per line, UTF-8,
sorted keys) — that file is the backup and replay interchange format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .errors import CorruptLog

HOUSE_CREATED = "house_created"          # config + seed chores/buy list/accounts
CONFIG_UPDATED = "config_updated"
RESIDENT_ADDED = "resident_added"
RESIDENT_REMOVED = "resident_removed"

PROPOSAL_OPENED = "proposal_opened"      # may carry a challenge or purchase record
BALLOT_CAST = "ballot_cast"
PROPOSAL_RESOLVED = "proposal_resolved"  # outcome + tallies + side effects

CHORE_CLAIMED = "chore_claimed"          # freezes value, resets accrual, opens poll
PREFERENCE_SUBMITTED = "preference_submitted"
EXEMPTION_DECLARED = "exemption_declared"
CHORES_MONTH_RESOLVED = "chores_month_resolved"  # statements + shortfall penalties

KARMA_RECORDED = "karma_recorded"
KARMA_AWARDS_GRANTED = "karma_awards_granted"
HEARTS_TICKED = "hearts_ticked"          # monthly regeneration/fading
HEART_ADJUSTED = "heart_adjusted"        # audited manual adjustment

ACCOUNTS_REFILLED = "accounts_refilled"

ALL_KINDS = frozenset({
    HOUSE_CREATED, CONFIG_UPDATED, RESIDENT_ADDED, RESIDENT_REMOVED,
    PROPOSAL_OPENED, BALLOT_CAST, PROPOSAL_RESOLVED,
    CHORE_CLAIMED, PREFERENCE_SUBMITTED, EXEMPTION_DECLARED,
    CHORES_MONTH_RESOLVED,
    KARMA_RECORDED, KARMA_AWARDS_GRANTED, HEARTS_TICKED, HEART_ADJUSTED,
    ACCOUNTS_REFILLED,
})


@dataclass(frozen=True)
class Event:
    seq: int
    at: int
    house: str
    kind: str
    payload: dict[str, Any]

    def to_json(self) -> str:
        return json.dumps(
            {"seq": self.seq, "at": self.at, "house": self.house,
             "kind": self.kind, "payload": self.payload},
            sort_keys=True, separators=(",", ":"), ensure_ascii=False,
        )

    @classmethod
    def from_json(cls, line: str) -> "Event":
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorruptLog(f"unparseable event record: {exc}") from exc
        try:
            return cls(seq=int(obj["seq"]), at=int(obj["at"]), house=str(obj["house"]),
                       kind=str(obj["kind"]), payload=obj["payload"])
        except (KeyError, TypeError, ValueError) as exc:
            raise CorruptLog(f"malformed event record: {exc}") from exc


def check_log_shape(events: list[Event]) -> None:
    """Raise CorruptLog on a seq gap or timestamp regression."""
    last_at = None
    for i, event in enumerate(events):
        if event.seq != i:
            raise CorruptLog(f"sequence gap: expected seq {i}, got {event.seq}")
        if last_at is not None and event.at < last_at:
            raise CorruptLog(f"timestamp regression at seq {event.seq}")
        last_at = event.at
