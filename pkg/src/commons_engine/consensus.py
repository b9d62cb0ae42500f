"""Lazy-consensus voting rule.

Approval needs a minimum count of positive votes inside a time window — an
activation energy — rather than a quorum of total votes. Some proposal
kinds additionally require a strict majority of votes cast, which biases
contested questions toward inaction.

The resolution outcome is a pure function of the effective ballots and the
proposal's (min_upvotes, require_majority) parameters; everything stateful
lives in the engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Proposal kinds (wire names)
CHORE_CLAIM = "choreClaim"
CHORE_AMENDMENT = "choreAmendment"
HEART_CHALLENGE = "heartChallenge"
PURCHASE = "purchase"
BUYLIST_AMENDMENT = "buyListAmendment"
ACCOUNT_AMENDMENT = "accountAmendment"

PROPOSAL_KINDS = frozenset({
    CHORE_CLAIM, CHORE_AMENDMENT, HEART_CHALLENGE,
    PURCHASE, BUYLIST_AMENDMENT, ACCOUNT_AMENDMENT,
})

# Kinds where opening the proposal casts an implicit upvote by the proposer,
# seeding the lazy threshold (honest claims and small purchases pass with
# little to no engagement).
IMPLICIT_UPVOTE_KINDS = frozenset({CHORE_CLAIM, PURCHASE})

UP = "up"
DOWN = "down"


@dataclass(frozen=True)
class Outcome:
    passed: bool
    upvotes: int
    downvotes: int


def evaluate(upvotes: int, downvotes: int, min_upvotes: int, require_majority: bool) -> bool:
    """passed <=> upvotes >= min_upvotes and (majority not required or up > down)."""
    if upvotes < min_upvotes:
        return False
    if require_majority and not upvotes > downvotes:
        return False
    return True


def tally(effective_ballots: dict[str, str]) -> tuple[int, int]:
    """Count one effective ballot per voter (later ballots already overwrote)."""
    up = sum(1 for d in effective_ballots.values() if d == UP)
    down = sum(1 for d in effective_ballots.values() if d == DOWN)
    return up, down


def resolve(effective_ballots: dict[str, str], min_upvotes: int,
            require_majority: bool) -> Outcome:
    up, down = tally(effective_ballots)
    return Outcome(evaluate(up, down, min_upvotes, require_majority), up, down)


def quorum_upvotes(active_residents: int, fraction: float, minimum: int = 1) -> int:
    """ceil(active * fraction), floored at ``minimum``."""
    return max(minimum, math.ceil(active_residents * fraction))
