"""Hearts policy arithmetic: penalties, regeneration, karma ranking, sanctions.

Hearts are symbolic tokens for norm compliance. Everyone starts at the
baseline; karma and challenges move balances actively, chore shortfalls
passively, and time pulls every account back toward baseline. Sanctions
escalate from nothing to a warning to a financial signal as hearts run out;
the engine only emits the signal, enforcement is a human matter.
"""

from __future__ import annotations

import math

from .config import HeartsPolicy

CAUSE_KARMA = "karmaAward"
CAUSE_CHALLENGE = "challengeLoss"
CAUSE_SHORTFALL = "choreShortfall"
CAUSE_REGEN = "regeneration"
CAUSE_FADE = "fade"
CAUSE_MANUAL = "manualAdjust"

SANCTION_NONE = "none"
SANCTION_WARNING = "warning"
SANCTION_FINANCIAL = "financial"


def clamp_delta(balance: float, delta: float, max_hearts: float) -> float:
    """The portion of ``delta`` actually applied, keeping balance in [0, max]."""
    return min(max_hearts, max(0.0, balance + delta)) - balance


def shortfall_penalty(shortfall: float, owed: float, policy: HeartsPolicy) -> float:
    """Hearts lost for earning ``shortfall`` fewer points than ``owed``.

    Penalties step with the shortfall as a fraction of the obligation; the
    table's last bound is infinite so every positive shortfall matches.
    """
    if shortfall <= 0.0 or owed <= 0.0:
        return 0.0
    fraction = shortfall / owed
    for bound, penalty in policy.shortfall_penalties:
        if fraction <= bound:
            return penalty
    raise AssertionError("shortfall penalty table must end at inf")


def tick_delta(balance: float, policy: HeartsPolicy) -> float:
    """One month of regeneration (below baseline) or fading (above), without
    overshooting the baseline in either direction."""
    if balance < policy.baseline:
        return min(policy.regen_per_month, policy.baseline - balance)
    if balance > policy.baseline:
        return -min(policy.fade_per_month, balance - policy.baseline)
    return 0.0


def tick_cause(balance: float, policy: HeartsPolicy) -> str:
    return CAUSE_REGEN if balance < policy.baseline else CAUSE_FADE


def karma_award_count(active_residents: int, policy: HeartsPolicy) -> int:
    return max(1, math.floor(active_residents * policy.karma_top_fraction))


def select_karma_recipients(tallies: dict[str, int], k: int) -> list[str]:
    """Top-k recipients by karma tally, ties at the cutoff included.

    Zero tallies never win: if nobody gave karma, nobody earns hearts.
    """
    ranked = sorted(
        ((count, rid) for rid, count in tallies.items() if count > 0),
        key=lambda item: (-item[0], item[1]),
    )
    if not ranked or k <= 0:
        return []
    if len(ranked) > k:
        cutoff = ranked[k - 1][0]
        ranked = [item for item in ranked if item[0] >= cutoff]
    return [rid for _, rid in ranked]


def sanction_level(balance: float, policy: HeartsPolicy) -> str:
    if balance <= 0.0:
        return SANCTION_FINANCIAL
    if balance < policy.sanction_warning_below:
        return SANCTION_WARNING
    return SANCTION_NONE
