"""Continuous-auction accrual arithmetic.

Chores earn value linearly with neglect. The house emits
points_per_resident_per_month x active_residents points per calendar month,
split across chores by priority weight, so a chore's accrual rate is

    weight * ppm * active_residents / month_length_ms

Months differ in length, making the rate piecewise constant; accrual over
an interval integrates it across month boundaries exactly. Roster and
weight changes checkpoint accrued value at the change instant and apply the
new rate prospectively, never rewriting the past.
"""

from __future__ import annotations

from dataclasses import dataclass

from .timeutil import month_end, month_key, month_length_ms


def monthly_emission(weight: float, active_residents: int, ppm: float) -> float:
    """A chore's expected share of one month's emission."""
    return weight * ppm * active_residents


def accrued_between(
    start: int,
    end: int,
    weight: float,
    active_residents: int,
    ppm: float,
    tz: str,
) -> float:
    """Points accrued over [start, end) at constant weight and roster.

    Integrates the per-month rate piecewise to keep "ppm points per resident
    per month" exact in every month regardless of its length.
    """
    if end <= start or weight <= 0.0 or active_residents <= 0:
        return 0.0
    total = 0.0
    key = month_key(start, tz)
    cursor = start
    while cursor < end:
        boundary = month_end(key, tz)
        upper = min(end, boundary)
        total += (
            weight * ppm * active_residents * (upper - cursor) / month_length_ms(key, tz)
        )
        cursor = upper
        key = month_key(cursor, tz)
    return total


def house_emission(start: int, end: int, active_residents: int, ppm: float, tz: str) -> float:
    """Total house emission over [start, end) at a constant roster."""
    return accrued_between(start, end, 1.0, active_residents, ppm, tz)


@dataclass(frozen=True)
class AccrualStep:
    """Result of advancing a chore's value from its last checkpoint."""

    value: float       # capped value at the new instant
    emitted: float     # uncapped points emitted to this chore in the interval
    overflow: float    # emission discarded by the accrual cap


def advance_value(
    accrued: float,
    last_event_at: int,
    at: int,
    weight: float,
    active_residents: int,
    ppm: float,
    tz: str,
    cap_multiple: float | None,
) -> AccrualStep:
    """Accrue from the last checkpoint to ``at``, applying the cap prospectively.

    The cap bounds a neglected chore at cap_multiple x its expected monthly
    share. It only limits new accrual: value already banked is never reduced,
    even if a weight change lowers the cap below it.
    """
    emitted = accrued_between(last_event_at, at, weight, active_residents, ppm, tz)
    if cap_multiple is None:
        return AccrualStep(accrued + emitted, emitted, 0.0)
    cap = cap_multiple * monthly_emission(weight, active_residents, ppm)
    headroom = max(0.0, cap - accrued)
    applied = min(emitted, headroom)
    return AccrualStep(accrued + applied, emitted, emitted - applied)


def prorated_obligation(
    ppm: float, active_days: int, exempt_days: int, days_in_month: int
) -> float:
    """owed = ppm * (active_days - exempt_days) / days_in_month, floored at 0."""
    return max(0.0, ppm * (active_days - exempt_days) / days_in_month)


def claim_min_upvotes(value: float, small_max: float, small_votes: int, large_votes: int) -> int:
    """Small claims pass on the claimant's implicit vote; larger ones need a peer."""
    return small_votes if value <= small_max else large_votes
