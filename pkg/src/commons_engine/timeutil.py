"""Calendar arithmetic on epoch-millisecond timestamps.

All engine time is integer milliseconds since the Unix epoch (UTC). Month
boundaries are computed in the house's configured IANA timezone, so "100
points per month" tracks the residents' lived calendar: months differ in
length and a DST-shifted month is genuinely shorter or longer in wall ms.
"""

from __future__ import annotations

import calendar
from datetime import datetime
from zoneinfo import ZoneInfo

HOUR_MS = 3_600_000
DAY_MS = 86_400_000


def month_key(ts: int, tz: str) -> str:
    """Return the "YYYY-MM" month containing timestamp ``ts`` in ``tz``."""
    dt = datetime.fromtimestamp(ts / 1000, tz=ZoneInfo(tz))
    return f"{dt.year:04d}-{dt.month:02d}"


def parse_month(key: str) -> tuple[int, int]:
    year, _, month = key.partition("-")
    y, m = int(year), int(month)
    if not 1 <= m <= 12:
        raise ValueError(f"bad month key {key!r}")
    return y, m


def month_start(key: str, tz: str) -> int:
    y, m = parse_month(key)
    dt = datetime(y, m, 1, tzinfo=ZoneInfo(tz))
    return int(dt.timestamp() * 1000)


def month_end(key: str, tz: str) -> int:
    """Exclusive end of the month: the first instant of the next month."""
    return month_start(next_month(key), tz)


def next_month(key: str) -> str:
    y, m = parse_month(key)
    if m == 12:
        return f"{y + 1:04d}-01"
    return f"{y:04d}-{m + 1:02d}"


def prev_month(key: str) -> str:
    y, m = parse_month(key)
    if m == 1:
        return f"{y - 1:04d}-12"
    return f"{y:04d}-{m - 1:02d}"


def month_length_ms(key: str, tz: str) -> int:
    return month_end(key, tz) - month_start(key, tz)


def days_in_month(key: str) -> int:
    y, m = parse_month(key)
    return calendar.monthrange(y, m)[1]


def day_of_month(ts: int, tz: str) -> int:
    return datetime.fromtimestamp(ts / 1000, tz=ZoneInfo(tz)).day


def day_start(key: str, day: int, tz: str) -> int:
    """Start of calendar day ``day`` (1-based) of month ``key`` in ``tz``."""
    y, m = parse_month(key)
    dt = datetime(y, m, day, tzinfo=ZoneInfo(tz))
    return int(dt.timestamp() * 1000)


def months_between(start_ts: int, end_ts: int, tz: str) -> list[str]:
    """Month keys intersecting [start_ts, end_ts), in chronological order."""
    if end_ts <= start_ts:
        return []
    keys = []
    key = month_key(start_ts, tz)
    while month_start(key, tz) < end_ts:
        keys.append(key)
        key = next_month(key)
    return keys


def month_boundaries_between(start_ts: int, end_ts: int, tz: str) -> list[tuple[str, int]]:
    """(completed month, boundary instant) pairs with start < boundary <= end.

    A pair (m, b) means month m ended at instant b; used by the scheduler to
    find monthly jobs that have come due.
    """
    out = []
    for key in months_between(start_ts, end_ts + 1, tz):
        boundary = month_end(key, tz)
        if start_ts < boundary <= end_ts:
            out.append((key, boundary))
    return out


def active_days_in_month(
    key: str, tz: str, active_from: int, active_until: int | None
) -> set[int]:
    """Calendar days (1-based) of the month on which a tenure overlaps.

    A day counts if the resident was active at any instant of that day.
    """
    start = month_start(key, tz)
    end = month_end(key, tz)
    lo = max(start, active_from)
    hi = end if active_until is None else min(end, active_until)
    if hi <= lo:
        return set()
    zone = ZoneInfo(tz)
    first = datetime.fromtimestamp(lo / 1000, tz=zone).day
    # hi is exclusive; the last day touched is the day containing hi - 1ms
    last = datetime.fromtimestamp((hi - 1) / 1000, tz=zone).day
    return set(range(first, last + 1))


def format_ts(ts: int, tz: str = "UTC") -> str:
    return datetime.fromtimestamp(ts / 1000, tz=ZoneInfo(tz)).isoformat()


def ts(year: int, month: int, day: int = 1, hour: int = 0, minute: int = 0,
       second: int = 0, tz: str = "UTC") -> int:
    """Epoch-ms constructor used heavily by tests and scenarios."""
    dt = datetime(year, month, day, hour, minute, second, tzinfo=ZoneInfo(tz))
    return int(dt.timestamp() * 1000)


def add_hours(t: int, hours: float) -> int:
    return t + int(hours * HOUR_MS)


def add_days(t: int, days: float) -> int:
    return t + int(days * DAY_MS)


__all__ = [
    "HOUR_MS",
    "DAY_MS",
    "month_key",
    "parse_month",
    "month_start",
    "month_end",
    "next_month",
    "prev_month",
    "month_length_ms",
    "days_in_month",
    "day_of_month",
    "day_start",
    "months_between",
    "month_boundaries_between",
    "active_days_in_month",
    "format_ts",
    "ts",
    "add_hours",
    "add_days",
]
