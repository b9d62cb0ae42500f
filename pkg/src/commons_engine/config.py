"""Per-house configuration.

Every numeric policy knob lives here so houses can tune their mechanisms
(rates were tuned in production use; tunability is a requirement, not a
nicety). Config is validated on construction and travels in the
house-created event, so the log is self-describing.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict
from typing import Any
from zoneinfo import ZoneInfo

from .errors import ConfigInvalid
from .timeutil import HOUR_MS


@dataclass(frozen=True)
class HeartsPolicy:
    baseline: float = 5.0
    max_hearts: float = 7.0
    regen_per_month: float = 0.25
    fade_per_month: float = 0.25
    karma_award: float = 0.5
    # K = max(1, floor(active_residents * karma_top_fraction)) recipients, ties included
    karma_top_fraction: float = 0.25
    challenge_stake_default: float = 1.0
    challenge_stake_max: float = 2.0
    # shortfall penalty table: (upper bound on shortfall/owed, hearts lost)
    shortfall_penalties: tuple[tuple[float, float], ...] = (
        (0.25, 0.5),
        (0.50, 1.0),
        (float("inf"), 1.5),
    )
    sanction_warning_below: float = 3.0


@dataclass(frozen=True)
class AccountDef:
    name: str
    monthly_refill_cents: int
    initial_balance_cents: int = 0


@dataclass(frozen=True)
class HouseConfig:
    timezone: str = "UTC"
    points_per_resident_per_month: float = 100.0

    # lazy-consensus windows
    claim_window_ms: int = 72 * HOUR_MS
    challenge_window_ms: int = 72 * HOUR_MS
    purchase_window_ms: int = 24 * HOUR_MS
    amendment_window_ms: int = 48 * HOUR_MS

    # claim verification thresholds
    claim_small_max_points: float = 25.0
    claim_min_upvotes_small: int = 1
    claim_min_upvotes_large: int = 2
    claim_require_majority: bool = True

    # amendment quorums, as fractions of the active roster
    chore_amendment_quorum: float = 0.4
    account_amendment_quorum: float = 0.5
    buylist_amendment_quorum: float = 0.4

    # challenge quorum: max(2, ceil(active * fraction)), majority required
    challenge_quorum: float = 0.4

    # prioritization
    damping: float = 0.85
    # total probability mass reserved for the uniform floor (per-chore floor
    # is floor_mass / n_active_chores)
    priority_floor_mass: float = 0.25

    # accrued value cap, as a multiple of a chore's expected monthly share;
    # None disables the cap
    accrual_cap_multiple: float | None = 2.0

    # purchasing
    threshold_step_cents: int = 5000
    freeform_extra_upvotes: int = 1
    purchase_require_majority: bool = True

    hearts: HeartsPolicy = field(default_factory=HeartsPolicy)
    accounts: tuple[AccountDef, ...] = (AccountDef("General", 20000),)

    def __post_init__(self) -> None:
        validate_config(self)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["hearts"]["shortfall_penalties"] = [
            [("inf" if bound == float("inf") else bound), penalty]
            for bound, penalty in self.hearts.shortfall_penalties
        ]
        return d

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "HouseConfig":
        data = dict(data)
        hearts_data = dict(data.pop("hearts", {}))
        if "shortfall_penalties" in hearts_data:
            hearts_data["shortfall_penalties"] = tuple(
                (float("inf") if bound == "inf" else float(bound), float(penalty))
                for bound, penalty in hearts_data["shortfall_penalties"]
            )
        accounts = tuple(
            a if isinstance(a, AccountDef) else AccountDef(**a)
            for a in data.pop("accounts", cls.__dataclass_fields__["accounts"].default)
        )
        try:
            return cls(hearts=HeartsPolicy(**hearts_data), accounts=accounts, **data)
        except TypeError as exc:
            raise ConfigInvalid(str(exc)) from exc


def _require(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise ConfigInvalid(f"{path}: {message}")


def validate_config(cfg: HouseConfig) -> None:
    try:
        ZoneInfo(cfg.timezone)
    except Exception:
        raise ConfigInvalid(f"timezone: unknown zone {cfg.timezone!r}") from None
    _require(cfg.points_per_resident_per_month > 0, "points_per_resident_per_month", "must be > 0")
    for name in ("claim_window_ms", "challenge_window_ms", "purchase_window_ms", "amendment_window_ms"):
        _require(getattr(cfg, name) > 0, name, "must be > 0")
    _require(cfg.claim_small_max_points >= 0, "claim_small_max_points", "must be >= 0")
    _require(cfg.claim_min_upvotes_small >= 1, "claim_min_upvotes_small", "must be >= 1")
    _require(cfg.claim_min_upvotes_large >= 1, "claim_min_upvotes_large", "must be >= 1")
    for name in ("chore_amendment_quorum", "account_amendment_quorum",
                 "buylist_amendment_quorum", "challenge_quorum"):
        _require(0 < getattr(cfg, name) <= 1, name, "must be in (0, 1]")
    _require(0 < cfg.damping < 1, "damping", "must be in (0, 1)")
    _require(0 <= cfg.priority_floor_mass < 1, "priority_floor_mass", "must be in [0, 1)")
    if cfg.accrual_cap_multiple is not None:
        _require(cfg.accrual_cap_multiple > 0, "accrual_cap_multiple", "must be > 0 or null")
    _require(cfg.threshold_step_cents > 0, "threshold_step_cents", "must be > 0")
    _require(cfg.freeform_extra_upvotes >= 0, "freeform_extra_upvotes", "must be >= 0")

    h = cfg.hearts
    _require(h.baseline > 0, "hearts.baseline", "must be > 0")
    _require(h.max_hearts >= h.baseline, "hearts.max_hearts", "must be >= baseline")
    _require(h.regen_per_month > 0, "hearts.regen_per_month", "must be > 0")
    _require(h.fade_per_month > 0, "hearts.fade_per_month", "must be > 0")
    _require(h.karma_award > 0, "hearts.karma_award", "must be > 0")
    _require(0 < h.karma_top_fraction <= 1, "hearts.karma_top_fraction", "must be in (0, 1]")
    _require(h.challenge_stake_max > 0, "hearts.challenge_stake_max", "must be > 0")
    _require(0 < h.challenge_stake_default <= h.challenge_stake_max,
             "hearts.challenge_stake_default", "must be in (0, stake_max]")
    _require(len(h.shortfall_penalties) > 0, "hearts.shortfall_penalties", "must be non-empty")
    bounds = [b for b, _ in h.shortfall_penalties]
    _require(bounds == sorted(bounds), "hearts.shortfall_penalties", "bounds must be ascending")
    _require(bounds[-1] == float("inf"), "hearts.shortfall_penalties", "last bound must be inf")
    _require(0 <= h.sanction_warning_below <= h.max_hearts,
             "hearts.sanction_warning_below", "must be in [0, max_hearts]")

    names = [a.name for a in cfg.accounts]
    _require(len(names) == len(set(names)), "accounts", "duplicate account name")
    for i, a in enumerate(cfg.accounts):
        _require(bool(a.name), f"accounts[{i}].name", "must be non-empty")
        _require(a.monthly_refill_cents >= 0, f"accounts[{i}].monthly_refill_cents", "must be >= 0")
        _require(a.initial_balance_cents >= 0, f"accounts[{i}].initial_balance_cents", "must be >= 0")
