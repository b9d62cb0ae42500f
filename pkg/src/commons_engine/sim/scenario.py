"""Scenario files: roster schedule, per-agent policies, scripted events.

A scenario plus its seed fully determines the event log, byte for byte.
Scenarios are plain JSON; ``load_scenario`` validates shapes and ranges and
raises InvalidScenario with a field path on anything off.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..config import HouseConfig
from ..errors import InvalidScenario


@dataclass(frozen=True)
class Policy:
    diligence: float = 0.9
    specialization: dict[str, float] = field(default_factory=dict)  # chore name -> weight
    karma_generosity: float = 1.0       # expected recognitions given per month
    vote_honesty: float = 0.8           # p(downvote a planted dishonest claim); also p(verify honest work)
    absenteeism: float = 0.0            # expected exempt days declared per month
    purchase_initiative: float = 1.0    # expected purchase proposals per month


@dataclass(frozen=True)
class AgentSpec:
    id: str
    policy: Policy
    join_month: int = 0                 # month offset from scenario start
    leave_month: int | None = None
    diligence_overrides: dict[int, float] = field(default_factory=dict)  # month offset -> diligence

    def diligence_in(self, month_offset: int) -> float:
        return self.diligence_overrides.get(month_offset, self.policy.diligence)


@dataclass(frozen=True)
class PlantedClaim:
    resident: str
    chore_name: str
    month_offset: int
    day: int


@dataclass(frozen=True)
class ScriptedPreference:
    resident: str
    preferred: str     # chore names
    deprioritized: str
    month_offset: int = 0
    day: int = 1


@dataclass(frozen=True)
class Scenario:
    seed: int
    months: int
    start_month: str                    # "YYYY-MM"
    house: str
    config: HouseConfig
    chores: tuple[tuple[str, str], ...]           # (name, description)
    chore_groups: dict[str, list[str]]            # analytics metadata
    buylist: tuple[dict[str, Any], ...]
    agents: tuple[AgentSpec, ...]
    preferences: tuple[ScriptedPreference, ...]
    planted_claims: tuple[PlantedClaim, ...]

    def chore_names(self) -> list[str]:
        return [name for name, _ in self.chores]


def _fail(path: str, message: str) -> None:
    raise InvalidScenario(f"{path}: {message}")


def load_scenario(source: dict[str, Any] | str | Path) -> Scenario:
    if not isinstance(source, dict):
        source = json.loads(Path(source).read_text(encoding="utf-8"))
    data = dict(source)

    seed = data.get("seed")
    if not isinstance(seed, int):
        _fail("seed", "must be an integer")
    months = data.get("months")
    if not isinstance(months, int) or months < 1:
        _fail("months", "must be a positive integer")
    start_month = data.get("start_month", "2025-01")
    if not isinstance(start_month, str) or len(start_month) != 7:
        _fail("start_month", "must look like YYYY-MM")

    config = HouseConfig.from_dict(data["config"]) if data.get("config") else HouseConfig()

    chores_raw = data.get("chores", [])
    if not chores_raw:
        _fail("chores", "at least one chore required")
    chores = tuple(
        (c["name"], c.get("description", "")) if isinstance(c, dict) else (c, "")
        for c in chores_raw
    )
    names = [n for n, _ in chores]
    if len(set(names)) != len(names):
        _fail("chores", "duplicate chore name")

    groups = data.get("chore_groups", {})
    for group, members in groups.items():
        for member in members:
            if member not in names:
                _fail(f"chore_groups.{group}", f"unknown chore {member!r}")

    agents = []
    for i, raw in enumerate(data.get("agents", [])):
        policy_raw = dict(raw.get("policy", {}))
        spec = dict(policy_raw.get("specialization", {}))
        for chore in spec:
            if chore not in names:
                _fail(f"agents[{i}].policy.specialization", f"unknown chore {chore!r}")
            if spec[chore] < 0:
                _fail(f"agents[{i}].policy.specialization", "weights must be >= 0")
        total = sum(spec.values())
        if spec and total > 0:
            spec = {c: w / total for c, w in spec.items()}
        else:
            spec = {c: 1.0 / len(names) for c in names}
        policy_raw["specialization"] = spec
        policy = Policy(**policy_raw)
        if not 0.0 <= policy.diligence <= 1.0:
            _fail(f"agents[{i}].policy.diligence", "must be in [0, 1]")
        if not 0.0 <= policy.vote_honesty <= 1.0:
            _fail(f"agents[{i}].policy.vote_honesty", "must be in [0, 1]")
        for rate_field in ("karma_generosity", "absenteeism", "purchase_initiative"):
            if getattr(policy, rate_field) < 0:
                _fail(f"agents[{i}].policy.{rate_field}", "rates must be >= 0")
        agents.append(AgentSpec(
            id=raw["id"],
            policy=policy,
            join_month=raw.get("join_month", 0),
            leave_month=raw.get("leave_month"),
            diligence_overrides={
                int(k): float(v)
                for k, v in raw.get("diligence_overrides", {}).items()
            },
        ))
    if not agents:
        _fail("agents", "at least one agent required")
    ids = [a.id for a in agents]
    if len(set(ids)) != len(ids):
        _fail("agents", "duplicate agent id")

    preferences = tuple(
        ScriptedPreference(
            resident=p["resident"], preferred=p["preferred"],
            deprioritized=p["deprioritized"],
            month_offset=p.get("month_offset", 0), day=p.get("day", 1),
        )
        for p in data.get("preferences", [])
    )
    for i, pref in enumerate(preferences):
        if pref.preferred not in names or pref.deprioritized not in names:
            _fail(f"preferences[{i}]", "unknown chore name")
        if pref.resident not in ids:
            _fail(f"preferences[{i}]", f"unknown agent {pref.resident!r}")

    planted = tuple(
        PlantedClaim(
            resident=p["resident"], chore_name=p["chore"],
            month_offset=p["month_offset"], day=p.get("day", 5),
        )
        for p in data.get("planted_dishonest_claims", [])
    )
    for i, plant in enumerate(planted):
        if plant.chore_name not in names:
            _fail(f"planted_dishonest_claims[{i}]", "unknown chore name")
        if plant.resident not in ids:
            _fail(f"planted_dishonest_claims[{i}]", f"unknown agent {plant.resident!r}")

    return Scenario(
        seed=seed, months=months, start_month=start_month,
        house=data.get("house", "house"), config=config,
        chores=chores, chore_groups={g: list(m) for g, m in groups.items()},
        buylist=tuple(data.get("buylist", [])),
        agents=tuple(agents), preferences=preferences, planted_claims=planted,
    )
