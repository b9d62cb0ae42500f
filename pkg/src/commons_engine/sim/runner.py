"""Drive the real engine with policy agents on a simulated clock.

Agents only touch the public command API and public queries — no reaching
into engine state — and every decision draws from one seeded RNG consumed
in a fixed order, so a scenario plus seed yields a byte-identical log.

Each simulated day: the scheduler ticks, roster changes and scripted events
fire, then every agent (in id order) votes on open polls, decides whether
to claim, hands out karma, and maybe proposes a purchase. The claim rule: a
chore is worth claiming once its value clears an effort bar scaled down by
how much the agent favors that chore, and agents only reach for work while
behind on their monthly obligation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any

from ..engine import Engine, SimClock
from ..errors import CommonsError, InsufficientFunds, ZeroValue
from ..store import MemoryStore
from ..timeutil import (
    DAY_MS,
    day_of_month,
    days_in_month,
    month_key,
    month_start,
    next_month,
)
from .scenario import Scenario

MINUTE_MS = 60_000
EFFORT_BASE = 6.0          # points a chore must reach before an indifferent agent bothers
CATCHUP_DAYS = 3           # final days of the month when laggards sweep anything left
CATCHUP_MIN_VALUE = 0.5
CATCHUP_MAX_CLAIMS = 3
EVERYDAY_PRICE_RANGE = (500, 4200)     # cents
BIG_TICKET_PRICE_RANGE = (15000, 40000)
BIG_TICKET_SHARE = 0.05    # chance a purchase reaches for the non-primary account


@dataclass
class RunResult:
    engine: Engine
    scenario: Scenario
    planted: list[dict[str, Any]] = field(default_factory=list)
    stats: dict[str, int] = field(default_factory=dict)

    @property
    def events(self):
        return self.engine.events


def month_offset_key(start_month: str, offset: int) -> str:
    key = start_month
    for _ in range(offset):
        key = next_month(key)
    return key


def run_scenario(scenario: Scenario) -> RunResult:
    tz = scenario.config.timezone
    t0 = month_start(scenario.start_month, tz)
    end = month_start(month_offset_key(scenario.start_month, scenario.months), tz)

    rng = random.Random(scenario.seed)
    clock = SimClock(t0)
    engine = Engine(store=MemoryStore(), clock=clock)
    engine.create_house(scenario.house, scenario.config, at=t0,
                        chores=list(scenario.chores), buylist=list(scenario.buylist))

    name_to_id = {c.name: c.id for c in engine.list_chores(scenario.house)}
    agents = {a.id: a for a in scenario.agents}
    joined: set[str] = set()
    voted: dict[str, set[str]] = {a: set() for a in agents}
    planted_index = {
        (p.resident, month_offset_key(scenario.start_month, p.month_offset), p.day): p
        for p in scenario.planted_claims
    }
    prefs_index: dict[tuple[str, int], list] = {}
    for pref in scenario.preferences:
        key = (month_offset_key(scenario.start_month, pref.month_offset), pref.day)
        prefs_index.setdefault(key, []).append(pref)

    planted_records: list[dict[str, Any]] = []
    stats = {"claims": 0, "planted": 0, "purchases": 0, "karma": 0, "skipped": 0}

    day_start = t0
    while day_start < end:
        clock.set(day_start)
        minute = [0]

        def stamp() -> int:
            minute[0] += 1
            return day_start + minute[0] * MINUTE_MS

        engine.run_scheduler_tick(at=day_start)

        mkey = month_key(day_start, tz)
        dom = day_of_month(day_start, tz)
        dim = days_in_month(mkey)
        month_off = _month_offset(scenario.start_month, mkey)

        if dom == 1 or day_start == t0:
            _roster_changes(engine, scenario, agents, joined, month_off, stamp)
            _declare_absences(engine, scenario, agents, joined, mkey, dim, rng, stamp)

        for pref in prefs_index.get((mkey, dom), []):
            if pref.resident in joined:
                engine.submit_preference(
                    scenario.house, pref.resident,
                    name_to_id[pref.preferred], name_to_id[pref.deprioritized],
                    at=stamp(),
                )

        plant_today = [
            plant for (resident, month, day), plant in sorted(planted_index.items())
            if month == mkey and day == dom and resident in joined
        ]
        for plant in plant_today:
            outcome = _plant_claim(engine, scenario, plant, name_to_id, stamp)
            if outcome is not None:
                planted_records.append(outcome)
                stats["planted"] += 1

        planted_proposals = {p["proposal_id"] for p in planted_records}
        for agent_id in sorted(joined):
            agent = agents[agent_id]
            now = stamp()
            if not engine.houses[scenario.house].is_active(agent_id, now):
                continue
            _vote(engine, scenario, agent, planted_proposals, voted[agent_id], rng, now)
            claimed = _claim_decision(engine, scenario, agent, month_off, mkey,
                                      dom, dim, rng, stamp)
            stats["claims"] += claimed
            stats["karma"] += _give_karma(engine, scenario, agent, mkey, dim, rng, stamp)
            stats["purchases"] += _propose_purchase(engine, scenario, agent, dim, rng, stamp)

        day_start += DAY_MS

    # settle every poll opened near the end (claims run the longest window)
    clock.set(end + scenario.config.claim_window_ms + DAY_MS)
    engine.run_scheduler_tick(at=end + scenario.config.claim_window_ms + DAY_MS)

    for record in planted_records:
        proposal = engine.houses[scenario.house].proposals[record["proposal_id"]]
        record["outcome"] = proposal.outcome
        record["rejected"] = proposal.outcome == "failed"

    return RunResult(engine=engine, scenario=scenario,
                     planted=planted_records, stats=stats)


def _month_offset(start_month: str, current: str) -> int:
    sy, sm = int(start_month[:4]), int(start_month[5:7])
    cy, cm = int(current[:4]), int(current[5:7])
    return (cy - sy) * 12 + (cm - sm)


def _roster_changes(engine, scenario, agents, joined, month_off, stamp) -> None:
    for agent_id in sorted(agents):
        spec = agents[agent_id]
        if spec.join_month == month_off and agent_id not in joined:
            engine.add_resident(scenario.house, agent_id, at=stamp())
            joined.add(agent_id)
        if spec.leave_month == month_off and agent_id in joined:
            engine.remove_resident(scenario.house, agent_id, at=stamp())
            joined.discard(agent_id)


def _declare_absences(engine, scenario, agents, joined, mkey, dim, rng, stamp) -> None:
    for agent_id in sorted(joined):
        rate = agents[agent_id].policy.absenteeism
        if rate <= 0:
            continue
        days = int(rate)
        if rng.random() < rate - days:
            days += 1
        days = min(days, dim)
        if days == 0:
            continue
        first = rng.randint(1, dim - days + 1)
        try:
            engine.declare_exemption(scenario.house, agent_id, mkey,
                                     first, first + days - 1, at=stamp())
        except CommonsError:
            pass


def _plant_claim(engine, scenario, plant, name_to_id, stamp) -> dict[str, Any] | None:
    chore_id = name_to_id[plant.chore_name]
    at = stamp()
    try:
        claim = engine.claim_chore(scenario.house, chore_id, plant.resident, at=at)
    except (ZeroValue, CommonsError):
        return None
    return {
        "resident": plant.resident, "chore": plant.chore_name,
        "claim_id": claim.id, "proposal_id": claim.proposal_id, "at": at,
    }


def _vote(engine, scenario, agent, planted_proposals, seen, rng, now) -> None:
    for proposal in engine.list_proposals(scenario.house, open_only=True, at=now):
        if proposal.id in seen or proposal.proposer == agent.id:
            continue
        seen.add(proposal.id)
        roll = rng.random()
        if proposal.id in planted_proposals:
            if roll < agent.policy.vote_honesty:
                engine.cast_ballot(scenario.house, proposal.id, agent.id, "down", at=now)
        else:
            if roll < agent.policy.vote_honesty:
                engine.cast_ballot(scenario.house, proposal.id, agent.id, "up", at=now)


def _claim_decision(engine, scenario, agent, month_off, mkey, dom, dim, rng, stamp) -> int:
    statements = engine.get_obligations(scenario.house, mkey)["statements"]
    mine = next((s for s in statements if s["resident"] == agent.id), None)
    if mine is None or mine["owed"] <= 0:
        return 0
    target = mine["owed"] * dom / dim
    if mine["earned"] >= target:
        return 0
    if rng.random() >= agent.diligence_in(month_off):
        return 0

    catchup = dom > dim - CATCHUP_DAYS
    allowance = CATCHUP_MAX_CLAIMS if catchup else 1
    earned = mine["earned"]
    n_chores = max(1, len(scenario.chores))
    claims_made = 0
    for _ in range(allowance):
        board = engine.chore_board(scenario.house, engine.clock.now())
        best, best_score = None, 0.0
        for entry in board:
            weight = agent.policy.specialization.get(entry["name"], 0.0)
            bar = CATCHUP_MIN_VALUE if catchup else EFFORT_BASE / max(weight * n_chores, 1e-9)
            if entry["value"] < bar:
                continue
            score = (weight + 1e-6) * entry["value"]
            if score > best_score:
                best, best_score = entry, score
        if best is None:
            break
        try:
            claim = engine.claim_chore(scenario.house, best["id"], agent.id, at=stamp())
        except ZeroValue:
            break
        claims_made += 1
        earned += claim.value
        if earned >= mine["owed"]:
            break
    return claims_made


def _give_karma(engine, scenario, agent, mkey, dim, rng, stamp) -> int:
    if rng.random() >= agent.policy.karma_generosity / dim:
        return 0
    statements = engine.get_obligations(scenario.house, mkey)["statements"]
    others = [s for s in statements if s["resident"] != agent.id]
    if not others:
        return 0
    # thank whoever has visibly been doing the work
    weights = [s["earned"] + 0.25 for s in others]
    recipient = rng.choices([s["resident"] for s in others], weights=weights, k=1)[0]
    try:
        engine.record_karma(scenario.house, agent.id, recipient, at=stamp())
    except CommonsError:
        return 0
    return 1


def _propose_purchase(engine, scenario, agent, dim, rng, stamp) -> int:
    if rng.random() >= agent.policy.purchase_initiative / dim:
        return 0
    accounts = engine.list_accounts(scenario.house)
    if not accounts:
        return 0
    big = len(accounts) > 1 and rng.random() < BIG_TICKET_SHARE
    account = accounts[1] if big else accounts[0]
    low, high = BIG_TICKET_PRICE_RANGE if big else EVERYDAY_PRICE_RANGE
    price = rng.randint(low, high)
    items = [i.name for i in engine.buylist_items(scenario.house)]
    item = rng.choice(items) if items and rng.random() < 0.7 else f"supplies ({agent.id})"
    try:
        engine.propose_purchase(scenario.house, agent.id, item, price,
                                account.id, at=stamp())
    except (InsufficientFunds, CommonsError):
        return 0
    return 1
