"""The documented reference scenario and a generator for small random ones.

The reference house: nine residents, twelve months, eight chores with a
kitchen-heavy priority profile, two purchase accounts (an everyday fund
that gets spent down and a big-ticket fund that accumulates), two agents
who specialize hard (one sweeps, one washes dishes), a one-time shirker,
and heterogeneous purchasing initiative.
"""

from __future__ import annotations

import random
from typing import Any

KITCHEN = ["Wash Dishes", "Clean Kitchen Floor", "Wipe Counters"]
OTHER = ["Sweep Common Areas", "Mop Entryway", "Clean Bathroom",
         "Take Out Trash", "Yardwork"]
ALL_CHORES = KITCHEN + OTHER

REFERENCE_CONFIG: dict[str, Any] = {
    "timezone": "UTC",
    "accounts": [
        {"name": "General", "monthly_refill_cents": 25000,
         "initial_balance_cents": 25000},
        {"name": "Major Purchases", "monthly_refill_cents": 12000,
         "initial_balance_cents": 0},
    ],
}

# Pairwise judgments submitted in the first days: dishes pushed up twice,
# the rest spread around, leaving the kitchen group near a third of the
# total priority mass with dishes on top.
REFERENCE_PREFERENCES = [
    {"resident": "r0", "preferred": "Wash Dishes", "deprioritized": "Yardwork", "day": 2},
    {"resident": "r2", "preferred": "Wash Dishes", "deprioritized": "Take Out Trash", "day": 2},
    {"resident": "r6", "preferred": "Clean Bathroom", "deprioritized": "Yardwork", "day": 3},
    {"resident": "r1", "preferred": "Sweep Common Areas", "deprioritized": "Take Out Trash", "day": 3},
    {"resident": "r5", "preferred": "Mop Entryway", "deprioritized": "Take Out Trash", "day": 4},
    {"resident": "r4", "preferred": "Yardwork", "deprioritized": "Wipe Counters", "day": 4},
    {"resident": "r3", "preferred": "Take Out Trash", "deprioritized": "Clean Kitchen Floor", "day": 5},
]


def _agent(agent_id: str, diligence: float, focus: dict[str, float] | None,
           karma: float, honesty: float, absent: float, buying: float,
           overrides: dict[int, float] | None = None,
           chores: list[str] | None = None) -> dict[str, Any]:
    spec = dict.fromkeys(chores if chores is not None else ALL_CHORES, 1.0)
    if focus:
        for chore, weight in focus.items():
            spec[chore] = weight
    agent: dict[str, Any] = {
        "id": agent_id,
        "policy": {
            "diligence": diligence,
            "specialization": spec,
            "karma_generosity": karma,
            "vote_honesty": honesty,
            "absenteeism": absent,
            "purchase_initiative": buying,
        },
    }
    if overrides:
        agent["diligence_overrides"] = {str(k): v for k, v in overrides.items()}
    return agent


def reference_scenario(seed: int = 20250101, months: int = 12) -> dict[str, Any]:
    return {
        "seed": seed,
        "months": months,
        "start_month": "2025-01",
        "house": "reference-house",
        "config": REFERENCE_CONFIG,
        "chores": [{"name": name} for name in ALL_CHORES],
        "chore_groups": {"kitchen": KITCHEN},
        "buylist": [
            {"name": "dish soap", "typical_price_cents": 700},
            {"name": "sponges", "typical_price_cents": 500},
            {"name": "paper towels", "typical_price_cents": 1500},
            {"name": "trash bags", "typical_price_cents": 1200},
        ],
        "agents": [
            # r1 sweeps, r2 does the dishes: the self-sorting pair
            _agent("r0", 0.92, None, 4.0, 0.9, 2.0, 2.0),
            _agent("r1", 0.96, {"Sweep Common Areas": 18.0, "Mop Entryway": 3.0},
                   0.8, 0.9, 0.0, 0.4),
            _agent("r2", 0.96, {"Wash Dishes": 18.0, "Wipe Counters": 3.0},
                   0.8, 0.9, 0.0, 0.3),
            _agent("r3", 0.9, None, 3.0, 0.85, 2.0, 1.5),
            _agent("r4", 0.88, {"Wash Dishes": 6.0, "Clean Kitchen Floor": 3.0},
                   1.5, 0.85, 2.0, 1.0),
            _agent("r5", 0.78, None, 1.0, 0.8, 3.0, 0.6),
            _agent("r6", 0.9, None, 2.0, 0.9, 2.0, 6.0),
            _agent("r7", 0.86, {"Clean Bathroom": 4.0}, 1.5, 0.85, 2.0, 3.5),
            # shirks exactly once, in March, then returns to form
            _agent("r8", 0.95, None, 1.0, 0.85, 2.0, 0.2, overrides={2: 0.0}),
        ],
        "preferences": REFERENCE_PREFERENCES,
        "planted_dishonest_claims": [],
    }


def honesty_probe_scenario(seed: int, vote_honesty: float = 0.3,
                           plants: int = 6) -> dict[str, Any]:
    """Small house with planted dishonest claims for the rejection-rate check."""
    rng = random.Random(seed)
    chores = ["Wash Dishes", "Sweep Common Areas", "Clean Bathroom", "Yardwork"]
    agents = [
        _agent(f"r{i}", 0.85, None, 0.5, vote_honesty, 0.0, 0.3, chores=chores)
        for i in range(4)
    ]
    planted = []
    for k in range(plants):
        planted.append({
            "resident": f"r{rng.randrange(4)}",
            "chore": chores[rng.randrange(len(chores))],
            "month_offset": k % 2,
            "day": 6 + 3 * (k % 8),
        })
    return {
        "seed": seed,
        "months": 2,
        "start_month": "2025-03",
        "house": "probe-house",
        "config": {"timezone": "UTC"},
        "chores": [{"name": name} for name in chores],
        "chore_groups": {},
        "agents": agents,
        "preferences": [],
        "planted_dishonest_claims": planted,
    }


def random_scenario(seed: int) -> dict[str, Any]:
    """Small one-month scenario with randomized policies; conservation fodder."""
    rng = random.Random(seed)
    n_agents = rng.randint(3, 6)
    chores = rng.sample(ALL_CHORES, rng.randint(3, 6))
    agents = []
    for i in range(n_agents):
        focus = None
        if rng.random() < 0.5:
            focus = {rng.choice(chores): rng.uniform(3.0, 12.0)}
        agents.append(_agent(
            f"r{i}",
            diligence=rng.uniform(0.3, 1.0),
            focus=focus,
            karma=rng.uniform(0.0, 4.0),
            honesty=rng.uniform(0.5, 1.0),
            absent=rng.uniform(0.0, 4.0),
            buying=rng.uniform(0.0, 4.0),
            chores=chores,
        ))
    start = rng.choice(["2025-01", "2025-02", "2025-04", "2025-06", "2025-09"])
    prefs = []
    for _ in range(rng.randint(0, 5)):
        a, b = rng.sample(chores, 2)
        prefs.append({
            "resident": f"r{rng.randrange(n_agents)}",
            "preferred": a, "deprioritized": b,
            "day": rng.randint(1, 20),
        })
    return {
        "seed": seed,
        "months": 1,
        "start_month": start,
        "house": f"rand-{seed}",
        "config": {"timezone": rng.choice(["UTC", "America/Los_Angeles"])},
        "chores": [{"name": name} for name in chores],
        "chore_groups": {},
        "agents": agents,
        "preferences": prefs,
        "planted_dishonest_claims": [],
    }
