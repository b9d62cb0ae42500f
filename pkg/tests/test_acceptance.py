"""Acceptance suite: one test per criterion, one printed verdict line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines.
Shared simulation batches are session-scoped so the whole suite stays well
inside its runtime budgets.
"""

import calendar
import random
import time
from datetime import datetime, timezone

import numpy as np
import pytest

from commons_engine import Engine, FileStore, HouseConfig, replay
from commons_engine import consensus
from commons_engine.chores import accrued_between
from commons_engine.prioritize import compute_priorities
from commons_engine.sim import (
    compute_chore_shares,
    compute_hearts_trajectories,
    compute_purchase_stats,
    compute_specialization,
    load_scenario,
    run_scenario,
)
from commons_engine.sim.reference import KITCHEN, random_scenario, reference_scenario
from commons_engine.timeutil import (
    HOUR_MS, add_days, add_hours, month_end, month_key, month_start, ts,
)

from conftest import T0, make_engine, make_house

N_RANDOM_SCENARIOS = 100
N_REPLAY_RUNS = 50


def verdict(name: str, ok: bool, detail: str = "") -> bool:
    line = f"[{'PASS' if ok else 'FAIL'}] {name}"
    if detail:
        line += f" — {detail}"
    print(line)
    return ok


@pytest.fixture(scope="module")
def random_runs():
    runs = []
    started = time.monotonic()
    for seed in range(N_RANDOM_SCENARIOS):
        runs.append(run_scenario(load_scenario(random_scenario(seed))))
    return runs, time.monotonic() - started


@pytest.fixture(scope="module")
def reference_run():
    started = time.monotonic()
    result = run_scenario(load_scenario(reference_scenario()))
    return result, time.monotonic() - started


def independent_emission_oracle(events, end_ms: int, ppm: float) -> float:
    """Total emission implied by the log's roster history, from first principles.

    Reads only resident arrival/departure events and walks UTC calendar
    months with the stdlib; shares no code with the engine's accrual path.
    """
    def fixed_roster_emission(start_ms: int, stop_ms: int, residents: int) -> float:
        total, cursor = 0.0, start_ms
        while cursor < stop_ms:
            dt = datetime.fromtimestamp(cursor / 1000, tz=timezone.utc)
            next_first = datetime(
                dt.year + (dt.month == 12), dt.month % 12 + 1, 1, tzinfo=timezone.utc)
            boundary = int(next_first.timestamp() * 1000)
            first = datetime(dt.year, dt.month, 1, tzinfo=timezone.utc)
            month_ms = boundary - int(first.timestamp() * 1000)
            upper = min(stop_ms, boundary)
            total += ppm * residents * (upper - cursor) / month_ms
            cursor = upper
        return total

    total = 0.0
    count = 0
    cursor = None
    for event in events:
        if event.kind not in ("resident_added", "resident_removed"):
            continue
        if cursor is not None:
            total += fixed_roster_emission(cursor, event.at, count)
        count += 1 if event.kind == "resident_added" else -1
        cursor = event.at
    if cursor is not None:
        total += fixed_roster_emission(cursor, end_ms, count)
    return total


def test_point_conservation(random_runs):
    """Credits + residual accrued + write-offs equal elapsed emission, 1e-6."""
    runs, elapsed = random_runs
    worst = 0.0
    oracle_worst = 0.0
    for result in runs:
        house = result.scenario.house
        report = result.engine.conservation_report(house)
        worst = max(worst, abs(report["residual"]))
        if result.scenario.config.timezone == "UTC":
            hs = result.engine.houses[house]
            oracle = independent_emission_oracle(
                result.events, result.engine.clock.now(),
                hs.config.points_per_resident_per_month)
            oracle_worst = max(oracle_worst, abs(report["emission"] - oracle))
    ok = worst < 1e-6 and oracle_worst < 1e-6 and elapsed < 60.0
    assert verdict(
        "point conservation",
        ok,
        f"{len(runs)} scenarios, max residual {worst:.2e}, "
        f"emission-vs-oracle {oracle_worst:.2e}, {elapsed:.1f}s",
    )


def test_accrual_linearity_and_reset():
    """Closed-form accrual is linear, matches a 1-minute integrator, resets on claim."""
    minute = 60_000
    failures = []

    def integrator(start, end, weight, residents, ppm):
        total, cursor = 0.0, start
        while cursor < end:
            step = min(cursor + minute, end)
            dt = datetime.fromtimestamp(cursor / 1000, tz=timezone.utc)
            month_days = calendar.monthrange(dt.year, dt.month)[1]
            total += weight * ppm * residents * (step - cursor) / (month_days * 86_400_000)
            cursor = step
        return total

    rng = random.Random(99)
    for _ in range(50):
        year, month = 2025, rng.randint(1, 12)
        start = ts(year, month, rng.randint(1, 25), rng.randint(0, 23))
        span_minutes = rng.randint(1, 5000)
        end = start + span_minutes * minute
        if month_key(end, "UTC") != month_key(start, "UTC"):
            end = month_end(month_key(start, "UTC"), "UTC")
        weight = rng.uniform(0.05, 1.0)
        residents = rng.randint(1, 12)
        closed = accrued_between(start, end, weight, residents, 100.0, "UTC")
        stepped = integrator(start, end, weight, residents, 100.0)
        if abs(closed - stepped) >= 1e-6:
            failures.append((start, end, abs(closed - stepped)))

    # linearity: equal spans accrue equal value anywhere within one month
    base = ts(2025, 4, 3)
    rate_span = accrued_between(base, add_hours(base, 7), 0.3, 9, 100.0, "UTC")
    later = accrued_between(add_hours(base, 100), add_hours(base, 107), 0.3, 9, 100.0, "UTC")
    linear_ok = abs(rate_span - later) < 1e-12

    # reset: value is exactly zero immediately after a verified claim
    engine = make_engine()
    make_house(engine)
    t1 = add_hours(T0, 30)
    engine.claim_chore("h1", "chore-1", "r0", at=t1)
    reset_ok = engine.current_value("h1", "chore-1", t1) == 0.0

    ok = not failures and linear_ok and reset_ok
    assert verdict(
        "accrual linearity and reset", ok,
        f"integrator max gap "
        f"{max((f[2] for f in failures), default=0.0):.2e}, linearity "
        f"{'ok' if linear_ok else 'broken'}, reset {'ok' if reset_ok else 'broken'}",
    )


def test_prioritization_correctness():
    """Power iteration vs dense linear solve, 1e-7; worked two-chore example."""
    started = time.monotonic()
    rng = random.Random(4242)
    worst = 0.0
    for _ in range(1000):
        n = rng.randint(1, 10)
        labels = [f"c{i}" for i in range(n)]
        matrix = {a: {b: rng.randint(0, 6) for b in labels if b != a} for a in labels}
        damping = rng.uniform(0.3, 0.97)
        floor = rng.choice([0.0, 0.25 / n])
        result = compute_priorities(matrix, damping, floor)
        counts = np.zeros((n, n))
        for i, a in enumerate(labels):
            for j, b in enumerate(labels):
                if a != b:
                    counts[i, j] = matrix[a][b]
        chain = np.zeros((n, n))
        for j in range(n):
            col = counts[:, j].sum()
            chain[:, j] = counts[:, j] / col if col > 0 else 1.0 / n
        pi = np.linalg.solve(np.eye(n) - damping * chain, np.full(n, (1 - damping) / n))
        blended = (1 - n * floor) * pi + floor
        blended /= blended.sum()
        for label, direct in zip(labels, blended):
            worst = max(worst, abs(result[label] - direct))
    elapsed = time.monotonic() - started

    example = compute_priorities({"A": {"B": 1}, "B": {"A": 0}}, 0.85, 0.0)
    example_ok = (abs(example["A"] - 0.649) <= 1e-3 and abs(example["B"] - 0.351) <= 1e-3)

    ok = worst < 1e-7 and example_ok and elapsed < 30.0
    assert verdict(
        "prioritization correctness", ok,
        f"1000 cases, max |power - solve| {worst:.2e}, worked example "
        f"({example['A']:.3f}, {example['B']:.3f}), {elapsed:.1f}s",
    )


def test_consensus_oracle_equivalence():
    """Resolution matches brute-force rule evaluation, exhaustively to 12 voters."""
    mismatches = 0
    checked = 0
    for total in range(0, 13):
        for ups in range(0, total + 1):
            downs = total - ups
            for min_up in range(1, 13):
                for majority in (False, True):
                    ballots = {f"u{i}": "up" for i in range(ups)}
                    ballots.update({f"d{i}": "down" for i in range(downs)})
                    outcome = consensus.resolve(ballots, min_up, majority)
                    expected = ups >= min_up and (not majority or ups > downs)
                    checked += 1
                    if outcome.passed != expected:
                        mismatches += 1
    assert verdict(
        "consensus oracle equivalence",
        mismatches == 0,
        f"{checked} tallies checked exhaustively, {mismatches} mismatches",
    )


def test_hearts_dynamics(random_runs):
    """Bounds over 100 seeds; baseline attractor; challenge symmetry."""
    runs, _ = random_runs
    bounds_ok = True
    for result in runs:
        hs = result.engine.houses[result.scenario.house]
        policy = hs.config.hearts
        for history in hs.heart_log.values():
            for entry in history:
                if not 0.0 <= entry.balance_after <= policy.max_hearts:
                    bounds_ok = False

    # baseline attractor: every starting point converges exactly in finite ticks
    from commons_engine.config import HeartsPolicy
    from commons_engine.hearts import tick_delta
    policy = HeartsPolicy()
    attractor_ok = True
    for start in [0.0, 0.1, 2.5, 4.99, 5.0, 5.01, 6.3, 7.0]:
        balance = start
        for _ in range(60):
            delta = tick_delta(balance, policy)
            if delta == 0.0:
                break
            balance += delta
        if balance != policy.baseline:
            attractor_ok = False

    # challenge symmetry: destroyed equals stake whether it passes or fails
    symmetry_ok = True
    for passes in (True, False):
        engine = make_engine()
        make_house(engine)
        stake = 1.25
        challenge = engine.open_challenge("h1", "r0", "r1", at=T0 + 10,
                                          stated_hearts=stake)
        hs = engine.houses["h1"]
        proposal = hs.proposals[challenge.proposal_id]
        if passes:
            for voter in ["r2", "r3", "r4", "r5", "r6"]:
                engine.cast_ballot("h1", proposal.id, voter, "up", at=T0 + 11)
        before = sum(hs.hearts.values())
        engine.resolve_due("h1", proposal.due_at)
        destroyed = before - sum(hs.hearts.values())
        if abs(destroyed - stake) > 1e-12:
            symmetry_ok = False
        if hs.challenges[challenge.id].resolution != ("passed" if passes else "failed"):
            symmetry_ok = False

    ok = bounds_ok and attractor_ok and symmetry_ok
    assert verdict(
        "hearts dynamics", ok,
        f"bounds {'ok' if bounds_ok else 'violated'} over {len(runs)} seeds, "
        f"attractor {'ok' if attractor_ok else 'broken'}, "
        f"challenge symmetry {'ok' if symmetry_ok else 'broken'}",
    )


def test_things_ledger(random_runs):
    """Integer sum-check per account; threshold monotone; one settlement per race."""
    runs, _ = random_runs
    sum_ok = True
    for result in runs:
        hs = result.engine.houses[result.scenario.house]
        for account in hs.accounts.values():
            ledger_total = sum(
                e["delta_cents"] for e in hs.ledger if e["account"] == account.id)
            if account.balance_cents != ledger_total or account.balance_cents < 0:
                sum_ok = False
            if not isinstance(account.balance_cents, int):
                sum_ok = False

    from commons_engine.things import purchase_min_upvotes
    previous, monotone_ok = 0, True
    for price in range(1, 200_001, 997):
        votes = purchase_min_upvotes(price, 5000)
        if votes < previous:
            monotone_ok = False
        previous = votes

    engine = make_engine()
    config = HouseConfig()
    from commons_engine.config import AccountDef
    config = HouseConfig(accounts=(AccountDef("General", 0, initial_balance_cents=10000),))
    make_house(engine, config=config)
    first = engine.propose_purchase("h1", "r0", "rice", 8000, "acct-1", at=T0 + 1)
    second = engine.propose_purchase("h1", "r1", "beans", 8000, "acct-1", at=T0 + 2)
    hs = engine.houses["h1"]
    for purchase in (first, second):
        for voter in ("r2", "r3"):
            engine.cast_ballot("h1", hs.proposals[purchase.proposal_id].id, voter,
                               "up", at=T0 + 3)
    engine.resolve_due("h1", add_hours(T0, 25))
    statuses = sorted([hs.purchases[first.id].status, hs.purchases[second.id].status])
    race_ok = statuses == ["failed-insufficient", "purchased"] and \
        hs.accounts["acct-1"].balance_cents == 2000

    ok = sum_ok and monotone_ok and race_ok
    assert verdict(
        "things ledger", ok,
        f"sum-check {'ok' if sum_ok else 'broken'} over {len(runs)} seeds, "
        f"threshold monotonicity {'ok' if monotone_ok else 'broken'}, "
        f"overdraft race {'ok' if race_ok else 'broken'}",
    )


def test_replay_determinism(tmp_path):
    """50 randomized runs: restart from the durable log is field-identical."""
    failures = 0
    for seed in range(N_REPLAY_RUNS):
        result = run_scenario(load_scenario(random_scenario(1000 + seed)))
        live = result.engine.snapshot()
        path = tmp_path / f"run-{seed}.ndjson"
        store = FileStore(path)
        for event in result.events:
            store.append(event)
        store.close()
        restarted = Engine(store=FileStore(path))
        if restarted.snapshot() != live:
            failures += 1
        restarted.store.close()
    assert verdict(
        "replay determinism",
        failures == 0,
        f"{N_REPLAY_RUNS} randomized runs restarted from disk, {failures} mismatches",
    )


class TestReferencePatterns:
    """Qualitative pattern reproduction on the documented reference scenario."""

    def test_reference_runtime(self, reference_run):
        result, elapsed = reference_run
        assert verdict(
            "reference scenario runtime",
            elapsed < 300.0,
            f"12 months, {len(result.events)} events in {elapsed:.1f}s (budget 300s)",
        )

    def test_kitchen_group_share(self, reference_run):
        result, _ = reference_run
        shares = compute_chore_shares(result.events, groups={"kitchen": KITCHEN})
        kitchen = shares.meta["group_shares"]["kitchen"]
        assert verdict(
            "kitchen group point share in [0.28, 0.40]",
            0.28 <= kitchen <= 0.40,
            f"kitchen share {kitchen:.3f}",
        )

    def test_high_frequency_low_mean_plurality(self, reference_run):
        result, _ = reference_run
        shares = compute_chore_shares(result.events)
        top = shares.rows[0]
        means = sorted(r["mean_points"] for r in shares.rows)
        median_mean = (means[len(means) // 2 - 1] + means[len(means) // 2]) / 2
        most_claims = max(r["claim_count"] for r in shares.rows)
        ok = (
            top["chore"] == "Wash Dishes"
            and top["claim_count"] == most_claims
            and top["mean_points"] < median_mean
        )
        assert verdict(
            "plurality chore is high-frequency / low-mean", ok,
            f"{top['chore']}: share {top['share']:.3f}, {top['claim_count']} claims, "
            f"mean {top['mean_points']:.2f} vs median {median_mean:.2f}",
        )

    def test_agent_specialization(self, reference_run):
        result, _ = reference_run
        spec = compute_specialization(result.events)
        ok = True
        details = []
        for resident in ("r1", "r2"):
            totals: dict[str, float] = {}
            for row in spec.rows:
                if row["resident"] == resident:
                    totals[row["chore"]] = totals.get(row["chore"], 0.0) + row["points"]
            top_chore, top_points = max(totals.items(), key=lambda kv: kv[1])
            share = top_points / sum(totals.values())
            details.append(f"{resident}:{top_chore}={share:.2f}")
            if share <= 0.5:
                ok = False
        assert verdict(
            "specialized agents top-chore share > 0.5", ok, ", ".join(details))

    def test_hearts_patterns(self, reference_run):
        result, _ = reference_run
        hearts = compute_hearts_trajectories(result.events)
        baseline = hearts.meta["baseline"]
        by_resident: dict[str, list] = {}
        for row in hearts.rows:
            by_resident.setdefault(row["resident"], []).append(row)

        # sawtooth: somebody repeatedly earns karma hearts and fades back
        sawtooth = False
        for rows in by_resident.values():
            awards = sum(1 for r in rows if r["cause"] == "karmaAward" and r["delta"] > 0)
            fades = sum(1 for r in rows if r["cause"] == "fade")
            peak = max(r["hearts"] for r in rows)
            if awards >= 3 and fades >= 3 and peak > baseline:
                sawtooth = True

        # shirk, dip, monotone recovery to baseline
        r8 = by_resident["r8"]
        deep_dips = [r for r in r8 if r["cause"] == "choreShortfall" and r["delta"] <= -1.0]
        dip_ok = bool(deep_dips)
        recovery_ok = False
        if dip_ok:
            last_shortfall_i = max(
                i for i, r in enumerate(r8) if r["cause"] == "choreShortfall")
            tail = r8[last_shortfall_i:]
            recovered_at = next(
                (i for i, r in enumerate(tail) if r["hearts"] >= baseline), None)
            if recovered_at is not None:
                recovery_ok = all(r["delta"] >= 0 for r in tail[1:recovered_at + 1])

        ok = sawtooth and dip_ok and recovery_ok
        assert verdict(
            "karma sawtooth and shirk-dip-recovery", ok,
            f"sawtooth {'ok' if sawtooth else 'missing'}, "
            f"dip {'ok' if dip_ok else 'missing'}, "
            f"recovery {'ok' if recovery_ok else 'broken'}",
        )

    def test_purchasing_patterns(self, reference_run):
        result, _ = reference_run
        stats = compute_purchase_stats(result.events)
        tz = result.scenario.config.timezone

        general = [r for r in stats.balances.rows if r["account"] == "General"]
        months: dict[str, int] = {}
        for row in general:
            key = month_key(row["at"], tz)
            months[key] = min(months.get(key, 10**9), row["balance_cents"])
        refill = 25000
        depleted = sum(1 for low in months.values() if low < 0.2 * refill)
        depletion_ok = depleted >= 8

        major = [r for r in stats.balances.rows if r["account"] == "Major Purchases"]
        major_max = max(r["balance_cents"] for r in major)
        spends = sum(1 for a, b in zip(major, major[1:])
                     if b["balance_cents"] < a["balance_cents"])
        savings_ok = major_max >= 2 * 12000 and spends >= 1

        top_share_ok = stats.top_share is not None and 0.2 <= stats.top_share <= 0.6

        ok = depletion_ok and savings_ok and top_share_ok
        assert verdict(
            "account savings/depletion and purchase concentration", ok,
            f"general depleted in {depleted} months, major peak "
            f"${major_max / 100:.0f} with {spends} spends, top-share "
            f"{stats.top_share:.2f} of residents cover {stats.coverage:.0%} "
            f"of purchases (field observation: 42% cover 80%)",
        )
