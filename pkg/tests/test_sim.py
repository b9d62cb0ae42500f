"""Simulation harness: determinism, invariants across seeds, planted claims."""

import math

import pytest

from commons_engine.errors import InvalidScenario
from commons_engine.sim import load_scenario, run_scenario
from commons_engine.sim.reference import (
    honesty_probe_scenario, random_scenario, reference_scenario,
)


def log_bytes(result):
    return "\n".join(e.to_json() for e in result.events).encode()


class TestDeterminism:
    def test_same_seed_byte_identical_logs(self):
        scenario = load_scenario(random_scenario(7))
        first = run_scenario(scenario)
        second = run_scenario(scenario)
        assert log_bytes(first) == log_bytes(second)

    def test_different_seeds_differ(self):
        first = run_scenario(load_scenario(random_scenario(7)))
        second = run_scenario(load_scenario(random_scenario(8)))
        assert log_bytes(first) != log_bytes(second)


class TestScenarioValidation:
    def test_missing_seed(self):
        bad = random_scenario(1)
        del bad["seed"]
        with pytest.raises(InvalidScenario):
            load_scenario(bad)

    def test_unknown_chore_in_specialization(self):
        bad = random_scenario(1)
        bad["agents"][0]["policy"]["specialization"] = {"Polish Silverware": 2.0}
        with pytest.raises(InvalidScenario):
            load_scenario(bad)

    def test_negative_rate_rejected(self):
        bad = random_scenario(1)
        bad["agents"][0]["policy"]["karma_generosity"] = -1.0
        with pytest.raises(InvalidScenario):
            load_scenario(bad)

    def test_diligence_out_of_range(self):
        bad = random_scenario(1)
        bad["agents"][0]["policy"]["diligence"] = 1.5
        with pytest.raises(InvalidScenario):
            load_scenario(bad)


class TestEngineInvariantsAcrossSeeds:
    def test_smoke_run_produces_activity(self):
        result = run_scenario(load_scenario(random_scenario(3)))
        assert result.stats["claims"] > 0
        assert len(result.events) > 50

    def test_conservation_and_bounds_hold_over_seeds(self):
        for seed in range(25):
            result = run_scenario(load_scenario(random_scenario(seed)))
            house = result.scenario.house
            report = result.engine.conservation_report(house)
            assert abs(report["residual"]) < 1e-6, f"seed {seed}: {report}"
            hs = result.engine.houses[house]
            policy = hs.config.hearts
            for resident, balance in hs.hearts.items():
                assert 0.0 <= balance <= policy.max_hearts, (seed, resident)
            for account in hs.accounts.values():
                assert account.balance_cents >= 0, (seed, account.id)
                ledger_total = sum(
                    e["delta_cents"] for e in hs.ledger if e["account"] == account.id
                )
                assert account.balance_cents == ledger_total, (seed, account.id)

    def test_degenerate_all_shirkers(self):
        scenario_dict = random_scenario(11)
        for agent in scenario_dict["agents"]:
            agent["policy"]["diligence"] = 0.0
            agent["policy"]["absenteeism"] = 0.0
        scenario_dict["months"] = 3
        result = run_scenario(load_scenario(scenario_dict))
        hs = result.engine.houses[result.scenario.house]
        # nobody claims: every month ends in a full shortfall for everyone
        assert result.stats["claims"] == 0
        for balance in hs.hearts.values():
            assert balance < 5.0
        # abandoned chores hit the accrual cap; conservation still balances
        # because discarded emission is written off, not lost
        assert hs.writeoff_capped > 0
        report = result.engine.conservation_report(result.scenario.house)
        assert abs(report["residual"]) < 1e-6


class TestPlantedClaims:
    def test_rejection_rate_tracks_vote_honesty(self):
        """Binomial check: planted claims are rejected at 1-(1-h)^(voters)."""
        honesty = 0.3
        outcomes = []
        for seed in range(12):
            scenario = load_scenario(honesty_probe_scenario(seed, vote_honesty=honesty))
            result = run_scenario(scenario)
            outcomes.extend(p["rejected"] for p in result.planted)
        n = len(outcomes)
        assert n >= 40
        p_expected = 1.0 - (1.0 - honesty) ** 3  # three other voters
        p_observed = sum(outcomes) / n
        margin = 1.96 * math.sqrt(p_expected * (1 - p_expected) / n)
        assert abs(p_observed - p_expected) <= margin + 0.05, (
            f"observed {p_observed:.3f} expected {p_expected:.3f} n={n}"
        )

    def test_rejected_plant_restores_chore_value(self):
        scenario = load_scenario(honesty_probe_scenario(0, vote_honesty=1.0, plants=2))
        result = run_scenario(scenario)
        assert result.planted, "plants never fired"
        assert all(p["rejected"] for p in result.planted)
        report = result.engine.conservation_report(result.scenario.house)
        assert abs(report["residual"]) < 1e-6


class TestPublicApiOnly:
    def test_runner_emits_only_command_events(self):
        """The harness drives the engine solely through commands: every state
        change in the log is a documented event kind."""
        from commons_engine.events import ALL_KINDS
        result = run_scenario(load_scenario(random_scenario(5)))
        assert {e.kind for e in result.events} <= ALL_KINDS
