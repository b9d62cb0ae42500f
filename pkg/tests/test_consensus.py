"""Lazy-consensus rule: exhaustive oracle equivalence and ballot semantics."""

import pytest
from hypothesis import given, strategies as st

from commons_engine import consensus
from commons_engine.errors import InvalidWindow, ProposalClosed, UnknownKind, UnknownVoter
from commons_engine.timeutil import add_hours

from conftest import T0, make_engine, make_house


def brute_force_passed(upvotes, downvotes, min_upvotes, require_majority):
    """Independent re-statement of the rule by literal enumeration of ballots."""
    ballots = ["up"] * upvotes + ["down"] * downvotes
    ups = sum(1 for b in ballots if b == "up")
    downs = sum(1 for b in ballots if b == "down")
    if ups < min_upvotes:
        return False
    if require_majority and ups <= downs:
        return False
    return True


def test_rule_matches_brute_force_exhaustively_up_to_12_voters():
    for total in range(0, 13):
        for ups in range(0, total + 1):
            downs = total - ups
            for min_up in range(1, 13):
                for majority in (False, True):
                    expected = brute_force_passed(ups, downs, min_up, majority)
                    assert consensus.evaluate(ups, downs, min_up, majority) == expected, (
                        ups, downs, min_up, majority,
                    )


def test_resolution_from_effective_ballots():
    ballots = {"r1": "up", "r2": "up", "r3": "up", "r4": "down"}
    outcome = consensus.resolve(ballots, min_upvotes=2, require_majority=True)
    assert outcome.passed and outcome.upvotes == 3 and outcome.downvotes == 1


def test_tie_is_not_a_majority():
    ballots = {f"u{i}": "up" for i in range(4)} | {f"d{i}": "down" for i in range(4)}
    outcome = consensus.resolve(ballots, min_upvotes=4, require_majority=True)
    assert not outcome.passed


def test_zero_votes_fails_min_one():
    assert not consensus.evaluate(0, 0, 1, False)


@given(
    ups=st.integers(0, 20), downs=st.integers(0, 20),
    min_up=st.integers(1, 20), majority=st.booleans(),
)
def test_upvote_monotonicity(ups, downs, min_up, majority):
    if consensus.evaluate(ups, downs, min_up, majority):
        assert consensus.evaluate(ups + 1, downs, min_up, majority)
    if not consensus.evaluate(ups, downs, min_up, majority):
        assert not consensus.evaluate(ups, downs + 1, min_up, majority)


class TestProposalLifecycle:
    def test_ballot_overwrite_counts_latest(self):
        engine = make_engine()
        make_house(engine)
        p = engine.open_proposal("h1", "choreAmendment", {"action": "edit"},
                                 "r0", 1, True, 1000, at=T0)
        engine.cast_ballot("h1", p.id, "r1", "up", at=T0)
        engine.cast_ballot("h1", p.id, "r1", "down", at=T0 + 1)
        [res] = engine.resolve_due("h1", T0 + 1000)
        assert res.upvotes == 0 and res.downvotes == 1 and res.outcome == "failed"

    def test_vote_after_window_rejected(self):
        engine = make_engine()
        make_house(engine)
        p = engine.open_proposal("h1", "choreAmendment", {"action": "edit"},
                                 "r0", 1, True, 1000, at=T0)
        with pytest.raises(ProposalClosed):
            engine.cast_ballot("h1", p.id, "r1", "up", at=T0 + 1000)

    def test_vote_by_inactive_resident_rejected(self):
        engine = make_engine()
        make_house(engine)
        p = engine.open_proposal("h1", "choreAmendment", {"action": "edit"},
                                 "r0", 1, True, 10_000, at=T0)
        with pytest.raises(UnknownVoter):
            engine.cast_ballot("h1", p.id, "stranger", "up", at=T0 + 1)

    def test_zero_window_invalid(self):
        engine = make_engine()
        make_house(engine)
        with pytest.raises(InvalidWindow):
            engine.open_proposal("h1", "choreAmendment", {}, "r0", 1, True, 0, at=T0)

    def test_unknown_kind_rejected(self):
        engine = make_engine()
        make_house(engine)
        with pytest.raises(UnknownKind):
            engine.open_proposal("h1", "recall", {}, "r0", 1, True, 1000, at=T0)

    def test_resolution_happens_exactly_once(self):
        engine = make_engine()
        make_house(engine)
        p = engine.open_proposal("h1", "choreAmendment", {"action": "edit"},
                                 "r0", 1, True, 1000, at=T0)
        engine.cast_ballot("h1", p.id, "r1", "up", at=T0)
        first = engine.resolve_due("h1", T0 + 2000)
        second = engine.resolve_due("h1", T0 + 3000)
        assert len(first) == 1 and second == []

    def test_lazy_claim_passes_on_single_implicit_upvote(self, engine):
        make_house(engine)
        t1 = add_hours(T0, 24)
        claim = engine.claim_chore("h1", "chore-1", "r0", at=t1)
        proposal = engine.houses["h1"].proposals[claim.proposal_id]
        assert proposal.min_upvotes == 1  # 24h of accrual stays under the small-claim bar
        [res] = engine.resolve_due("h1", proposal.due_at)
        assert res.outcome == "passed" and res.upvotes == 1 and res.downvotes == 0

    def test_proposals_with_zero_votes_fail(self, engine):
        make_house(engine)
        p = engine.open_proposal("h1", "choreAmendment", {"action": "edit"},
                                 "r0", 1, True, 1000, at=T0)
        [res] = engine.resolve_due("h1", T0 + 1000)
        assert res.outcome == "failed"
