"""Priority distribution: dense-solve oracle, simplex invariants, symmetry."""

import random

import numpy as np
import pytest

from commons_engine.errors import NoChores, SameChore, UnknownChore
from commons_engine.prioritize import build_matrix, compute_priorities
from conftest import T0, make_house


def dense_solve(matrix, damping, floor):
    """Oracle: solve the fixed point pi = (1-d)/n + d P pi with a linear solver."""
    labels = sorted(matrix)
    n = len(labels)
    counts = np.zeros((n, n))
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            if a != b:
                counts[i, j] = matrix[a].get(b, 0)
    chain = np.zeros((n, n))
    for j in range(n):
        col = counts[:, j].sum()
        chain[:, j] = counts[:, j] / col if col > 0 else 1.0 / n
    pi = np.linalg.solve(np.eye(n) - damping * chain, np.full(n, (1 - damping) / n))
    out = (1 - n * floor) * pi + floor
    out = out / out.sum()
    return dict(zip(labels, out))


def test_two_chore_worked_example():
    # one resident prefers A over B, d = 0.85, no floor
    matrix = {"A": {"B": 1}, "B": {"A": 0}}
    oracle = dense_solve(matrix, 0.85, 0.0)
    assert oracle["A"] == pytest.approx(0.649, abs=1e-3)
    assert oracle["B"] == pytest.approx(0.351, abs=1e-3)
    result = compute_priorities(matrix, damping=0.85, floor=0.0)
    assert result["A"] == pytest.approx(0.649, abs=1e-3)
    assert result["B"] == pytest.approx(0.351, abs=1e-3)


def test_power_iteration_matches_dense_solve_on_random_matrices():
    rng = random.Random(1234)
    for case in range(1000):
        n = rng.randint(1, 10)
        labels = [f"c{i}" for i in range(n)]
        matrix = {
            a: {b: rng.randint(0, 5) for b in labels if b != a} for a in labels
        }
        damping = rng.choice([0.5, 0.85, 0.95])
        floor = rng.choice([0.0, 0.05 / n, 0.25 / n])
        result = compute_priorities(matrix, damping, floor)
        oracle = dense_solve(matrix, damping, floor)
        for label in labels:
            assert result[label] == pytest.approx(oracle[label], abs=1e-7), (case, label)


def test_no_preferences_gives_uniform():
    matrix = {c: {} for c in "ABCD"}
    result = compute_priorities(matrix, 0.85, 0.0)
    for w in result.values():
        assert w == pytest.approx(0.25, abs=1e-9)


def test_symmetric_disagreement_stays_uniform():
    matrix = {"A": {"B": 1}, "B": {"A": 1}}
    result = compute_priorities(matrix, 0.85, 0.0)
    assert result["A"] == pytest.approx(0.5, abs=1e-9)
    assert result["B"] == pytest.approx(0.5, abs=1e-9)


def test_output_on_simplex_with_floor():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 8)
        labels = [f"c{i}" for i in range(n)]
        matrix = {a: {b: rng.randint(0, 3) for b in labels if b != a} for a in labels}
        floor = 0.25 / n
        result = compute_priorities(matrix, 0.85, floor)
        assert sum(result.values()) == pytest.approx(1.0, abs=1e-9)
        for w in result.values():
            assert w >= floor - 1e-12
            assert w > 0.0


def test_chore_label_invariance():
    rng = random.Random(99)
    labels = ["w", "x", "y", "z"]
    matrix = {a: {b: rng.randint(0, 4) for b in labels if b != a} for a in labels}
    base = compute_priorities(matrix, 0.85, 0.05)
    mapping = {"w": "b2", "x": "a9", "y": "zz", "z": "m0"}
    permuted = {
        mapping[a]: {mapping[b]: v for b, v in row.items()} for a, row in matrix.items()
    }
    renamed = compute_priorities(permuted, 0.85, 0.05)
    for old, new in mapping.items():
        assert renamed[new] == pytest.approx(base[old], abs=1e-12)


def test_argmax_responsiveness_small_cases():
    # adding one more "A over B" judgment never decreases A's weight relative to B's
    labels = ["A", "B", "C", "D"]
    pairs = [(a, b) for a in labels for b in labels if a != b]
    rng = random.Random(5)
    for _ in range(300):
        n_inputs = rng.randint(0, 6)  # up to 3 residents x 2 judgments
        votes = [rng.choice(pairs) for _ in range(n_inputs)]
        matrix = build_matrix(labels, votes)
        before = compute_priorities(matrix, 0.85, 0.0)
        matrix_after = build_matrix(labels, votes + [("A", "B")])
        after = compute_priorities(matrix_after, 0.85, 0.0)
        assert after["A"] / after["B"] >= before["A"] / before["B"] - 1e-9


def test_voter_anonymity_matrix_only_counts():
    # the matrix carries counts, not identities: permuting residents is invisible
    votes_one = [("A", "B"), ("B", "C"), ("A", "C")]
    votes_two = [("A", "C"), ("A", "B"), ("B", "C")]
    assert build_matrix("ABC", votes_one) == build_matrix("ABC", votes_two)


def test_empty_matrix_raises():
    with pytest.raises(NoChores):
        compute_priorities({}, 0.85, 0.0)


def test_single_chore_gets_full_weight():
    assert compute_priorities({"only": {}}, 0.85, 0.25) == {"only": 1.0}


class TestEngineIntegration:
    def test_newest_input_wins_per_pair(self, engine):
        make_house(engine)
        engine.submit_preference("h1", "r1", "chore-1", "chore-4", at=T0 + 1)
        first = engine.effective_weights("h1")
        engine.submit_preference("h1", "r1", "chore-4", "chore-1", at=T0 + 2)
        engine.submit_preference("h1", "r1", "chore-1", "chore-4", at=T0 + 3)
        engine.submit_preference("h1", "r1", "chore-4", "chore-1", at=T0 + 4)
        flipped = engine.effective_weights("h1")
        assert flipped["chore-4"] == pytest.approx(first["chore-1"], abs=1e-12)
        assert flipped["chore-1"] == pytest.approx(first["chore-4"], abs=1e-12)

    def test_same_chore_rejected(self, engine):
        make_house(engine)
        with pytest.raises(SameChore):
            engine.submit_preference("h1", "r1", "chore-1", "chore-1", at=T0 + 1)

    def test_retired_chore_rejected(self, engine):
        make_house(engine)
        with pytest.raises(UnknownChore):
            engine.submit_preference("h1", "r1", "chore-1", "chore-9", at=T0 + 1)

    def test_departed_resident_inputs_excluded(self, engine):
        make_house(engine)
        engine.submit_preference("h1", "r1", "chore-1", "chore-2", at=T0 + 1)
        engine.submit_preference("h1", "r2", "chore-1", "chore-3", at=T0 + 2)
        engine.remove_resident("h1", "r1", at=T0 + 3)
        weights = engine.effective_weights("h1")
        # oracle: recompute from scratch with only r2's input
        matrix = build_matrix(
            ["chore-1", "chore-2", "chore-3", "chore-4"], [("chore-1", "chore-3")]
        )
        oracle = compute_priorities(matrix, 0.85, 0.25 / 4)
        for chore, weight in oracle.items():
            assert weights[chore] == pytest.approx(weight, abs=1e-12)

    def test_amendment_adds_chore_at_floor_and_resums_to_one(self, engine):
        make_house(engine)
        engine.submit_preference("h1", "r1", "chore-1", "chore-2", at=T0 + 1)
        proposal = engine.propose_chore_amendment(
            "h1", "add", "r0", at=T0 + 2, name="Clean Bathroom")
        for voter in ["r1", "r2", "r3", "r4"]:
            engine.cast_ballot("h1", proposal.id, voter, "up", at=T0 + 3)
        engine.resolve_due("h1", proposal.due_at)
        weights = engine.effective_weights("h1")
        assert len(weights) == 5
        assert sum(weights.values()) == pytest.approx(1.0, abs=1e-9)
        assert weights["chore-5"] >= 0.25 / 5 - 1e-12
