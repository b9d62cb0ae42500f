"""Pairwise preference aggregation into a priority distribution.

Residents submit single judgments of the form "prioritize A over B". Those
judgments form a preference matrix; the priority distribution is the
stationary distribution of a damped random walk over it (a random-surfer
chain), blended with a small uniform floor so every chore keeps accruing.

The walk: from chore b, move to a chore preferred over b with probability
proportional to how many residents prefer it; from a chore nobody has
ranked anything above, move uniformly. Damping d teleports to the uniform
distribution with probability 1 - d, guaranteeing a unique fixed point

    pi = (1 - d)/n + d * P @ pi

solved by power iteration.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from .errors import NoChores

L1_TOLERANCE = 1e-9
MAX_ITERATIONS = 10_000


def build_matrix(
    chores: Iterable[str],
    preferences: Iterable[tuple[str, str]],
) -> dict[str, dict[str, int]]:
    """Count matrix M[a][b] = number of residents preferring a over b.

    ``preferences`` holds one effective (preferred, deprioritized) pair per
    resident per unordered chore pair; pairs touching unknown chores are
    ignored (they reference retired chores).
    """
    labels = sorted(set(chores))
    known = set(labels)
    matrix: dict[str, dict[str, int]] = {a: {b: 0 for b in labels} for a in labels}
    for preferred, deprioritized in preferences:
        if preferred in known and deprioritized in known and preferred != deprioritized:
            matrix[preferred][deprioritized] += 1
    return matrix


def compute_priorities(
    matrix: Mapping[str, Mapping[str, float]],
    damping: float = 0.85,
    floor: float = 0.0,
) -> dict[str, float]:
    """Solve the damped fixed point and blend in the uniform floor.

    ``floor`` is the minimum weight per chore; the blend reserves n*floor of
    probability mass for the uniform component: out = (1 - n*floor)*pi + floor.

    Raises NoChores on an empty matrix.
    """
    labels = sorted(matrix)
    n = len(labels)
    if n == 0:
        raise NoChores("cannot prioritize an empty chore list")
    if not 0.0 < damping < 1.0:
        raise ValueError(f"damping must be in (0, 1), got {damping}")
    if floor < 0.0 or n * floor >= 1.0 + 1e-12:
        raise ValueError(f"floor {floor} infeasible for {n} chores")

    counts = np.zeros((n, n), dtype=float)
    index = {label: i for i, label in enumerate(labels)}
    for a, row in matrix.items():
        for b, count in row.items():
            if a != b and count:
                counts[index[a], index[b]] = float(count)

    column_sums = counts.sum(axis=0)
    chain = np.where(column_sums > 0.0, counts / np.where(column_sums > 0.0, column_sums, 1.0), 1.0 / n)

    pi = np.full(n, 1.0 / n)
    teleport = (1.0 - damping) / n
    for _ in range(MAX_ITERATIONS):
        updated = teleport + damping * (chain @ pi)
        if np.abs(updated - pi).sum() < L1_TOLERANCE:
            pi = updated
            break
        pi = updated

    blended = (1.0 - n * floor) * pi + floor
    blended = blended / blended.sum()
    return {label: float(w) for label, w in zip(labels, blended)}
