from .scenario import AgentSpec, Scenario, load_scenario
from .runner import run_scenario, RunResult
from .analytics import (
    Dataset,
    PurchaseStats,
    compute_chore_shares,
    compute_specialization,
    compute_hearts_trajectories,
    compute_purchase_stats,
)

__all__ = [
    "AgentSpec",
    "Scenario",
    "load_scenario",
    "run_scenario",
    "RunResult",
    "Dataset",
    "PurchaseStats",
    "compute_chore_shares",
    "compute_specialization",
    "compute_hearts_trajectories",
    "compute_purchase_stats",
]
