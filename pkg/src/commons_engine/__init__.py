"""commons-engine: a self-hostable governance engine for coliving houses.

Three mechanisms — a continuous-auction chore scheduler with pairwise
prioritization, a hearts norm-compliance ledger, and adaptive-threshold
group purchasing — run as deterministic, event-sourced state machines
behind an HTTP API, with a simulation harness and analytics alongside.
"""

from .config import AccountDef, HeartsPolicy, HouseConfig
from .engine import Engine, Resolution, SimClock, SystemClock, replay
from .events import Event
from .store import FileStore, MemoryStore, read_log

__all__ = [
    "AccountDef",
    "HeartsPolicy",
    "HouseConfig",
    "Engine",
    "Resolution",
    "SimClock",
    "SystemClock",
    "replay",
    "Event",
    "FileStore",
    "MemoryStore",
    "read_log",
]

__version__ = "0.1.0"
