"""Event stores: durable NDJSON file or in-memory list.

Writes are flushed before the append returns, so an acknowledged command is
always recoverable. On load, a torn final line (a crash mid-write of an
unacknowledged event) is dropped; any earlier damage raises CorruptLog.
"""

from __future__ import annotations

import os
import threading
from pathlib import Path

from .errors import CorruptLog, StoreUnavailable
from .events import Event, check_log_shape


class MemoryStore:
    """Keeps events in a list; for tests and simulations."""

    def __init__(self, events: list[Event] | None = None):
        self._events: list[Event] = list(events or [])
        self._lock = threading.Lock()

    def append(self, event: Event) -> None:
        with self._lock:
            self._events.append(event)

    def load(self) -> list[Event]:
        with self._lock:
            return list(self._events)

    def close(self) -> None:
        pass


class FileStore:
    """Append-only newline-delimited JSON file."""

    def __init__(self, path: str | os.PathLike, fsync: bool = False):
        self.path = Path(path)
        self.fsync = fsync
        self._lock = threading.Lock()
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self._fh = open(self.path, "a", encoding="utf-8")
        except OSError as exc:
            raise StoreUnavailable(f"cannot open event store {self.path}: {exc}") from exc

    def append(self, event: Event) -> None:
        with self._lock:
            self._fh.write(event.to_json() + "\n")
            self._fh.flush()
            if self.fsync:
                os.fsync(self._fh.fileno())

    def load(self) -> list[Event]:
        with self._lock:
            self._fh.flush()
            try:
                raw = self.path.read_text(encoding="utf-8")
            except OSError as exc:
                raise StoreUnavailable(f"cannot read event store {self.path}: {exc}") from exc
        lines = raw.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        events: list[Event] = []
        for i, line in enumerate(lines):
            try:
                events.append(Event.from_json(line))
            except CorruptLog:
                if i == len(lines) - 1 and not raw.endswith("\n"):
                    break  # torn tail from a crash mid-write; never acknowledged
                raise
        check_log_shape(events)
        return events

    def close(self) -> None:
        with self._lock:
            self._fh.close()


def read_log(path: str | os.PathLike) -> list[Event]:
    """Load and shape-check an event log file without opening it for writes."""
    store = FileStore(path)
    try:
        return store.load()
    finally:
        store.close()
