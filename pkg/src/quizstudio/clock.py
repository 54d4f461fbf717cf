"""Clock abstraction so offline runs produce reproducible timestamps.

The document store must be byte-identical across two identical mock-mode
sessions, which rules out wall-clock timestamps and measured durations in
persisted documents. ``LogicalClock`` hands out a strictly increasing
counter-based timeline instead.
"""

from __future__ import annotations

import time
from datetime import datetime, timezone


class SystemClock:
    """Real wall clock, used when talking to a live provider."""

    def now_iso(self) -> str:
        return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%S.%fZ")

    def monotonic(self) -> float:
        return time.monotonic()


class LogicalClock:
    """Deterministic clock: each call advances a fixed epoch by one second."""

    def __init__(self, epoch: str = "2024-01-01T00:00:00Z"):
        self._epoch = datetime.strptime(epoch, "%Y-%m-%dT%H:%M:%SZ").replace(
            tzinfo=timezone.utc
        )
        self._ticks = 0

    def now_iso(self) -> str:
        self._ticks += 1
        stamp = self._epoch.timestamp() + self._ticks
        return datetime.fromtimestamp(stamp, timezone.utc).strftime(
            "%Y-%m-%dT%H:%M:%SZ"
        )

    def monotonic(self) -> float:
        self._ticks += 1
        return float(self._ticks)
