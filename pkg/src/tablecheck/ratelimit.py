"""Per-client token-bucket rate limiting.

A bucket starts full (capacity C) and refills continuously at C per window,
so a burst of C requests passes and the C+1st is rejected with a precise
retry delay. Updates are guarded by a lock so concurrent handlers see an
exact count: with capacity C, exactly C of any simultaneous burst succeed.
"""

from __future__ import annotations

import math
import threading
import time
from dataclasses import dataclass


@dataclass(frozen=True)
class RateLimitPolicy:
    capacity: int
    window_s: float

    def __post_init__(self) -> None:
        if self.capacity < 1:
            raise ValueError("capacity must be >= 1")
        if self.window_s <= 0:
            raise ValueError("window must be positive")


class TokenBucketLimiter:
    """One bucket per client key (the client address, in the service)."""

    def __init__(self, policy: RateLimitPolicy, clock=time.monotonic):
        self._policy = policy
        self._clock = clock
        self._rate = policy.capacity / policy.window_s
        self._buckets: dict[str, tuple[float, float]] = {}  # key -> (tokens, stamp)
        self._lock = threading.Lock()

    def acquire(self, key: str) -> tuple[bool, int]:
        """Try to take one token. Returns (allowed, retry_after_seconds)."""
        now = self._clock()
        with self._lock:
            tokens, stamp = self._buckets.get(key, (float(self._policy.capacity), now))
            tokens = min(self._policy.capacity, tokens + (now - stamp) * self._rate)
            if tokens >= 1.0:
                self._buckets[key] = (tokens - 1.0, now)
                return True, 0
            self._buckets[key] = (tokens, now)
            retry_after = max(1, math.ceil((1.0 - tokens) / self._rate))
            return False, retry_after
