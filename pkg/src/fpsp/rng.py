"""Deterministic, splittable randomness for reproducible instances.

Everything random in this package flows through CounterRng, a counter-mode
SHA-256 stream keyed by (seed, instance_id).  The same key always yields the
same bytes on every platform and numpy version, which is what makes sweep
reports byte-identical across reruns and worker counts.  Distinct instance
ids give independent streams, so a grid of instances can be built in any
order (or in parallel) without coordination.
"""

from __future__ import annotations

import hashlib

import numpy as np

from .errors import BadParams

_BLOCK = 32  # bytes per SHA-256 output


class CounterRng:
    """SHA-256 counter stream keyed by (seed, instance_id)."""

    def __init__(self, seed: int, instance_id: str | int = 0):
        self._key = b"fpsp|%d|%s" % (int(seed), str(instance_id).encode())
        self._counter = 0
        self._buf = b""

    def _refill(self, need: int) -> None:
        chunks = [self._buf]
        have = len(self._buf)
        while have < need:
            h = hashlib.sha256(self._key + b"|%d" % self._counter).digest()
            self._counter += 1
            chunks.append(h)
            have += _BLOCK
        self._buf = b"".join(chunks)

    def bytes(self, n: int) -> bytes:
        self._refill(n)
        out, self._buf = self._buf[:n], self._buf[n:]
        return out

    def u64(self) -> int:
        return int.from_bytes(self.bytes(8), "little")

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection, exact (no modulo bias)."""
        if n <= 0:
            raise BadParams("below() needs n >= 1, got %d" % n)
        # Reject draws from the tail of the 64-bit range.
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.u64()
            if x < limit:
                return x % n

    def integers(self, lo: int, hi: int, size: int) -> np.ndarray:
        """size uniform draws from [lo, hi), as an int64 array."""
        if hi <= lo:
            raise BadParams("empty range [%d, %d)" % (lo, hi))
        span = hi - lo
        return np.array([lo + self.below(span) for _ in range(size)],
                        dtype=np.int64)

    def subset(self, population: int, k: int) -> np.ndarray:
        """Uniform k-subset of {0,...,population-1}, sorted, via partial
        Fisher-Yates on a lazy index map."""
        if not 0 <= k <= population:
            raise BadParams("cannot draw %d from %d" % (k, population))
        swapped: dict[int, int] = {}
        picked = np.empty(k, dtype=np.int64)
        for i in range(k):
            j = i + self.below(population - i)
            picked[i] = swapped.get(j, j)
            swapped[j] = swapped.get(i, i)
        picked.sort()
        return picked

    def shuffle(self, arr: np.ndarray) -> None:
        """In-place Fisher-Yates."""
        for i in range(len(arr) - 1, 0, -1):
            j = self.below(i + 1)
            arr[i], arr[j] = arr[j], arr[i]
