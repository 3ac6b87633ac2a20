"""Deterministic uniform streams for the event simulators.

Stream contract ``event-rng v1``: stream ``(seed, stream_id)`` is the
philox4x64-10 counter-based generator keyed with the two 64-bit words
``(seed mod 2**64, stream_id mod 2**64)``, counter starting at zero.
Uniform doubles are successive 64-bit outputs mapped through
``(word >> 11) * 2**-53`` (53-bit mantissa, values in [0, 1)), and
exponential waiting times use the inverse transform ``-log1p(-u) / rate``.
Each simulator documents the order in which it consumes draws, so any
conforming philox4x64-10 implementation reproduces the same paths.
"""

from __future__ import annotations

import math

import numpy as np

_BLOCK = 4096
_INV_2_53 = 2.0**-53


class UniformStream:
    """Buffered uniform doubles from one (seed, stream) philox stream."""

    def __init__(self, seed: int, stream: int = 0):
        key = np.array([seed % 2**64, stream % 2**64], dtype=np.uint64)
        self._bits = np.random.Philox(key=key)
        self._buf = np.empty(0)
        self._next = 0

    def uniform(self) -> float:
        if self._next >= self._buf.size:
            raw = self._bits.random_raw(_BLOCK)
            self._buf = (raw >> np.uint64(11)) * _INV_2_53
            self._next = 0
        u = self._buf[self._next]
        self._next += 1
        return float(u)

    def exponential(self, rate: float) -> float:
        return -math.log1p(-self.uniform()) / rate
