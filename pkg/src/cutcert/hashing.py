"""t-wise independent polynomial hashing and geometric level assignment."""
from __future__ import annotations

from functools import cached_property

import numpy as np

from . import _kernels
from .field import P

# Level tables are materialised for dimensions up to this size.
_TABLE_LIMIT = 1 << 20


def is_power_of_two(m: int) -> bool:
    return m >= 1 and m & (m - 1) == 0


def next_power_of_two(x: int) -> int:
    return 1 << max(0, (x - 1).bit_length())


class PolyHash:
    """Random degree ``t - 1`` polynomial over F_p, reduced mod ``m`` into [1, m].

    Values at any ``t`` distinct points are independent and uniform over F_p;
    the reduction mod m (a power of two far below p) adds bias at most m / p.
    Coefficients are re-derived from ``seed``, so ``(seed, t, m)`` is the whole state.
    """

    def __init__(self, seed: int, t: int, m: int):
        if t < 1:
            raise ValueError("t must be >= 1")
        if m < 1:
            raise ValueError("m must be >= 1")
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.t = t
        self.m = m
        rng = np.random.default_rng(self.seed)
        self.coeffs = rng.integers(0, P, size=t, dtype=np.uint64)

    def __call__(self, i: int) -> int:
        return int(_kernels.horner(self.coeffs, np.uint64(i))) % self.m + 1

    def many(self, idx) -> np.ndarray:
        xs = np.asarray(idx, dtype=np.uint64)
        return (_kernels.horner_many(self.coeffs, xs) % np.uint64(self.m)).astype(np.int64) + 1

    def __repr__(self):
        return f"PolyHash(seed={self.seed}, t={self.t}, m={self.m})"


def floor_log_level(u: int, m: int) -> int:
    """floor(log2(m / u)) + 1 clamped to [1, log2 m], integers only."""
    levels = m.bit_length() - 1
    return min(levels, levels + 1 - (u - 1).bit_length())


class GeometricLevels:
    """Level map h: [m] -> [L], Pr[h(i) = j] = 2^-j for j < L, leftover mass on level L."""

    def __init__(self, inner: PolyHash):
        if not is_power_of_two(inner.m) or inner.m < 2:
            raise ValueError(f"level hashing needs m a power of two >= 2, got {inner.m}")
        self.inner = inner
        self.m = inner.m
        self.levels = inner.m.bit_length() - 1

    @classmethod
    def create(cls, seed: int, t: int, m: int) -> "GeometricLevels":
        return cls(PolyHash(seed, t, m))

    @cached_property
    def _table(self) -> np.ndarray | None:
        if self.m > _TABLE_LIMIT:
            return None
        coords = np.arange(1, self.m + 1, dtype=np.int64)
        return _kernels.hash_levels(self.inner.coeffs, coords, self.m, self.levels)

    def __call__(self, i: int) -> int:
        table = self._table
        if table is not None:
            return int(table[i - 1])
        return floor_log_level(self.inner(i), self.m)

    def many(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        table = self._table
        if table is not None:
            return table[idx - 1]
        return _kernels.hash_levels(self.inner.coeffs, idx, self.m, self.levels)


def hash_eval(h: PolyHash, i: int) -> int:
    return h(i)


def level_of(g: GeometricLevels, i: int) -> int:
    return g(i)
