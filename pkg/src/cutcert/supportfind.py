"""SupportFind(k, n, m, delta): n mergeable level-sketched vectors answering
"give me min(k, |x_S|_0) support indices of x_S = sum_{i in S} x_i".
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from . import _kernels
from .field import P
from .hashing import GeometricLevels, is_power_of_two
from .sparse_recovery import Exact, FormatError, IndexOutOfRange, ShapeMismatch, decode_syndromes


class InvalidParams(ValueError):
    pass


def _as_fraction(delta) -> Fraction:
    if isinstance(delta, Fraction):
        return delta
    if isinstance(delta, tuple):
        return Fraction(*delta)
    return Fraction(delta).limit_denominator(1 << 62)


def _ln_inverse(delta: Fraction) -> float:
    # math.log accepts big ints, so delta = n**-10 stays exact for any n
    return math.log(delta.denominator) - math.log(delta.numerator)


@dataclass(frozen=True)
class SupportFindParams:
    k: int
    n: int
    m: int
    delta: Fraction
    seed: int = 0
    C: float = 4.0
    W: int = 32

    def __post_init__(self):
        object.__setattr__(self, "delta", _as_fraction(self.delta))
        object.__setattr__(self, "seed", int(self.seed) & 0xFFFFFFFFFFFFFFFF)
        if self.k < 1 or self.n < 1:
            raise InvalidParams("k and n must be positive")
        if not is_power_of_two(self.m) or self.m < 2:
            raise InvalidParams(f"m must be a power of two >= 2, got {self.m}")
        if not 0 < self.delta < 1:
            raise InvalidParams("delta must lie in (0, 1)")
        if self.C <= 0 or self.W < 1:
            raise InvalidParams("C and W must be positive")

    @property
    def t(self) -> int:
        return max(self.k, math.ceil(self.C * _ln_inverse(self.delta)))

    @property
    def ell(self) -> int:
        # A vector in Z^m is always m-sparse; a larger budget buys nothing.
        return min(self.W * self.t, self.m)

    @property
    def levels(self) -> int:
        return self.m.bit_length() - 1

    @property
    def syndrome_bits(self) -> int:
        return self.n * self.levels * 2 * self.ell * 64

    @property
    def hash_bits(self) -> int:
        return self.t * 64


@dataclass(frozen=True)
class Indices:
    """Successful answer. ``values`` are the recovered entries of x_S at ``indices``."""

    indices: tuple[int, ...] = ()
    values: tuple[int, ...] = ()

    def __len__(self):
        return len(self.indices)


@dataclass(frozen=True)
class Fail:
    pass


FAIL = Fail()

SupportAnswer = Indices | Fail


def _first(pairs, count) -> Indices:
    pairs = sorted(pairs)[:count]
    return Indices(tuple(i for i, _ in pairs), tuple(v for _, v in pairs))


_MAGIC = b"SFND"
_VERSION = 1
_HEAD = struct.Struct("<4sB3xQQQQQQd")


def _pack_int(x: int) -> bytes:
    raw = x.to_bytes(max(1, (x.bit_length() + 7) // 8), "little")
    return struct.pack("<I", len(raw)) + raw


def _unpack_int(buf: bytes, off: int) -> tuple[int, int]:
    (size,) = struct.unpack_from("<I", buf, off)
    off += 4
    return int.from_bytes(buf[off:off + size], "little"), off + size


@dataclass
class SupportFind:
    params: SupportFindParams
    data: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        p = self.params
        self.hash = GeometricLevels.create(p.seed, p.t, p.m)
        shape = (p.n, p.levels, 2 * p.ell)
        if self.data is None:
            self.data = np.zeros(shape, dtype=np.uint64)
        elif self.data.shape != shape:
            raise ShapeMismatch(f"payload shape {self.data.shape} != {shape}")

    @property
    def t(self) -> int:
        return self.params.t

    def update(self, i: int, coord: int, u: int) -> None:
        """x_i[coord] += u."""
        p = self.params
        if not 1 <= i <= p.n:
            raise IndexOutOfRange(f"vector index {i} outside [1, {p.n}]")
        if not 1 <= coord <= p.m:
            raise IndexOutOfRange(f"coordinate {coord} outside [1, {p.m}]")
        level = self.hash(coord)
        _kernels.add_scaled_powers(self.data[i - 1, level - 1], np.uint64(u % P), np.uint64(coord))

    def update_vector(self, i: int, delta) -> None:
        """x_i += delta, given as ``{coord: value}``; one coordinate at a time."""
        for coord, u in delta.items():
            self.update(i, coord, u)

    def merged(self, S) -> np.ndarray:
        """Level syndromes of x_S, shape (L, 2 * ell)."""
        rows = np.fromiter((v - 1 for v in S), dtype=np.int64)
        if rows.size == 0:
            raise ValueError("query set must be nonempty")
        if rows.min() < 0 or rows.max() >= self.params.n:
            raise IndexOutOfRange("query set contains an index outside [1, n]")
        return _kernels.sum_rows(self.data, rows)

    def query(self, S) -> Indices | Fail:
        p = self.params
        t, k = p.t, p.k
        levels = self.merged(S)
        total: dict[int, int] = {}
        exact_seen = False
        for j in range(p.levels, 0, -1):
            res = decode_syndromes(levels[j - 1], p.ell, p.m)
            if not isinstance(res, Exact):
                continue
            exact_seen = True
            if len(res) >= t:
                return _first(res.entries, k)
            for i, v in res.entries:
                total[i] = total.get(i, 0) + v
        if not exact_seen:
            return FAIL
        return _first(((i, v) for i, v in total.items() if v != 0), k)

    def merge(self, other: "SupportFind") -> "SupportFind":
        if self.params != other.params:
            raise ShapeMismatch("cannot merge sketches with different parameters")
        out = self.copy()
        _kernels.add_inplace(out.data, other.data)
        return out

    def copy(self) -> "SupportFind":
        return SupportFind(self.params, self.data.copy())

    def is_zero(self) -> bool:
        return not self.data.any()

    def __eq__(self, other):
        if not isinstance(other, SupportFind):
            return NotImplemented
        return self.params == other.params and np.array_equal(self.data, other.data)

    @property
    def nbits(self) -> int:
        return self.data.size * 64

    def to_bytes(self) -> bytes:
        p = self.params
        head = _HEAD.pack(_MAGIC, _VERSION, p.k, p.n, p.m, p.t, p.W, p.seed, p.C)
        return (head + _pack_int(p.delta.numerator) + _pack_int(p.delta.denominator)
                + self.data.astype("<u8").tobytes())

    @classmethod
    def from_bytes(cls, buf: bytes) -> "SupportFind":
        if len(buf) < _HEAD.size:
            raise FormatError("truncated SupportFind payload")
        magic, version, k, n, m, t, W, seed, C = _HEAD.unpack_from(buf)
        if magic != _MAGIC or version != _VERSION:
            raise FormatError("not a SupportFind payload (bad magic or version)")
        num, off = _unpack_int(buf, _HEAD.size)
        den, off = _unpack_int(buf, off)
        params = SupportFindParams(k, n, m, Fraction(num, den), seed=seed, C=C, W=W)
        if params.t != t:
            raise FormatError("stored t disagrees with parameters")
        body = np.frombuffer(buf, dtype="<u8", offset=off)
        shape = (n, params.levels, 2 * params.ell)
        if body.size != n * params.levels * 2 * params.ell:
            raise FormatError("SupportFind payload has the wrong length")
        return cls(params, body.astype(np.uint64).reshape(shape))


def sf_new(params: SupportFindParams) -> SupportFind:
    return SupportFind(params)


def sf_update(sk: SupportFind, i: int, coord: int, u: int) -> None:
    sk.update(i, coord, u)


def sf_query(sk: SupportFind, S) -> Indices | Fail:
    return sk.query(S)


def with_seed(params: SupportFindParams, seed: int) -> SupportFindParams:
    return replace(params, seed=seed)
