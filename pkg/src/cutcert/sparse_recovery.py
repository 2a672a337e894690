"""Deterministic l-sparse recovery from 2l power-sum syndromes.

The sketch of ``x`` in Z^m is ``syndromes[j] = sum_i x_i * i**j  (mod p)`` for
``j < 2l``: a Vandermonde-transpose matrix applied to ``x``. Any 2l columns are
independent, so the map is injective on l-sparse vectors and decoding is
Reed-Solomon syndrome decoding.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .field import P, lift


class IndexOutOfRange(IndexError):
    pass


class ShapeMismatch(ValueError):
    pass


class FormatError(ValueError):
    pass


@dataclass(frozen=True)
class Exact:
    """Recovered vector: ``(index, value)`` pairs, indices increasing, values nonzero."""

    entries: tuple[tuple[int, int], ...] = ()

    @property
    def support(self) -> list[int]:
        return [i for i, _ in self.entries]

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class NotSparse:
    pass


NOT_SPARSE = NotSparse()


def _prefix_schedule(n_syndromes: int) -> list[int]:
    lengths = []
    s = 2
    while s < n_syndromes:
        lengths.append(s)
        s *= 4
    lengths.append(n_syndromes)
    return lengths


def decode_syndromes(syn: np.ndarray, ell: int, m: int) -> Exact | NotSparse:
    """Decode a syndrome vector of length ``2 * ell`` over dimension ``m``.

    Berlekamp-Massey runs on growing prefixes; every candidate is re-encoded
    against all ``2 * ell`` syndromes before it is accepted. An accepted
    candidate y has ``Ay = Ax`` and ``|y|_0 <= ell``, so it equals x whenever
    x is ell-sparse. The cost is O(ell * s) for an s-sparse input.
    """
    if not syn.any():
        return Exact()
    n_syn = syn.shape[0]
    for prefix in _prefix_schedule(n_syn):
        lam, L = _kernels.berlekamp_massey(syn[:prefix])
        if L > ell:
            return NOT_SPARSE
        if 2 * L > prefix and prefix < n_syn:
            continue
        support = _kernels.locate_support(lam, m)
        if support.shape[0] != L:
            continue
        values = _kernels.solve_values(syn, lam, support)
        if not values.all():
            continue
        if np.array_equal(_kernels.encode(support, values, n_syn), syn):
            return Exact(tuple((int(i), lift(int(v))) for i, v in zip(support, values)))
    return NOT_SPARSE


_MAGIC = b"SPRS"
_VERSION = 1
_HEADER = struct.Struct("<4sB3xQQ")


@dataclass
class SparseSketch:
    """Syndromes of an integer vector in Z^m with sparsity budget ``ell``."""

    ell: int
    m: int
    syndromes: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if self.ell < 1 or self.m < 1:
            raise ValueError("ell and m must be positive")
        if self.syndromes is None:
            self.syndromes = np.zeros(2 * self.ell, dtype=np.uint64)
        elif self.syndromes.shape != (2 * self.ell,):
            raise ShapeMismatch(f"expected {2 * self.ell} syndromes, got {self.syndromes.shape}")

    def update(self, i: int, u: int) -> "SparseSketch":
        """x_i += u, in place."""
        if not 1 <= i <= self.m:
            raise IndexOutOfRange(f"index {i} outside [1, {self.m}]")
        _kernels.add_scaled_powers(self.syndromes, np.uint64(u % P), np.uint64(i))
        return self

    def merge(self, other: "SparseSketch") -> "SparseSketch":
        if (self.ell, self.m) != (other.ell, other.m):
            raise ShapeMismatch("sketches differ in ell or m")
        out = self.copy()
        _kernels.add_inplace(out.syndromes, other.syndromes)
        return out

    def __add__(self, other):
        return self.merge(other)

    def __neg__(self):
        out = self.copy()
        _kernels.negate_inplace(out.syndromes)
        return out

    def copy(self) -> "SparseSketch":
        return SparseSketch(self.ell, self.m, self.syndromes.copy())

    def decode(self) -> Exact | NotSparse:
        return decode_syndromes(self.syndromes, self.ell, self.m)

    def is_zero(self) -> bool:
        return not self.syndromes.any()

    def __eq__(self, other):
        if not isinstance(other, SparseSketch):
            return NotImplemented
        return (self.ell, self.m) == (other.ell, other.m) and np.array_equal(
            self.syndromes, other.syndromes
        )

    def to_bytes(self) -> bytes:
        return _HEADER.pack(_MAGIC, _VERSION, self.ell, self.m) + self.syndromes.astype("<u8").tobytes()

    @classmethod
    def from_bytes(cls, buf: bytes) -> "SparseSketch":
        if len(buf) < _HEADER.size:
            raise FormatError("truncated sparse sketch")
        magic, version, ell, m = _HEADER.unpack_from(buf)
        if magic != _MAGIC or version != _VERSION:
            raise FormatError("not a sparse sketch (bad magic or version)")
        body = buf[_HEADER.size:]
        if len(body) != 16 * ell:
            raise FormatError(f"expected {16 * ell} payload bytes, got {len(body)}")
        return cls(ell, m, np.frombuffer(body, dtype="<u8").astype(np.uint64))

    @classmethod
    def of_vector(cls, ell: int, m: int, entries) -> "SparseSketch":
        """Sketch of the vector given as ``{index: value}`` or ``(index, value)`` pairs."""
        sk = cls(ell, m)
        items = entries.items() if isinstance(entries, dict) else entries
        for i, v in items:
            sk.update(i, v)
        return sk


HEADER_BYTES = _HEADER.size


def sparse_update(sk: SparseSketch, i: int, u: int) -> SparseSketch:
    return sk.update(i, u)


def sparse_merge(a: SparseSketch, b: SparseSketch) -> SparseSketch:
    return a.merge(b)


def sparse_decode(sk: SparseSketch) -> Exact | NotSparse:
    return sk.decode()
