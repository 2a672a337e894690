"""Arithmetic in the prime field F_p with p = 2**61 - 1.

Field elements are plain Python ints kept in canonical form ``0 <= a < p``.
Bulk work (syndromes, Berlekamp-Massey, root scans) runs in the compiled
kernels of :mod:`cutcert._kernels`; this module is the scalar surface.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from ._kernels import PRIME

P = PRIME
HALF_P = P // 2


class InversionOfZero(ZeroDivisionError):
    pass


def canon(a: int) -> int:
    return a % P


def add(a: int, b: int) -> int:
    return (a + b) % P


def sub(a: int, b: int) -> int:
    return (a - b) % P


def mul(a: int, b: int) -> int:
    return (a * b) % P


def neg(a: int) -> int:
    return (-a) % P


def inv(a: int) -> int:
    a %= P
    if a == 0:
        raise InversionOfZero("0 has no inverse in F_p")
    return pow(a, P - 2, P)


def lift(a: int) -> int:
    """Signed representative in (-p/2, p/2]."""
    a %= P
    return a - P if a > HALF_P else a


def as_array(values: Iterable[int]) -> np.ndarray:
    return np.array([v % P for v in values], dtype=np.uint64)


@dataclass(frozen=True)
class FieldPoly:
    """Polynomial over F_p, coefficients lowest degree first, trailing zeros trimmed."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [x % P for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % P
        return acc

    def eval_many(self, xs: Sequence[int]) -> np.ndarray:
        return _kernels.horner_many(as_array(self.coeffs or (0,)), as_array(xs))

    @classmethod
    def from_roots(cls, points: Iterable[int]) -> "FieldPoly":
        """prod (1 - a z) over the given points: the locator of that support."""
        c = [1]
        for a in points:
            nxt = c + [0]
            for i, ci in enumerate(c):
                nxt[i + 1] = (nxt[i + 1] - a * ci) % P
            c = nxt
        return cls(tuple(c))


def berlekamp_massey(syndromes: Sequence[int]) -> FieldPoly:
    """Minimal connection polynomial (Lambda(0) = 1) generating ``syndromes``."""
    arr = syndromes if isinstance(syndromes, np.ndarray) else as_array(syndromes)
    lam, _ = _kernels.berlekamp_massey(arr.astype(np.uint64, copy=False))
    return FieldPoly(tuple(int(c) for c in lam))


def find_roots_among(poly: FieldPoly, candidates: Sequence[int]) -> set[int]:
    """1-based positions ``i`` with ``poly(candidates[i-1]) == 0`` (exhaustive scan)."""
    if poly.degree <= 0:
        return set() if poly.coeffs else set(range(1, len(candidates) + 1))
    vals = poly.eval_many(candidates)
    return {int(i) + 1 for i in np.flatnonzero(vals == 0)}


def inverse_points(m: int) -> list[int]:
    """The m candidates 1/alpha_i for evaluation points alpha_i = i."""
    return [inv(i) for i in range(1, m + 1)]
