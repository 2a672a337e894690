"""Signed vertex-edge incidence vectors sketched by a stack of SupportFind instances.

Vertex v owns x_v over pairs (a, b), a < b: +1 at (v, b), -1 at (a, v) for
every incident edge. Interior edges cancel in x_S = sum_{v in S} x_v, so
supp(x_S) is exactly the edge set crossing (S, V \\ S).

The stack is:
  forest rounds  B = 2 ceil(log2 n) + 2 independent SupportFind(1, n, m, 1/16),
                 one per Boruvka round. Fresh randomness keeps each round's
                 queries non-adaptive; a constant per-query error keeps every
                 round at O(log^2 n) bits per vertex, and the doubled round
                 count absorbs components whose query came back empty;
  stacks M_r     r = 1..R = ceil(log2 k), SupportFind(min(2^r, k), n, m, n^-10).
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .hashing import next_power_of_two
from .sparse_recovery import FormatError
from .supportfind import FAIL, Fail, Indices, InvalidParams, SupportFind, SupportFindParams

Edge = tuple[int, int]


class SelfLoop(ValueError):
    pass


class CorruptIndex(ValueError):
    """A decoded coordinate is not a real vertex pair (padding or out of range)."""


class QueryFailed(RuntimeError):
    pass


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def padded_dim(n: int) -> int:
    return max(2, next_power_of_two(num_pairs(n)))


def _row_offset(n: int, a: int) -> int:
    return (a - 1) * (2 * n - a) // 2


def edge_index(n: int, a: int, b: int) -> int:
    """Position of pair (a, b), a < b, in [1, C(n, 2)]."""
    if a > b:
        a, b = b, a
    if a == b:
        raise SelfLoop(f"self-loop at vertex {a}")
    if a < 1 or b > n:
        raise ValueError(f"vertex pair ({a}, {b}) outside [1, {n}]")
    return _row_offset(n, a) + (b - a)


def edge_of_index(n: int, idx: int) -> Edge:
    if not 1 <= idx <= num_pairs(n):
        raise CorruptIndex(f"coordinate {idx} is not a vertex pair for n={n}")
    lo, hi = 1, n - 1
    while lo < hi:  # largest a with offset(a) < idx
        mid = (lo + hi + 1) // 2
        if _row_offset(n, mid) < idx:
            lo = mid
        else:
            hi = mid - 1
    a = lo
    return a, a + idx - _row_offset(n, a)


def normalize(u: int, v: int) -> Edge:
    if u == v:
        raise SelfLoop(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def incidence_vector(n: int, v: int, edges: Iterable[Edge]) -> dict[int, int]:
    """x_v as a sparse ``{coordinate: value}`` map."""
    x: dict[int, int] = {}
    for a, b in edges:
        a, b = normalize(a, b)
        if v == a:
            x[edge_index(n, a, b)] = x.get(edge_index(n, a, b), 0) + 1
        elif v == b:
            x[edge_index(n, a, b)] = x.get(edge_index(n, a, b), 0) - 1
    return x


def _derive_seed(master: int, role: int, index: int) -> int:
    ss = np.random.SeedSequence([int(master) & 0xFFFFFFFFFFFFFFFF, role, index])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


FOREST_DELTA = Fraction(1, 16)


def forest_rounds(n: int) -> int:
    return 2 * math.ceil(math.log2(n)) + 2


def num_stacks(k: int) -> int:
    return math.ceil(math.log2(k)) if k > 1 else 0


def stack_params(n: int, k: int, seed: int, W: int = 32, C: float = 4.0
                 ) -> tuple[list[SupportFindParams], list[SupportFindParams]]:
    """Parameters of the forest rounds and of M_1..M_R, without allocating anything."""
    if n < 2:
        raise InvalidParams("need n >= 2")
    if not 1 <= k <= n - 1:
        raise InvalidParams(f"k must lie in [1, n-1], got {k}")
    m = padded_dim(n)
    forest = [SupportFindParams(1, n, m, FOREST_DELTA, seed=_derive_seed(seed, 0, b), C=C, W=W)
              for b in range(forest_rounds(n))]
    stacks = [SupportFindParams(min(2 ** r, k), n, m, Fraction(1, n ** 10),
                                seed=_derive_seed(seed, 1, r), C=C, W=W)
              for r in range(1, num_stacks(k) + 1)]
    return forest, stacks


@dataclass(frozen=True)
class StackSize:
    name: str
    budget: int
    t: int
    ell: int
    levels: int
    syndrome_bits: int
    hash_bits: int

    @property
    def bits(self) -> int:
        return self.syndrome_bits + self.hash_bits


@dataclass(frozen=True)
class SizeReport:
    n: int
    k: int
    m: int
    forest: tuple[StackSize, ...]
    stacks: tuple[StackSize, ...]

    @property
    def forest_bits(self) -> int:
        return sum(s.bits for s in self.forest)

    @property
    def stack_bits(self) -> int:
        return sum(s.bits for s in self.stacks)

    @property
    def total_bits(self) -> int:
        return self.forest_bits + self.stack_bits

    @property
    def syndrome_bits(self) -> int:
        return sum(s.syndrome_bits for s in self.forest + self.stacks)

    @property
    def sum_t(self) -> int:
        """sum_r t_r over M_1..M_R."""
        return sum(s.t for s in self.stacks)

    @property
    def comparator(self) -> float:
        """max{k, log2 n * log2 k}."""
        return max(self.k, math.log2(self.n) * math.log2(self.k)) if self.k > 1 else 1.0

    def rows(self) -> list[tuple]:
        return [(s.name, s.budget, s.t, s.ell, s.levels, s.bits) for s in self.forest + self.stacks]


def _stack_size(name: str, p: SupportFindParams) -> StackSize:
    return StackSize(name, p.k, p.t, p.ell, p.levels, p.syndrome_bits, p.hash_bits)


def size_report(n: int, k: int, W: int = 32, C: float = 4.0) -> SizeReport:
    forest, stacks = stack_params(n, k, 0, W=W, C=C)
    return SizeReport(
        n, k, padded_dim(n),
        tuple(_stack_size(f"forest[{b}]", p) for b, p in enumerate(forest)),
        tuple(_stack_size(f"M{r}", p) for r, p in enumerate(stacks, start=1)),
    )


_MAGIC = b"CCSK"
_VERSION = 1
_HEAD = struct.Struct("<4sB3xQQQQdQQ")


class ConnSketch:
    """Whole stream state: Boruvka forest rounds plus the doubling stacks M_1..M_R."""

    def __init__(self, n: int, k: int, seed: int = 0, W: int = 32, C: float = 4.0,
                 _instances: tuple[list[SupportFind], list[SupportFind]] | None = None):
        self.n, self.k = n, k
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.W, self.C = W, C
        self.m = padded_dim(n)
        if _instances is None:
            fp, sp = stack_params(n, k, self.seed, W=W, C=C)
            self.forest = [SupportFind(p) for p in fp]
            self.stacks = [SupportFind(p) for p in sp]
        else:
            self.forest, self.stacks = _instances

    @property
    def R(self) -> int:
        return len(self.stacks)

    @property
    def instances(self) -> list[SupportFind]:
        return self.forest + self.stacks

    def update(self, u: int, v: int, delta: int = 1) -> None:
        a, b = normalize(u, v)
        coord = edge_index(self.n, a, b)
        for inst in self.instances:
            inst.update(a, coord, delta)
            inst.update(b, coord, -delta)

    def insert(self, u: int, v: int) -> None:
        self.update(u, v, 1)

    def delete(self, u: int, v: int) -> None:
        self.update(u, v, -1)

    def same_shape(self, other: "ConnSketch") -> bool:
        return (self.n, self.k, self.seed, self.W, self.C) == (other.n, other.k, other.seed, other.W, other.C)

    def merge(self, other: "ConnSketch") -> "ConnSketch":
        if not self.same_shape(other):
            raise ValueError("cannot merge sketches built with different parameters")
        return ConnSketch(self.n, self.k, self.seed, self.W, self.C, _instances=(
            [a.merge(b) for a, b in zip(self.forest, other.forest)],
            [a.merge(b) for a, b in zip(self.stacks, other.stacks)],
        ))

    def __eq__(self, other):
        if not isinstance(other, ConnSketch):
            return NotImplemented
        return self.same_shape(other) and all(a == b for a, b in zip(self.instances, other.instances))

    def vertex_rows(self, v: int) -> list[np.ndarray]:
        """sk^(r)(v) for every instance: one player's share in the distributed setting."""
        return [inst.data[v - 1] for inst in self.instances]

    def stats(self) -> SizeReport:
        return size_report(self.n, self.k, W=self.W, C=self.C)

    def to_bytes(self) -> bytes:
        parts = [_HEAD.pack(_MAGIC, _VERSION, self.n, self.k, self.seed, self.W, self.C,
                            len(self.forest), len(self.stacks))]
        for inst in self.instances:
            blob = inst.to_bytes()
            parts.append(struct.pack("<Q", len(blob)))
            parts.append(blob)
        return b"".join(parts)

    @classmethod
    def from_bytes(cls, buf: bytes) -> "ConnSketch":
        if len(buf) < _HEAD.size:
            raise FormatError("truncated sketch file")
        magic, version, n, k, seed, W, C, nf, ns = _HEAD.unpack_from(buf)
        if magic != _MAGIC:
            raise FormatError("not a cutcert sketch (bad magic)")
        if version != _VERSION:
            raise FormatError(f"unsupported sketch version {version}")
        off = _HEAD.size
        insts = []
        for _ in range(nf + ns):
            (size,) = struct.unpack_from("<Q", buf, off)
            off += 8
            insts.append(SupportFind.from_bytes(buf[off:off + size]))
            off += size
        if off != len(buf):
            raise FormatError("trailing bytes after sketch payload")
        out = cls(n, k, seed, W, C, _instances=(insts[:nf], insts[nf:]))
        fp, sp = stack_params(n, k, seed, W=W, C=C)
        if [i.params for i in out.instances] != fp + sp:
            raise FormatError("instance parameters do not match the header")
        return out


def conn_new(n: int, k: int, seed: int = 0, W: int = 32, C: float = 4.0) -> ConnSketch:
    return ConnSketch(n, k, seed, W=W, C=C)


def conn_insert(cs: ConnSketch, u: int, v: int) -> None:
    cs.insert(u, v)


def conn_delete(cs: ConnSketch, u: int, v: int) -> None:
    cs.delete(u, v)


def conn_stats(cs: ConnSketch) -> SizeReport:
    return cs.stats()


def _decode_edges(n: int, answer: Indices) -> list[Edge]:
    return [edge_of_index(n, i) for i in answer.indices]


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n + 1))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def groups(self, n: int) -> list[frozenset[int]]:
        out: dict[int, set[int]] = {}
        for v in range(1, n + 1):
            out.setdefault(self.find(v), set()).add(v)
        return sorted((frozenset(g) for g in out.values()), key=min)


def spanning_forest(cs: ConnSketch) -> tuple[frozenset[Edge], list[frozenset[int]]]:
    """Boruvka over the forest rounds; returns (forest edges, components sorted by min vertex).

    A closed component always answers empty (its x_S is zero), so rounds keep
    running until one component remains or the rounds are spent; a failed or
    empty answer on an open component just waits for the next round.
    """
    n = cs.n
    dsu = _DSU(n)
    forest: set[Edge] = set()
    for inst in cs.forest:
        comps = dsu.groups(n)
        if len(comps) == 1:
            break
        # every component's query is fixed before any answer is used
        answers = [inst.query(sorted(c)) for c in comps]
        for comp, ans in zip(comps, answers):
            if isinstance(ans, Fail):
                continue
            for a, b in _decode_edges(n, ans):
                if (a in comp) == (b in comp):
                    raise QueryFailed(f"sketch returned non-crossing edge ({a}, {b})")
                if dsu.union(a, b):
                    forest.add((a, b))
    return frozenset(forest), dsu.groups(n)


def query_cut_edges(cs: ConnSketch, r: int, S, budget: int) -> list[Edge]:
    """Up to ``budget`` edges crossing (S, V \\ S) read from stack M_r."""
    if not 1 <= r <= cs.R:
        raise ValueError(f"stack index {r} outside [1, {cs.R}]")
    S = frozenset(S)
    if not S or len(S) >= cs.n:
        raise ValueError("S must be a proper nonempty vertex subset")
    ans = cs.stacks[r - 1].query(sorted(S))
    if ans is FAIL or isinstance(ans, Fail):
        raise QueryFailed(f"M_{r} query failed")
    edges = _decode_edges(cs.n, ans)[:budget]
    for a, b in edges:
        if (a in S) == (b in S):
            raise QueryFailed(f"sketch returned non-crossing edge ({a}, {b})")
    return edges
