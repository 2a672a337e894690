"""Exact ground truth: the graph itself, exact min cuts, exact supports, certificate checks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph_sketch import Edge, edge_index, normalize


class StreamError(ValueError):
    pass


class ExactGraph:
    """Edge multiset over vertices 1..n. Strict mode keeps every multiplicity in {0, 1}."""

    def __init__(self, n: int, edges: Iterable[Edge] = (), strict: bool = True):
        self.n = n
        self.strict = strict
        self.mult: dict[Edge, int] = {}
        for u, v in edges:
            self.insert(u, v)

    def _check(self, u, v) -> Edge:
        e = normalize(u, v)
        if e[0] < 1 or e[1] > self.n:
            raise StreamError(f"edge ({u}, {v}) outside vertex range [1, {self.n}]")
        return e

    def update(self, u: int, v: int, delta: int) -> None:
        e = self._check(u, v)
        c = self.mult.get(e, 0) + delta
        if self.strict and c not in (0, 1):
            what = "insert of present" if delta > 0 else "delete of absent"
            raise StreamError(f"{what} edge {e}")
        if c:
            self.mult[e] = c
        else:
            self.mult.pop(e, None)

    def insert(self, u: int, v: int) -> None:
        self.update(u, v, 1)

    def delete(self, u: int, v: int) -> None:
        self.update(u, v, -1)

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(e for e, c in self.mult.items() if c > 0)

    def __contains__(self, e) -> bool:
        return self.mult.get(normalize(*e), 0) > 0


def _edge_set(G) -> frozenset[Edge]:
    if isinstance(G, ExactGraph):
        return G.edges
    return frozenset(normalize(u, v) for u, v in G)


def crossing_edges(edges: Iterable[Edge], S) -> frozenset[Edge]:
    S = set(S)
    return frozenset(e for e in edges if (e[0] in S) != (e[1] in S))


def components(n: int, edges: Iterable[Edge]) -> list[frozenset[int]]:
    adj = {v: [] for v in range(1, n + 1)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen, out = set(), []
    for s in range(1, n + 1):
        if s in seen:
            continue
        comp, stack = {s}, [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        out.append(frozenset(comp))
    return out


def canonical_side(S, n: int) -> frozenset[int]:
    """The side of the bipartition that contains vertex 1."""
    S = frozenset(S)
    return S if 1 in S else frozenset(range(1, n + 1)) - S


def stoer_wagner(n: int, edges: Iterable[Edge]) -> tuple[int, frozenset[int]]:
    """Global min cut of a connected unit-weight graph, O(n^3)."""
    w = np.zeros((n, n), dtype=np.int64)
    for a, b in edges:
        w[a - 1, b - 1] += 1
        w[b - 1, a - 1] += 1
    groups = [[v + 1] for v in range(n)]
    active = list(range(n))
    best, best_side = None, None
    while len(active) > 1:
        idx = np.array(active)
        sub = w[np.ix_(idx, idx)]
        in_a = np.zeros(len(active), dtype=bool)
        conn = np.zeros(len(active), dtype=np.int64)
        prev = last = 0
        for step in range(len(active)):
            cand = np.where(in_a, -1, conn)
            nxt = int(np.argmax(cand))
            in_a[nxt] = True
            prev, last = last, nxt
            if step < len(active) - 1:
                conn += sub[nxt]
        cut_of_phase = int(conn[last])
        s, t = active[prev], active[last]
        if best is None or cut_of_phase < best:
            best, best_side = cut_of_phase, frozenset(groups[t])
        w[s, :] += w[t, :]
        w[:, s] += w[:, t]
        w[s, s] = 0
        groups[s].extend(groups[t])
        active.remove(t)
    return best, canonical_side(best_side, n)


def exact_min_cut(G, n: int | None = None) -> tuple[int, frozenset[int]]:
    """(lambda, canonical witness side). Disconnected graphs give (0, component of vertex 1)."""
    if isinstance(G, ExactGraph):
        n = G.n
    edges = _edge_set(G)
    comps = components(n, edges)
    if len(comps) > 1:
        return 0, comps[0]
    if n == 1:
        return 0, frozenset({1})
    return stoer_wagner(n, edges)


def cut_sizes_all(n: int, edges: Iterable[Edge]) -> np.ndarray:
    """Cut size of every canonical side {1} + T, T subset of {2..n}, indexed by mask of T.

    Bit (v - 2) of the mask marks vertex v. The last entry (S = V) is 0.
    """
    masks = np.arange(1 << (n - 1), dtype=np.int64)
    sizes = np.zeros(masks.shape, dtype=np.int64)
    for a, b in edges:
        ina = np.ones_like(masks, dtype=bool) if a == 1 else (masks >> (a - 2)) & 1 == 1
        inb = np.ones_like(masks, dtype=bool) if b == 1 else (masks >> (b - 2)) & 1 == 1
        sizes += ina != inb
    return sizes


def side_of_mask(mask: int, n: int) -> frozenset[int]:
    return frozenset([1] + [v for v in range(2, n + 1) if mask >> (v - 2) & 1])


def exhaustive_min_cut(n: int, edges: Iterable[Edge]) -> int:
    sizes = cut_sizes_all(n, edges)
    return int(sizes[:-1].min())


def is_k_edge_connected(G, k: int, n: int | None = None) -> bool:
    lam, _ = exact_min_cut(G, n)
    return lam >= k


def exact_support(vectors) -> frozenset[int]:
    """Support of sum of sparse vectors given as ``{coord: value}`` maps."""
    total: dict[int, int] = {}
    for x in vectors:
        for i, v in x.items():
            total[i] = total.get(i, 0) + v
    return frozenset(i for i, v in total.items() if v)


def cut_support(n: int, edges: Iterable[Edge], S) -> frozenset[int]:
    """supp(x_S) read off the adjacency: indices of the edges crossing S."""
    return frozenset(edge_index(n, a, b) for a, b in crossing_edges(edges, S))


@dataclass(frozen=True)
class Verdict:
    valid: bool
    reason: str = ""

    def __bool__(self):
        return self.valid


VALID = Verdict(True)


def validate_certificate(G: ExactGraph, k: int, cert) -> Verdict:
    from .certify import NegativeCut, NegativeDisconnected, Positive

    n = G.n
    edges = G.edges
    g_ok = is_k_edge_connected(G, k)
    V = frozenset(range(1, n + 1))

    if isinstance(cert, Positive):
        if not g_ok:
            return Verdict(False, "wrong branch: G is not k-edge-connected")
        H = frozenset(normalize(*e) for e in cert.edges)
        if not H <= edges:
            return Verdict(False, "not a subgraph: H has edges absent from G")
        if {v for e in H for v in e} != V and n > 1:
            return Verdict(False, "not spanning: H misses a vertex")
        if not is_k_edge_connected(H, k, n):
            return Verdict(False, "not k-connected: H has a cut smaller than k")
        return VALID

    if isinstance(cert, NegativeDisconnected):
        C = frozenset(cert.component)
        if not C or C >= V or not C <= V:
            return Verdict(False, "component must be a proper nonempty vertex subset")
        if g_ok:
            return Verdict(False, "wrong branch: G is k-edge-connected")
        if crossing_edges(edges, C):
            return Verdict(False, "has crossing edges: C is not closed in G")
        return VALID

    if isinstance(cert, NegativeCut):
        S = frozenset(cert.side)
        if not S or S >= V or not S <= V:
            return Verdict(False, "cut side must be a proper nonempty vertex subset")
        if g_ok:
            return Verdict(False, "wrong branch: G is k-edge-connected")
        listed = frozenset(normalize(*e) for e in cert.edges)
        actual = crossing_edges(edges, S)
        if listed != actual:
            return Verdict(False, "crossing set mismatch: listed edges differ from E(S, V-S)")
        if len(actual) >= k:
            return Verdict(False, "cut too large: |E(S, V-S)| >= k")
        return VALID

    return Verdict(False, f"unknown certificate type {type(cert).__name__}")
