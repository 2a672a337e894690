"""End-of-stream query: spanning forest, then doubling rounds that fix every small cut."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .graph_sketch import ConnSketch, Edge, QueryFailed, query_cut_edges, spanning_forest
from .oracle import canonical_side, crossing_edges, cut_sizes_all, side_of_mask, stoer_wagner

EXHAUSTIVE_MAX_N = 22


class BudgetExceeded(RuntimeError):
    """More small cuts than the (2n)^(2 alpha) count allows; an upstream invariant broke."""


class CertifyFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class RoundStats:
    r: int
    threshold: int
    cuts: int
    edges_added: int


@dataclass(frozen=True)
class Positive:
    edges: frozenset
    rounds: tuple[RoundStats, ...] = field(default=(), compare=False)

    kind = "positive"


@dataclass(frozen=True)
class NegativeDisconnected:
    component: frozenset
    rounds: tuple[RoundStats, ...] = field(default=(), compare=False)

    kind = "negative-disconnected"

    @property
    def edges(self) -> frozenset:
        return frozenset()


@dataclass(frozen=True)
class NegativeCut:
    side: frozenset
    edges: frozenset
    rounds: tuple[RoundStats, ...] = field(default=(), compare=False)

    kind = "negative-cut"


Certificate = Positive | NegativeDisconnected | NegativeCut


def certificate_edge_count(cert: Certificate) -> int:
    return len(cert.edges)


def _sort_key(S: frozenset) -> tuple:
    return tuple(sorted(S))


def cut_budget(n: int) -> int:
    return 16 * n ** 4


def _enumerate_exhaustive(n: int, edges: list[Edge], threshold: int) -> list[frozenset[int]]:
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive enumeration is limited to n <= {EXHAUSTIVE_MAX_N}")
    sizes = cut_sizes_all(n, edges)[:-1]
    hits = np.flatnonzero(sizes < threshold)
    if hits.size > cut_budget(n):
        raise BudgetExceeded(f"{hits.size} cuts below {threshold} on n={n}")
    return sorted((side_of_mask(int(mask), n) for mask in hits), key=_sort_key)


def _contract_once(n, edges, target, rng) -> list[int]:
    """Random contraction to ``target`` super-vertices; returns a label per vertex (1-based list)."""
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    order = list(edges)
    rng.shuffle(order)
    groups = n
    for a, b in order:
        if groups <= target:
            break
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
            groups -= 1
    return [find(v) for v in range(n + 1)]


def _enumerate_contraction(n, edges, threshold, rng, patience=None, max_trials=200_000):
    lam, _ = stoer_wagner(n, edges)
    if lam >= threshold:
        return []
    alpha = (threshold - 1) / max(lam, 1)
    target = min(n, max(2, int(np.ceil(2 * alpha))))
    if patience is None:
        patience = max(200, 4 * n * n)
    found: dict[frozenset, None] = {}
    idle = trials = 0
    while idle < patience and trials < max_trials:
        trials += 1
        labels = _contract_once(n, edges, target, rng)
        roots = sorted(set(labels[1:]))
        new = False
        # every bipartition of the super-vertices, keyed by the side holding vertex 1
        first = labels[1]
        others = [r for r in roots if r != first]
        for mask in range(1 << len(others)):
            if mask == (1 << len(others)) - 1:
                continue
            chosen = {first} | {others[i] for i in range(len(others)) if mask >> i & 1}
            S = frozenset(v for v in range(1, n + 1) if labels[v] in chosen)
            if S in found:
                continue
            if len(crossing_edges(edges, S)) < threshold:
                found[S] = None
                new = True
        if len(found) > cut_budget(n):
            raise BudgetExceeded(f"{len(found)} cuts below {threshold} on n={n}")
        idle = 0 if new else idle + 1
    return sorted(found, key=_sort_key)


def enumerate_small_cuts(n: int, edges: Iterable[Edge], threshold: int, mode: str = "auto",
                         rng: random.Random | None = None, **kw) -> list[frozenset[int]]:
    """Every canonical side S (1 in S) whose cut in ``edges`` is smaller than ``threshold``.

    ``exhaustive`` scans all 2^(n-1) sides. ``contraction`` repeats random
    contractions down to ceil(2 alpha) super-vertices (alpha = (threshold-1)/lambda)
    until ``patience`` consecutive trials add nothing; it finds every listed
    cut only with high probability.
    """
    edges = sorted(set(edges))
    if mode == "auto":
        mode = "exhaustive" if n <= EXHAUSTIVE_MAX_N else "contraction"
    if mode == "exhaustive":
        return _enumerate_exhaustive(n, edges, threshold)
    if mode == "contraction":
        return _enumerate_contraction(n, edges, threshold, rng or random.Random(0), **kw)
    raise ValueError(f"unknown enumeration mode {mode!r}")


def build_certificate(cs: ConnSketch, mode: str = "auto", rng: random.Random | None = None,
                      on_round=None) -> Certificate:
    """Run the doubling query over a finished sketch.

    ``on_round(r, G_r)`` is called after every completed round with the
    current subgraph; tests use it to check the round invariant.
    """
    n, k = cs.n, cs.k
    rng = rng or random.Random(cs.seed)
    try:
        forest, comps = spanning_forest(cs)
    except QueryFailed as exc:
        raise CertifyFailed(str(exc)) from exc
    if len(comps) > 1:
        return NegativeDisconnected(comps[0])
    G = set(forest)
    if on_round:
        on_round(0, frozenset(G))
    rounds = []
    for r in range(1, cs.R + 1):
        threshold = min(2 ** r, k)
        cuts = enumerate_small_cuts(n, G, threshold, mode=mode, rng=rng)
        found: set[Edge] = set()
        for S in cuts:
            try:
                E_S = query_cut_edges(cs, r, S, threshold)
            except QueryFailed as exc:
                raise CertifyFailed(str(exc)) from exc
            if len(E_S) < threshold:
                rounds.append(RoundStats(r, threshold, len(cuts), len(found - G)))
                return NegativeCut(canonical_side(S, n), frozenset(E_S), tuple(rounds))
            found.update(E_S)
        rounds.append(RoundStats(r, threshold, len(cuts), len(found - G)))
        G |= found
        if on_round:
            on_round(r, frozenset(G))
    return Positive(frozenset(G), tuple(rounds))
