import itertools
import random

import pytest

from conftest import all_pairs, complete, random_graph
from cutcert.graph_sketch import (
    ConnSketch, CorruptIndex, QueryFailed, SelfLoop, conn_delete, conn_insert, conn_new, conn_stats,
    edge_index, edge_of_index, forest_rounds, incidence_vector, num_pairs, num_stacks, padded_dim,
    query_cut_edges, size_report, spanning_forest,
)
from cutcert.oracle import components, crossing_edges, cut_support, exact_support
from cutcert.sparse_recovery import FormatError
from cutcert.supportfind import InvalidParams


def sketch_graph(n, k, edges, seed=0, **kw):
    cs = conn_new(n, k, seed, **kw)
    for a, b in edges:
        conn_insert(cs, a, b)
    return cs


@pytest.mark.parametrize("n", [2, 3, 7, 20])
def test_edge_index_is_a_bijection(n):
    idx = [edge_index(n, a, b) for a, b in all_pairs(n)]
    assert idx == list(range(1, num_pairs(n) + 1))  # row-major order
    for (a, b), i in zip(all_pairs(n), idx):
        assert edge_of_index(n, i) == (a, b)
        assert edge_index(n, b, a) == i


def test_edge_index_small_values():
    assert [edge_index(3, 1, 2), edge_index(3, 1, 3), edge_index(3, 2, 3)] == [1, 2, 3]


def test_bad_indices():
    with pytest.raises(SelfLoop):
        edge_index(5, 2, 2)
    with pytest.raises(CorruptIndex):
        edge_of_index(5, 11)
    with pytest.raises(CorruptIndex):
        edge_of_index(5, 0)


def test_padded_dim():
    assert [padded_dim(n) for n in (2, 3, 4, 5, 12, 64)] == [2, 4, 8, 16, 128, 2048]


def test_incidence_signs():
    x1 = incidence_vector(4, 1, [(1, 2), (3, 4)])
    x2 = incidence_vector(4, 2, [(1, 2), (3, 4)])
    assert x1 == {edge_index(4, 1, 2): 1}
    assert x2 == {edge_index(4, 1, 2): -1}


def test_triangle_cut_support():
    edges = [(1, 2), (1, 3), (2, 3)]
    xs = [incidence_vector(3, v, edges) for v in (1, 2)]
    assert exact_support(xs) == {edge_index(3, 1, 3), edge_index(3, 2, 3)} == {2, 3}


def test_cut_support_identity_n8():
    rng = random.Random(8)
    n = 8
    edges = random_graph(n, 0.5, rng)
    xs = {v: incidence_vector(n, v, edges) for v in range(1, n + 1)}
    count = 0
    for size in range(1, n):
        for rest in itertools.combinations(range(2, n + 1), size - 1):
            S = (1,) + rest
            assert exact_support(xs[v] for v in S) == cut_support(n, edges, S)
            count += 1
    assert count == 127


@pytest.mark.parametrize("k,budgets", [(1, []), (2, [2]), (5, [2, 4, 5]), (8, [2, 4, 8])])
def test_stack_budgets(k, budgets):
    cs = conn_new(10, k)
    assert num_stacks(k) == len(budgets)
    assert [s.params.k for s in cs.stacks] == budgets
    assert len(cs.forest) == forest_rounds(10)


def test_k_out_of_range():
    with pytest.raises(InvalidParams):
        conn_new(5, 5)
    with pytest.raises(InvalidParams):
        conn_new(5, 0)
    with pytest.raises(InvalidParams):
        conn_new(1, 1)


def test_insert_delete_restores_fresh_bytes():
    cs = conn_new(6, 3, seed=4)
    fresh = cs.to_bytes()
    conn_insert(cs, 2, 5)
    assert cs.to_bytes() != fresh
    conn_delete(cs, 5, 2)
    assert cs.to_bytes() == fresh


def test_self_loop_rejected():
    with pytest.raises(SelfLoop):
        conn_new(4, 2).insert(3, 3)


def test_single_edge_query_every_stack():
    cs = sketch_graph(5, 4, [(1, 2)])
    for r in (1, 2):
        ans = cs.stacks[r - 1].query([1])
        assert ans.indices == (edge_index(5, 1, 2),) and ans.values == (1,)
        assert query_cut_edges(cs, r, {1}, 4) == [(1, 2)]


def test_closed_component_query_is_empty():
    cs = sketch_graph(6, 2, [(1, 2), (2, 3), (1, 3), (4, 5)])
    assert query_cut_edges(cs, 1, {1, 2, 3}, 2) == []


def test_k4_singleton_cut():
    cs = sketch_graph(4, 3, complete(4))
    # budget 4 is larger than the support, so everything comes back
    assert set(cs.stacks[-1].query([1]).indices) == {edge_index(4, 1, b) for b in (2, 3, 4)}
    assert set(query_cut_edges(cs, 2, {1}, 4)) == {(1, 2), (1, 3), (1, 4)}


def test_k6_half_cut_with_budget_4():
    cs = sketch_graph(6, 4, complete(6), seed=3)
    S = {1, 2, 3}
    got = query_cut_edges(cs, 2, S, 4)
    assert len(got) == len(set(got)) == 4
    assert set(got) <= crossing_edges(complete(6), S)


def test_query_argument_checks():
    cs = conn_new(4, 2)
    with pytest.raises(ValueError):
        query_cut_edges(cs, 2, {1}, 2)
    with pytest.raises(ValueError):
        query_cut_edges(cs, 1, {1, 2, 3, 4}, 2)


def test_spanning_forest_empty_graph():
    forest, comps = spanning_forest(conn_new(5, 1))
    assert forest == frozenset()
    assert comps == [frozenset({v}) for v in range(1, 6)]


def _acyclic(n, edges):
    return len(edges) == n - len(components(n, edges))


def test_spanning_forest_path():
    forest, comps = spanning_forest(sketch_graph(4, 1, [(1, 2), (2, 3), (3, 4)]))
    assert comps == [frozenset({1, 2, 3, 4})]
    assert forest == {(1, 2), (2, 3), (3, 4)}


def test_spanning_forest_two_triangles():
    edges = [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]
    forest, comps = spanning_forest(sketch_graph(6, 2, edges))
    assert comps == [frozenset({1, 2, 3}), frozenset({4, 5, 6})]
    assert len(forest) == 4 and forest <= set(edges) and _acyclic(6, forest)


def test_spanning_forest_random_graphs():
    rng = random.Random(17)
    for trial in range(30):
        n = rng.randint(2, 16)
        edges = random_graph(n, rng.uniform(0.05, 0.5), rng)
        forest, comps = spanning_forest(sketch_graph(n, 1, edges, seed=trial))
        assert comps == components(n, edges)
        assert forest <= set(edges) and _acyclic(n, forest)


def test_update_order_and_merge():
    rng = random.Random(2)
    edges = random_graph(8, 0.5, rng)
    a = sketch_graph(8, 3, edges, seed=1)
    shuffled = edges[:]
    rng.shuffle(shuffled)
    b = sketch_graph(8, 3, shuffled, seed=1)
    assert a == b and a.to_bytes() == b.to_bytes()
    half = len(edges) // 2
    left = sketch_graph(8, 3, edges[:half], seed=1)
    right = sketch_graph(8, 3, edges[half:], seed=1)
    assert left.merge(right) == a
    with pytest.raises(ValueError):
        left.merge(conn_new(8, 3, seed=2))


def test_serialization_round_trip():
    cs = sketch_graph(6, 3, [(1, 2), (2, 6), (3, 4)], seed=99)
    blob = cs.to_bytes()
    assert ConnSketch.from_bytes(blob) == cs
    with pytest.raises(FormatError):
        ConnSketch.from_bytes(blob + b"\0")
    with pytest.raises(FormatError):
        ConnSketch.from_bytes(b"XXXX" + blob[4:])


def test_stats_match_allocated_payload():
    for n, k in [(4, 1), (6, 3), (9, 8)]:
        cs = conn_new(n, k)
        rep = conn_stats(cs)
        assert rep.syndrome_bits == sum(inst.data.nbytes * 8 for inst in cs.instances)
        assert rep.total_bits == rep.syndrome_bits + sum(inst.params.hash_bits for inst in cs.instances)


def test_k1_has_only_forest_bits():
    rep = size_report(16, 1)
    assert rep.stacks == () and rep.stack_bits == 0
    assert rep.total_bits == rep.forest_bits


def test_size_grows_with_k():
    bits = [size_report(256, k).total_bits for k in (2, 4, 8, 16, 32, 64)]
    assert bits == sorted(bits)


@pytest.mark.parametrize("n", [256, 1024, 4096, 1 << 14])
def test_doubling_n_growth(n):
    # below n = 256 the ell <= m clamp bites and the factor is larger
    factor = size_report(2 * n, 4).total_bits / size_report(n, 4).total_bits
    assert 1.9 <= factor <= 2.6


@pytest.mark.parametrize("k", [1 << 12, 1 << 14, 1 << 16])
def test_doubling_large_k_growth(k):
    n = 1 << 20
    assert k >= 32 * 20
    assert size_report(n, 2 * k).total_bits <= 2.2 * size_report(n, k).total_bits
