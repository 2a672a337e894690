import random

import pytest

from conftest import complete, random_graph
from cutcert.distributed import (
    PlayerMessage, SimulationBug, message_bits, player_message, referee_reconstruct, simulate,
)
from cutcert.graph_sketch import conn_new, size_report


def direct(n, k, seed, edges):
    cs = conn_new(n, k, seed)
    for a, b in edges:
        cs.insert(a, b)
    return cs


def test_referee_matches_direct_ingest():
    rng = random.Random(6)
    for trial in range(5):
        n = rng.randint(3, 10)
        k = rng.randint(1, n - 1)
        edges = random_graph(n, 0.5, rng)
        rep = simulate(n, k, trial, {e: 1 for e in edges}, reference=direct(n, k, trial, edges))
        assert rep.identical
        assert rep.referee.to_bytes() == direct(n, k, trial, edges).to_bytes()


def test_mismatch_is_a_hard_failure():
    with pytest.raises(SimulationBug):
        simulate(5, 2, 0, {(1, 2): 1}, reference=direct(5, 2, 0, [(1, 3)]))


def test_player_message_has_fixed_length():
    n, k = 6, 3
    a = player_message(n, k, 0, 2, [((1, 2), 1)])
    b = player_message(n, k, 0, 5, [])
    assert a.bit_length == b.bit_length == message_bits(n, k)


def test_message_bits_is_one_row_of_the_sketch():
    n, k = 16, 4
    rep = size_report(n, k)
    assert message_bits(n, k) - 8 * 16 == rep.syndrome_bits // n


def test_messages_in_any_order():
    n, k, seed = 7, 3, 4
    edges = complete(7)[:12]
    inc = {v: [((a, b), 1) for a, b in edges if v in (a, b)] for v in range(1, n + 1)}
    msgs = [player_message(n, k, seed, v, inc[v]) for v in range(1, n + 1)]
    fwd = referee_reconstruct(n, k, seed, msgs)
    back = referee_reconstruct(n, k, seed, msgs[::-1])
    assert fwd == back == direct(n, k, seed, edges)


def test_corrupt_message_rejected():
    msg = player_message(4, 1, 0, 1, [])
    with pytest.raises(ValueError):
        referee_reconstruct(4, 1, 0, [PlayerMessage(1, b"XXXX" + msg.payload[4:])])
    with pytest.raises(ValueError):
        referee_reconstruct(4, 1, 0, [PlayerMessage(1, msg.payload[:-8])])


def test_n64_message_balance():
    rng = random.Random(64)
    edges = random_graph(64, 0.1, rng)
    rep = simulate(64, 4, 1, {e: 1 for e in edges})
    assert rep.max_bits <= 1.6 * rep.mean_bits


def test_message_growth_when_doubling_large_k():
    n = 1 << 20
    ks = [1 << 15, 1 << 16, 1 << 17, 1 << 18]
    bits = [message_bits(n, k) for k in ks]
    for lo, hi in zip(bits, bits[1:]):
        assert hi <= 2.2 * lo
