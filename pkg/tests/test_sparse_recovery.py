import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cutcert.field import P
from cutcert.sparse_recovery import (
    HEADER_BYTES, NOT_SPARSE, Exact, FormatError, IndexOutOfRange, ShapeMismatch, SparseSketch,
    sparse_decode, sparse_merge, sparse_update,
)


def reference_syndromes(entries, length):
    """Direct big-int evaluation of s_j = sum_i x_i * i^j mod p."""
    return [sum(v * pow(i, j, P) for i, v in entries.items()) % P for j in range(length)]


def sparse_vectors(m, max_size, values=(-3, -2, -1, 1, 2, 3)):
    return st.dictionaries(st.integers(1, m), st.sampled_from(values), max_size=max_size)


def test_empty_sketch_decodes_to_zero():
    assert SparseSketch(4, 16).decode() == Exact()


def test_update_and_decode_example():
    sk = SparseSketch(ell=2, m=6)
    sparse_update(sk, 2, +1)
    sparse_update(sk, 5, -1)
    assert [int(s) for s in sk.syndromes] == [(pow(2, j, P) - pow(5, j, P)) % P for j in range(4)]
    assert sparse_decode(sk) == Exact(((2, 1), (5, -1)))


def test_cancellation_gives_zero():
    sk = SparseSketch(3, 10).update(4, 7).update(4, -7)
    assert sk.is_zero()
    assert sk.decode() == Exact()


def test_too_dense_is_reported():
    ell, m = 2, 16
    sk = SparseSketch.of_vector(ell, m, {i: 1 for i in range(1, 2 * ell + 2)})
    assert sk.decode() is NOT_SPARSE


@given(sparse_vectors(64, 8), st.integers(1, 8))
def test_syndromes_match_reference(entries, ell):
    sk = SparseSketch.of_vector(ell, 64, entries)
    assert [int(s) for s in sk.syndromes] == reference_syndromes(entries, 2 * ell)


@given(sparse_vectors(64, 8))
def test_exact_recovery_when_sparse(entries):
    ell = max(1, len(entries))
    got = SparseSketch.of_vector(ell, 64, entries).decode()
    assert got == Exact(tuple(sorted(entries.items())))


def test_exact_recovery_exhaustive_tiny():
    m, ell = 8, 2
    for size in range(ell + 1):
        for support in itertools.combinations(range(1, m + 1), size):
            for vals in itertools.product((-2, -1, 1, 3), repeat=size):
                x = dict(zip(support, vals))
                assert SparseSketch.of_vector(ell, m, x).decode() == Exact(tuple(sorted(x.items())))


@pytest.mark.parametrize("m,ell", [(64, 8), (1024, 16), (4096, 3)])
def test_never_wrong_beyond_budget(m, ell):
    # denser than ell: the decoder may say NotSparse but must never return a wrong vector
    rng = random.Random(m + ell)
    for _ in range(200):
        size = rng.randint(ell + 1, 3 * ell)
        x = {i: rng.choice([-1, 1, 2]) for i in rng.sample(range(1, m + 1), size)}
        got = SparseSketch.of_vector(ell, m, x).decode()
        assert got is NOT_SPARSE or got == Exact(tuple(sorted(x.items())))


def test_large_magnitudes_round_trip():
    x = {3: 10 ** 12, 17: -(10 ** 15), 40: 1}
    assert SparseSketch.of_vector(3, 64, x).decode() == Exact(tuple(sorted(x.items())))


def test_injective_on_sparse_vectors():
    m, ell = 6, 2
    seen = {}
    for size in range(ell + 1):
        for support in itertools.combinations(range(1, m + 1), size):
            for vals in itertools.product((-1, 1), repeat=size):
                key = SparseSketch.of_vector(ell, m, dict(zip(support, vals))).to_bytes()
                assert key not in seen
                seen[key] = (support, vals)
    assert len(seen) == 1 + 2 * m + 4 * 15


@given(sparse_vectors(32, 4), sparse_vectors(32, 4))
def test_merge_is_linear(x, y):
    a = SparseSketch.of_vector(8, 32, x)
    b = SparseSketch.of_vector(8, 32, y)
    z = dict(x)
    for i, v in y.items():
        z[i] = z.get(i, 0) + v
    assert sparse_merge(a, b) == SparseSketch.of_vector(8, 32, z)
    assert (a + b) + (-b) == a
    assert (a + (-a)).is_zero()


def test_merge_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        SparseSketch(2, 8).merge(SparseSketch(3, 8))


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        SparseSketch(2, 8).update(0, 1)
    with pytest.raises(IndexOutOfRange):
        SparseSketch(2, 8).update(9, 1)


@pytest.mark.parametrize("ell", [1, 5, 64])
def test_serialization_size_and_round_trip(ell):
    sk = SparseSketch.of_vector(ell, 128, {1: 1, 100: -4})
    blob = sk.to_bytes()
    assert HEADER_BYTES == 24
    assert len(blob) == 24 + 16 * ell
    assert SparseSketch.from_bytes(blob) == sk


def test_corrupt_bytes_rejected():
    blob = SparseSketch(2, 8).to_bytes()
    with pytest.raises(FormatError):
        SparseSketch.from_bytes(blob[:-1])
    with pytest.raises(FormatError):
        SparseSketch.from_bytes(b"XXXX" + blob[4:])
    with pytest.raises(FormatError):
        SparseSketch.from_bytes(blob[:10])


def test_syndrome_dtype():
    assert SparseSketch(2, 8).syndromes.dtype == np.uint64
