"""Exact recovery of a sparse integer vector from 2*ell power-sum syndromes.

Run: python3 demos/01_sparse_recovery.py
"""
from cutcert.sparse_recovery import NOT_SPARSE, SparseSketch

m, ell = 1 << 16, 4
x = {17: 3, 4096: -1, 60000: 2}

sk = SparseSketch.of_vector(ell, m, x)
print(f"dimension m={m}, budget ell={ell}, sketch size {len(sk.to_bytes())} bytes")
print("decoded:", sk.decode())

# linear: updates in any order, deletions included
sk.update(17, -3)
sk.update(99, 5)
print("after x[17] -= 3, x[99] += 5:", sk.decode())

# more nonzeros than the budget: the decoder says so instead of guessing
dense = SparseSketch.of_vector(ell, m, {i: 1 for i in range(1, 2 * ell + 2)})
print("9-sparse vector with ell=4:", "NotSparse" if dense.decode() is NOT_SPARSE else dense.decode())
