"""SupportFind: n sketched vectors, queried for support indices of any subset sum.

Run: python3 demos/02_supportfind.py
"""
import random
from fractions import Fraction

from cutcert.supportfind import SupportFindParams, sf_new

p = SupportFindParams(k=4, n=16, m=4096, delta=Fraction(1, 100), seed=7)
print(f"t={p.t} ell={p.ell} levels={p.levels} payload={p.syndrome_bits / 8 / 2**20:.1f} MiB")

rng = random.Random(1)
sk = sf_new(p)
vectors = {i: {} for i in range(1, p.n + 1)}
for _ in range(3000):
    i, c, u = rng.randint(1, p.n), rng.randint(1, p.m), rng.choice([-1, 1])
    sk.update(i, c, u)
    vectors[i][c] = vectors[i].get(c, 0) + u

for S in ([3], [1, 2, 3, 4], list(range(1, 17))):
    truth = {}
    for i in S:
        for c, v in vectors[i].items():
            truth[c] = truth.get(c, 0) + v
    support = {c for c, v in truth.items() if v}
    ans = sk.query(S)
    print(f"|S|={len(S):2d} |x_S|_0={len(support):4d} -> {ans.indices} "
          f"all in support: {set(ans.indices) <= support}")

# a coordinate that cancels across S never shows up
sk2 = sf_new(p)
sk2.update(1, 10, +1)
sk2.update(2, 10, -1)
sk2.update(2, 11, +1)
print("x_1 = e_10, x_2 = e_11 - e_10, query {1,2}:", sk2.query([1, 2]).indices)
