"""Sketch size against the two-regime comparator max(k, log n * log k).

Sizes come from the parameters alone, so large n costs nothing to tabulate.

Run: python3 demos/06_space_scaling.py
"""
import math

from cutcert.graph_sketch import size_report

print(f"{'n':>8} {'k':>7} {'total GiB':>11} {'bits/(n log2m^2 max(k, logn logk))':>36}")
for e in (10, 14, 20):
    n = 1 << e
    for k in (2, 8, 32, 128, 1024, 1 << 16):
        if k > n - 1:
            continue
        r = size_report(n, k)
        lm = math.log2(r.m)
        norm = r.total_bits / (n * lm * lm * r.comparator)
        print(f"{n:>8} {k:>7} {r.total_bits / 8 / 2**30:>11.2f} {norm:>36.1f}")

print("\nper-instance breakdown, n=1024 k=8:")
for name, budget, t, ell, levels, bits in size_report(1024, 8).rows()[-4:]:
    print(f"  {name:<10} budget={budget:<3} t={t:<4} ell={ell:<6} levels={levels} bits={bits}")
