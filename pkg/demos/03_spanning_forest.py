"""A spanning forest recovered from the sketch alone, after a stream with deletions.

Run: python3 demos/03_spanning_forest.py
"""
import random

from cutcert.graph_sketch import conn_new, spanning_forest
from cutcert.oracle import ExactGraph, components

rng = random.Random(3)
n = 14
cs = conn_new(n, k=1, seed=11)
G = ExactGraph(n)

# three clusters, plus noise edges that are later deleted
clusters = [range(1, 6), range(6, 11), range(11, 15)]
for cl in clusters:
    cl = list(cl)
    for a, b in zip(cl, cl[1:]):
        cs.insert(a, b)
        G.insert(a, b)
noise = [(1, 7), (4, 12), (9, 14)]
for a, b in noise:
    cs.insert(a, b)
    G.insert(a, b)
for a, b in noise:
    cs.delete(a, b)
    G.delete(a, b)

forest, comps = spanning_forest(cs)
print("forest edges:", sorted(forest))
print("components  :", [sorted(c) for c in comps])
print("matches the exact graph:", comps == components(n, G.edges))
