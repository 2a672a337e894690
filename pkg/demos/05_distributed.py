"""One message per vertex: each player sketches only its own incident edges.

The referee sums the messages into a fresh sketch; the result is the same
bytes as ingesting the whole stream centrally.

Run: python3 demos/05_distributed.py
"""
import random

from cutcert.certify import build_certificate
from cutcert.distributed import message_bits, simulate
from cutcert.graph_sketch import conn_new
from cutcert.oracle import ExactGraph, validate_certificate

rng = random.Random(5)
n, k, seed = 12, 3, 99
edges = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if rng.random() < 0.6]

central = conn_new(n, k, seed)
for a, b in edges:
    central.insert(a, b)

rep = simulate(n, k, seed, {e: 1 for e in edges}, reference=central)
print(f"{n} players, message length {rep.max_bits} bits (predicted {message_bits(n, k)})")
print("referee sketch identical to central ingest:", rep.identical)

cert = build_certificate(rep.referee)
print("certificate:", cert.kind, validate_certificate(ExactGraph(n, edges), k, cert))
