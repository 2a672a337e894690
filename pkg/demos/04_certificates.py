"""k-edge-connectivity certificates: positive, negative cut, disconnected.

Each certificate is checked against the exact graph by the oracle.

Run: python3 demos/04_certificates.py
"""
import itertools

from cutcert.certify import build_certificate, certificate_edge_count
from cutcert.graph_sketch import conn_new
from cutcert.oracle import ExactGraph, exact_min_cut, validate_certificate


def run(name, n, k, edges):
    cs = conn_new(n, k, seed=2024)
    for a, b in edges:
        cs.insert(a, b)
    cert = build_certificate(cs)
    G = ExactGraph(n, edges)
    lam, _ = exact_min_cut(G)
    print(f"{name}: n={n} k={k} lambda={lam} -> {cert.kind}")
    if cert.kind == "positive":
        print(f"  {certificate_edge_count(cert)} of {len(edges)} edges kept")
        for rs in cert.rounds:
            print(f"  round {rs.r}: threshold {rs.threshold}, {rs.cuts} small cuts, +{rs.edges_added} edges")
    elif cert.kind == "negative-cut":
        print(f"  side {sorted(cert.side)} crossing {sorted(cert.edges)}")
    else:
        print(f"  closed component {sorted(cert.component)}")
    print("  oracle:", validate_certificate(G, k, cert))


k8 = list(itertools.combinations(range(1, 9), 2))
run("K8", 8, 4, k8)

two_k5 = (list(itertools.combinations(range(1, 6), 2))
          + list(itertools.combinations(range(6, 11), 2)) + [(5, 6), (1, 10)])
run("two K5 joined by 2 edges", 10, 3, two_k5)

run("two triangles", 6, 2, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
