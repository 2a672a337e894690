"""Linear sketches for k-edge-connectivity certificates over dynamic graph streams.

Layers, bottom up:

* :mod:`cutcert.field` -- F_p arithmetic, p = 2**61 - 1, Berlekamp-Massey.
* :mod:`cutcert.sparse_recovery` -- deterministic l-sparse recovery from 2l syndromes.
* :mod:`cutcert.hashing` -- t-wise independent polynomial hash, geometric levels.
* :mod:`cutcert.supportfind` -- mergeable SupportFind(k, n, m, delta) sketch.
* :mod:`cutcert.graph_sketch` -- incidence vectors, forest rounds + doubling stacks.
* :mod:`cutcert.certify` -- small-cut enumeration and the certificate query.
* :mod:`cutcert.oracle` -- exact graph, Stoer-Wagner, certificate validation.
* :mod:`cutcert.formats`, :mod:`cutcert.distributed`, :mod:`cutcert.cli` -- I/O.
"""
from .certify import (
    BudgetExceeded,
    CertifyFailed,
    NegativeCut,
    NegativeDisconnected,
    Positive,
    build_certificate,
    certificate_edge_count,
    enumerate_small_cuts,
)
from .field import P
from .graph_sketch import ConnSketch, conn_new, edge_index, edge_of_index, size_report, spanning_forest
from .oracle import ExactGraph, exact_min_cut, is_k_edge_connected, validate_certificate
from .sparse_recovery import Exact, NotSparse, SparseSketch
from .supportfind import Fail, Indices, SupportFind, SupportFindParams

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "CertifyFailed", "ConnSketch", "Exact", "ExactGraph", "Fail", "Indices",
    "NegativeCut", "NegativeDisconnected", "NotSparse", "P", "Positive", "SparseSketch",
    "SupportFind", "SupportFindParams", "build_certificate", "certificate_edge_count", "conn_new",
    "edge_index", "edge_of_index", "enumerate_small_cuts", "exact_min_cut",
    "is_k_edge_connected", "size_report", "spanning_forest", "validate_certificate",
]
