"""Text stream files and certificate documents.

Stream file::

    # comment
    n 12 k 3
    + 1 2
    - 1 2

Certificates are JSON objects tagged with ``format``/``version``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

from .certify import Certificate, NegativeCut, NegativeDisconnected, Positive, RoundStats
from .graph_sketch import ConnSketch, normalize
from .oracle import ExactGraph

CERT_FORMAT = "cutcert-certificate"
CERT_VERSION = 1


class StreamParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass(frozen=True)
class Update:
    sign: int
    u: int
    v: int
    lineno: int = 0


@dataclass(frozen=True)
class StreamHeader:
    n: int
    k: int


def _content_lines(lines: Iterable[str]) -> Iterator[tuple[int, list[str]]]:
    for lineno, line in enumerate(lines, start=1):
        body = line.split("#", 1)[0].split()
        if body:
            yield lineno, body


def parse_stream(lines: Iterable[str]) -> tuple[StreamHeader, Iterator[Update]]:
    """Header plus a lazy iterator of updates; consumes ``lines`` exactly once."""
    it = _content_lines(lines)
    try:
        lineno, head = next(it)
    except StopIteration:
        raise StreamParseError(0, "empty stream: missing 'n <N> k <K>' header") from None
    if len(head) != 4 or head[0] != "n" or head[2] != "k":
        raise StreamParseError(lineno, "expected header 'n <N> k <K>'")
    try:
        n, k = int(head[1]), int(head[3])
    except ValueError:
        raise StreamParseError(lineno, "n and k must be integers") from None
    if n < 2 or not 1 <= k <= n - 1:
        raise StreamParseError(lineno, f"need n >= 2 and 1 <= k <= n-1, got n={n} k={k}")
    header = StreamHeader(n, k)

    def updates() -> Iterator[Update]:
        for lineno, parts in it:
            if len(parts) != 3 or parts[0] not in "+-" or len(parts[0]) != 1:
                raise StreamParseError(lineno, f"expected '+ u v' or '- u v', got {' '.join(parts)!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise StreamParseError(lineno, "vertex ids must be integers") from None
            if u == v:
                raise StreamParseError(lineno, f"self-loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise StreamParseError(lineno, f"vertex outside [1, {n}]")
            yield Update(1 if parts[0] == "+" else -1, u, v, lineno)

    return header, updates()


def ingest(lines: Iterable[str], seed: int, strict: bool = False, W: int = 32, C: float = 4.0
           ) -> tuple[ConnSketch, ExactGraph | None]:
    """Single pass over a stream into a fresh sketch (and an exact replay in strict mode)."""
    header, updates = parse_stream(lines)
    cs = ConnSketch(header.n, header.k, seed, W=W, C=C)
    exact = ExactGraph(header.n, strict=True) if strict else None
    for up in updates:
        if exact is not None:
            try:
                exact.update(up.u, up.v, up.sign)
            except ValueError as exc:
                raise StreamParseError(up.lineno, str(exc)) from None
        cs.update(up.u, up.v, up.sign)
    return cs, exact


def replay(lines: Iterable[str], strict: bool = False) -> tuple[StreamHeader, ExactGraph]:
    header, updates = parse_stream(lines)
    G = ExactGraph(header.n, strict=strict)
    for up in updates:
        try:
            G.update(up.u, up.v, up.sign)
        except ValueError as exc:
            raise StreamParseError(up.lineno, str(exc)) from None
    return header, G


def write_stream(fh: TextIO, n: int, k: int, updates: Iterable[tuple[int, int, int]]) -> None:
    fh.write(f"n {n} k {k}\n")
    for sign, u, v in updates:
        fh.write(f"{'+' if sign > 0 else '-'} {u} {v}\n")


def _edges_json(edges) -> list[list[int]]:
    return [list(e) for e in sorted(normalize(*e) for e in edges)]


def certificate_to_dict(cert: Certificate, n: int, k: int, seed: int | None = None) -> dict:
    doc = {"format": CERT_FORMAT, "version": CERT_VERSION, "kind": cert.kind, "n": n, "k": k,
           "seed": seed}
    if isinstance(cert, Positive):
        doc["edges"] = _edges_json(cert.edges)
    elif isinstance(cert, NegativeDisconnected):
        doc["vertices"] = sorted(cert.component)
        doc["edges"] = []
    else:
        doc["vertices"] = sorted(cert.side)
        doc["edges"] = _edges_json(cert.edges)
    doc["rounds"] = [{"r": s.r, "threshold": s.threshold, "cuts": s.cuts, "edges_added": s.edges_added}
                     for s in cert.rounds]
    return doc


def certificate_from_dict(doc: dict) -> tuple[Certificate, int, int]:
    if doc.get("format") != CERT_FORMAT:
        raise ValueError("not a cutcert certificate")
    if doc.get("version") != CERT_VERSION:
        raise ValueError(f"unsupported certificate version {doc.get('version')}")
    rounds = tuple(RoundStats(**r) for r in doc.get("rounds", []))
    edges = frozenset(tuple(e) for e in doc.get("edges", []))
    kind = doc.get("kind")
    if kind == Positive.kind:
        cert = Positive(edges, rounds)
    elif kind == NegativeDisconnected.kind:
        cert = NegativeDisconnected(frozenset(doc["vertices"]), rounds)
    elif kind == NegativeCut.kind:
        cert = NegativeCut(frozenset(doc["vertices"]), edges, rounds)
    else:
        raise ValueError(f"unknown certificate kind {kind!r}")
    return cert, doc["n"], doc["k"]


def dump_certificate(cert, n, k, seed=None) -> str:
    return json.dumps(certificate_to_dict(cert, n, k, seed))


def load_certificate(text: str):
    return certificate_from_dict(json.loads(text))
