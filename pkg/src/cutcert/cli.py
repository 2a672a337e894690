"""Command-line front end.

    cutcert ingest --stream F --seed S --out P [--strict]
    cutcert certify --sketch P --out C
    cutcert verify --stream F --cert C
    cutcert simulate-distributed --stream F --seed S
    cutcert stats --sketch P
    cutcert oracle-mincut --stream F

Seeds fall back to $CUTCERT_SEED, then 0.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .certify import CertifyFailed, NegativeCut, NegativeDisconnected, Positive, build_certificate
from .distributed import SimulationBug, simulate
from .formats import StreamParseError, dump_certificate, ingest, load_certificate, replay
from .graph_sketch import ConnSketch
from .oracle import exact_min_cut, validate_certificate
from .sparse_recovery import FormatError

EXIT_POSITIVE = 0
EXIT_NEGATIVE_CUT = 10
EXIT_DISCONNECTED = 11
EXIT_FAILED = 20
EXIT_INVALID = 1
EXIT_USAGE = 2


def _seed(value) -> int:
    if value is not None:
        return value
    env = os.environ.get("CUTCERT_SEED")
    return int(env) if env else 0


def cmd_ingest(args) -> int:
    with open(args.stream) as fh:
        cs, _ = ingest(fh, _seed(args.seed), strict=args.strict, W=args.W)
    blob = cs.to_bytes()
    Path(args.out).write_bytes(blob)
    print(f"n={cs.n} k={cs.k} seed={cs.seed} sketch_bytes={len(blob)} "
          f"payload_bits={cs.stats().syndrome_bits}")
    return 0


def cmd_certify(args) -> int:
    cs = ConnSketch.from_bytes(Path(args.sketch).read_bytes())
    try:
        cert = build_certificate(cs, mode=args.mode)
    except CertifyFailed as exc:
        print(f"certify failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    text = dump_certificate(cert, cs.n, cs.k, cs.seed)
    if args.out:
        Path(args.out).write_text(text + "\n")
    print(text)
    if isinstance(cert, Positive):
        return EXIT_POSITIVE
    if isinstance(cert, NegativeCut):
        return EXIT_NEGATIVE_CUT
    assert isinstance(cert, NegativeDisconnected)
    return EXIT_DISCONNECTED


def cmd_verify(args) -> int:
    with open(args.stream) as fh:
        header, G = replay(fh)
    cert, n, k = load_certificate(Path(args.cert).read_text())
    if n != header.n:
        print(f"invalid: certificate is for n={n}, stream has n={header.n}")
        return EXIT_INVALID
    if k != header.k:
        print(f"note: certificate was built for k={k}; checking against stream k={header.k}",
              file=sys.stderr)
    verdict = validate_certificate(G, header.k, cert)
    print("valid" if verdict else f"invalid: {verdict.reason}")
    return 0 if verdict else EXIT_INVALID


def cmd_simulate(args) -> int:
    seed = _seed(args.seed)
    with open(args.stream) as fh:
        cs, _ = ingest(fh, seed)
    with open(args.stream) as fh:
        header, G = replay(fh, strict=False)
    try:
        rep = simulate(header.n, header.k, seed, G.mult, reference=cs)
    except SimulationBug as exc:
        print(f"simulation bug: {exc}", file=sys.stderr)
        return EXIT_FAILED
    try:
        cert = build_certificate(rep.referee)
        kind = cert.kind
    except CertifyFailed as exc:
        kind = f"failed ({exc})"
    print(f"players={rep.n} max_message_bits={rep.max_bits} mean_message_bits={rep.mean_bits:.1f} "
          f"referee_identical={rep.identical} certificate={kind}")
    return 0


def cmd_stats(args) -> int:
    cs = ConnSketch.from_bytes(Path(args.sketch).read_bytes())
    rep = cs.stats()
    print(f"{'instance':<12} {'budget':>6} {'t':>6} {'ell':>7} {'levels':>6} {'bits':>14}")
    for name, budget, t, ell, levels, bits in rep.rows():
        print(f"{name:<12} {budget:>6} {t:>6} {ell:>7} {levels:>6} {bits:>14}")
    print(f"forest_bits={rep.forest_bits} stack_bits={rep.stack_bits} total_bits={rep.total_bits}")
    print(f"sum_t={rep.sum_t} max(k, log n log k)={rep.comparator:.2f}")
    return 0


def cmd_oracle_mincut(args) -> int:
    with open(args.stream) as fh:
        header, G = replay(fh)
    lam, side = exact_min_cut(G)
    print(f"lambda={lam} side={sorted(side)} k_connected={lam >= header.k}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cutcert", description="k-edge-connectivity certificates from graph stream sketches")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="sketch a stream file in one pass")
    p.add_argument("--stream", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--strict", action="store_true", help="reject inserts of present / deletes of absent edges")
    p.add_argument("--W", type=int, default=32, help="per-level sparsity multiplier")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("certify", help="build a certificate from a sketch file")
    p.add_argument("--sketch", required=True)
    p.add_argument("--out")
    p.add_argument("--mode", choices=["auto", "exhaustive", "contraction"], default="auto")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="check a certificate against the exact stream")
    p.add_argument("--stream", required=True)
    p.add_argument("--cert", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate-distributed", help="one message per vertex, referee reconstruction")
    p.add_argument("--stream", required=True)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("stats", help="sketch size table")
    p.add_argument("--sketch", required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("oracle-mincut", help="exact min cut of the final graph")
    p.add_argument("--stream", required=True)
    p.set_defaults(func=cmd_oracle_mincut)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (StreamParseError, FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
