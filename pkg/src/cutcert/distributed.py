"""Simultaneous-message simulation: every vertex is a player holding its incident edges.

Players share the public parameters (n, k, master seed), hence identical hash
functions. Each sends its own rows sk^(r)(v) of every SupportFind instance; the
referee adds them into a zero sketch. Because the sketch is linear and player
v only ever touches row v, the result equals the centrally ingested sketch.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass
from statistics import mean
from typing import Iterable

import numpy as np

from . import _kernels
from .graph_sketch import ConnSketch, Edge, edge_index, normalize, size_report

_MAGIC = b"CCPM"
_VERSION = 1
_HEAD = struct.Struct("<4sB3xQ")


class SimulationBug(AssertionError):
    pass


@dataclass(frozen=True)
class PlayerMessage:
    vertex: int
    payload: bytes

    @property
    def bit_length(self) -> int:
        return 8 * len(self.payload)


def player_message(n: int, k: int, seed: int, v: int, incident: Iterable[tuple[Edge, int]],
                   W: int = 32, C: float = 4.0) -> PlayerMessage:
    """Message of player ``v`` from its incident edges with multiplicities."""
    local = ConnSketch(n, k, seed, W=W, C=C)
    for (a, b), mult in incident:
        a, b = normalize(a, b)
        coord = edge_index(n, a, b)
        for inst in local.instances:
            inst.update(v, coord, mult if v == a else -mult)
    rows = local.vertex_rows(v)
    body = b"".join(r.astype("<u8").tobytes() for r in rows)
    return PlayerMessage(v, _HEAD.pack(_MAGIC, _VERSION, v) + body)


def referee_reconstruct(n: int, k: int, seed: int, messages: Iterable[PlayerMessage],
                        W: int = 32, C: float = 4.0) -> ConnSketch:
    cs = ConnSketch(n, k, seed, W=W, C=C)
    insts = cs.instances
    sizes = [inst.data[0].size for inst in insts]
    for msg in messages:
        magic, version, v = _HEAD.unpack_from(msg.payload)
        if magic != _MAGIC or version != _VERSION:
            raise ValueError("not a player message")
        body = np.frombuffer(msg.payload, dtype="<u8", offset=_HEAD.size)
        if body.size != sum(sizes):
            raise ValueError(f"message from player {v} has the wrong length")
        off = 0
        for inst, size in zip(insts, sizes):
            row = inst.data[v - 1]
            _kernels.add_inplace(row, body[off:off + size].astype(np.uint64).reshape(row.shape))
            off += size
    return cs


@dataclass(frozen=True)
class SimulationReport:
    n: int
    k: int
    max_bits: int
    mean_bits: float
    identical: bool
    referee: ConnSketch


def simulate(n: int, k: int, seed: int, final_edges: dict[Edge, int],
             reference: ConnSketch | None = None, W: int = 32, C: float = 4.0) -> SimulationReport:
    """Run all players and the referee; compare against ``reference`` when given."""
    incident: dict[int, list] = {v: [] for v in range(1, n + 1)}
    for e, mult in final_edges.items():
        if mult:
            a, b = normalize(*e)
            incident[a].append(((a, b), mult))
            incident[b].append(((a, b), mult))
    msgs = [player_message(n, k, seed, v, incident[v], W=W, C=C) for v in range(1, n + 1)]
    referee = referee_reconstruct(n, k, seed, msgs, W=W, C=C)
    identical = True
    if reference is not None:
        identical = referee.to_bytes() == reference.to_bytes()
        if not identical:
            raise SimulationBug("referee reconstruction differs from direct ingest")
    bits = [m.bit_length for m in msgs]
    return SimulationReport(n, k, max(bits), mean(bits), identical, referee)


def message_bits(n: int, k: int, W: int = 32, C: float = 4.0) -> int:
    """Length of one player message, computed from parameters alone."""
    rep = size_report(n, k, W=W, C=C)
    return 8 * _HEAD.size + sum(s.syndrome_bits for s in rep.forest + rep.stacks) // n
