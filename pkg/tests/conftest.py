import itertools
import random

import pytest
from hypothesis import settings

# compiled kernels pay a one-off JIT cost on first call
settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def record(criterion: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def all_pairs(n):
    return list(itertools.combinations(range(1, n + 1), 2))


def complete(n, offset=0):
    return [(a + offset, b + offset) for a, b in all_pairs(n)]


def cycle(n):
    return [(i, i + 1) for i in range(1, n)] + [(1, n)]


def random_graph(n, p, rng):
    return [e for e in all_pairs(n) if rng.random() < p]


def churn_stream(edges, n, rng, extra=0.5):
    """Updates whose final graph is ``edges``: inserts, plus transient edges inserted then deleted."""
    final = set(edges)
    others = [e for e in all_pairs(n) if e not in final]
    transient = rng.sample(others, int(len(others) * extra)) if others else []
    ops = [(+1, e) for e in final] + [(+1, e) for e in transient]
    rng.shuffle(ops)
    # each transient edge gets deleted after its insertion
    out, pending = [], []
    for sign, e in ops:
        out.append((sign, e))
        if e in transient:
            pending.append(e)
        if pending and rng.random() < 0.5:
            out.append((-1, pending.pop(rng.randrange(len(pending)))))
    out.extend((-1, e) for e in pending)
    return [(s, a, b) for s, (a, b) in out]


@pytest.fixture
def rng():
    return random.Random(20261018)
