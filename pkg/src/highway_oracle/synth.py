"""Seeded random graphs and update batches for tests and benchmarks."""
from __future__ import annotations

import random

from .graph import EdgeUpdate, Graph, Kind


def erdos_renyi(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def preferential_attachment(n: int, m: int, rng: random.Random) -> Graph:
    """Barabási-Albert style growth: each new vertex attaches to ``m`` targets."""
    g = Graph(n)
    ends: list[int] = []
    start = min(n, m + 1)
    for u in range(start):
        for v in range(u + 1, start):
            g.add_edge(u, v)
            ends += (u, v)
    for u in range(start, n):
        targets = set()
        while len(targets) < min(m, u):
            targets.add(rng.choice(ends) if ends else rng.randrange(u))
        for v in sorted(targets):
            g.add_edge(u, v)
            ends += (u, v)
    return g


def random_batch(g: Graph, size: int, rng: random.Random, insert_ratio: float = 0.5,
                 new_vertex_rate: float = 0.0) -> list[EdgeUpdate]:
    """Mixed raw updates: deletions of existing edges and insertions of absent ones.

    The result is not normalized; with small graphs it may contain
    duplicates or cancelling pairs on purpose.
    """
    edges = list(g.edges())
    out = []
    for _ in range(size):
        if edges and rng.random() >= insert_ratio:
            u, v = rng.choice(edges)
            out.append(EdgeUpdate(u, v, Kind.DELETE))
            continue
        hi = g.n + (1 if rng.random() < new_vertex_rate else 0)
        if hi < 2:
            continue
        u, v = rng.sample(range(hi), 2)
        out.append(EdgeUpdate(u, v, Kind.INSERT))
    return out
