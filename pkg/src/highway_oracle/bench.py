"""Desk-scale update/query benchmark."""
from __future__ import annotations

import csv
import hashlib
import random
import time
from dataclasses import asdict, dataclass

from .dynamizer import batch_update
from .graph import EdgeUpdate, Graph, apply_batch, normalize_batch
from .labelling import HighwayLabelling
from .persist import serialize
from .query import query

COLUMNS = ("variant", "workers", "batch_size", "normalized", "affected", "update_s",
           "query_ms", "label_size", "label_hash")


@dataclass
class BenchRow:
    variant: str
    workers: int
    batch_size: int
    normalized: int
    affected: int
    update_s: float
    query_ms: float
    label_size: int
    label_hash: str


def label_hash(lab: HighwayLabelling) -> str:
    return hashlib.sha256(serialize(lab)).hexdigest()[:16]


def mean_query_ms(lab: HighwayLabelling, g: Graph, pairs) -> float:
    if not pairs:
        return 0.0
    t0 = time.perf_counter()
    for s, t in pairs:
        query(lab, g, s, t)
    return (time.perf_counter() - t0) * 1000 / len(pairs)


def sample_pairs(n: int, count: int, seed: int = 0) -> list[tuple[int, int]]:
    rng = random.Random(seed)
    return [(rng.randrange(n), rng.randrange(n)) for _ in range(count)] if n else []


def run_batch(g: Graph, lab: HighwayLabelling, raw: list[EdgeUpdate], variant: str,
              workers: int = 1, backend: str = "thread"):
    """Normalize, apply and maintain one batch.  Returns (G', labelling, affected, seconds)."""
    t0 = time.perf_counter()
    b = normalize_batch(g, raw)
    g2 = apply_batch(g, b)
    counts: list[int] = []
    lab2 = batch_update(g2, b, lab, variant=variant, workers=workers, backend=backend, affected=counts)
    return g2, lab2, b, sum(counts), time.perf_counter() - t0


def run_units(g: Graph, lab: HighwayLabelling, raw: list[EdgeUpdate], variant: str):
    """Apply ``raw`` one update at a time.  Returns (G', labelling, affected, seconds)."""
    g = g.copy()
    affected = 0
    elapsed = 0.0
    for up in raw:
        t0 = time.perf_counter()
        b = normalize_batch(g, [up])
        apply_batch(g, b, inplace=True)
        counts: list[int] = []
        lab = batch_update(g, b, lab, variant=variant, affected=counts)
        elapsed += time.perf_counter() - t0
        affected += sum(counts)
    return g, lab, affected, elapsed


def sweep(g: Graph, lab: HighwayLabelling, raw: list[EdgeUpdate], sizes, workers_list,
          variants=("basic", "improved"), pairs: int = 200, units: bool = False):
    """One row per (size, variant, workers); sizes take prefixes of ``raw``."""
    rows = []
    for size in sizes:
        prefix = raw[:size]
        for variant in variants:
            for workers in workers_list:
                g2, lab2, b, affected, secs = run_batch(g, lab, prefix, variant, workers)
                rows.append(BenchRow(variant, workers, len(prefix), len(b), affected, secs,
                                     mean_query_ms(lab2, g2, sample_pairs(g2.n, pairs)),
                                     lab2.size(), label_hash(lab2)))
            if units:
                g2, lab2, affected, secs = run_units(g, lab, prefix, variant)
                rows.append(BenchRow(f"{variant}-unit", 1, len(prefix), len(prefix), affected, secs,
                                     mean_query_ms(lab2, g2, sample_pairs(g2.n, pairs)),
                                     lab2.size(), label_hash(lab2)))
    return rows


def write_csv(rows, out) -> None:
    writer = csv.DictWriter(out, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        d = asdict(row)
        d["update_s"] = f"{row.update_s:.6f}"
        d["query_ms"] = f"{row.query_ms:.4f}"
        writer.writerow(d)
