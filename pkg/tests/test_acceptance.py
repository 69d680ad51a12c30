"""Acceptance suite.  Each test carries a ``criterion`` marker; the conftest
summary prints one PASS/FAIL line per criterion at the end of the run."""
import random
import sys
import time

import pytest

from highway_oracle import oracle
from highway_oracle.bench import run_batch, run_units
from highway_oracle.dynamizer import (RepairLog, anchor_seeds, batch_repair, batch_search_basic,
                                      batch_search_improved, batch_update, batch_update_parallel)
from highway_oracle.graph import apply_batch, normalize_batch
from highway_oracle.labelling import INF, build, label_distance, select_landmarks
from highway_oracle.persist import (BadMagic, ChecksumMismatch, Truncated, deserialize, fnv1a64,
                                    serialize)
from highway_oracle.query import query
from highway_oracle.synth import preferential_attachment, random_batch

from conftest import random_instance
from test_dynamizer import MIXED_FINAL
from test_labelling import MIXED_L, named_labels
from test_oracle import CHAIN_PATTERN

PROPERTY_SEEDS = range(2000)
QUERY_SEEDS = range(2000)


def report(msg: str) -> None:
    print(msg, file=sys.stderr)


@pytest.mark.criterion(1)
def test_golden_two_landmark_batch(mixed):
    lab = build(mixed.g, mixed.R)
    assert named_labels(mixed, lab) == MIXED_L
    assert lab.highway == [[0, 2], [2, 0]]
    r1, r2 = mixed["r1"], mixed["r2"]
    assert mixed.named(batch_search_basic(mixed.g2, mixed.batch, r1, lab)) == set("r2 d e f g h i".split())
    assert mixed.named(batch_search_improved(mixed.g2, mixed.batch, r1, lab)) == set("efgh")
    assert mixed.named(batch_search_improved(mixed.g2, mixed.batch, r2, lab)) == set("ae")

    log = RepairLog()
    batch_repair(mixed.g2, batch_search_improved(mixed.g2, mixed.batch, r1, lab), r1, lab, log=log)
    assert {mixed.names[v]: ll for v, ll in log.initial.items()} == {
        "e": (2, False), "f": (INF, False), "g": (3, True), "h": (5, True)}
    for variant in ("basic", "improved"):
        lab2 = batch_update(mixed.g2, mixed.batch, lab, variant=variant)
        assert named_labels(mixed, lab2) == MIXED_FINAL
        assert lab2.highway == [[0, 2], [2, 0]]


@pytest.mark.criterion(2)
def test_golden_anchor_chain(chain):
    r = chain["r"]
    lab = build(chain.g, chain.R)
    anchors = dict(oracle.anchors_bruteforce(chain.g, chain.batch, r))
    assert {chain.names[a] for a in anchors} == {"b", "c", "e"}
    assert {chain.names[s.anchor] for s in anchor_seeds(lab, chain.batch, r)} == {"b", "c", "e"}
    cols = [chain[x] for x in "abcdefg"]
    for name, row in CHAIN_PATTERN.items():
        a = chain[name]
        pattern = oracle.anchor_pattern(chain.g, chain.g2, r, a, anchors[a])
        assert [pattern[v] for v in cols] == row, name
    assert chain.named(batch_search_basic(chain.g2, chain.batch, r, lab)) == set("bcdefg")


@pytest.mark.criterion(3)
def test_rebuild_equivalence():
    t0 = time.perf_counter()
    for seed in PROPERTY_SEEDS:
        inst = random_instance(seed)
        lab = build(inst.g, inst.R)
        ref = build(inst.g2, inst.R)
        seq = None
        for variant in ("basic", "improved"):
            out = batch_update(inst.g2, inst.batch, lab, variant=variant)
            assert out == ref, (seed, variant)
            seq = out
        blob = serialize(seq)
        for workers in (2, 4):
            assert serialize(batch_update_parallel(inst.g2, inst.batch, lab, workers)) == blob, (seed, workers)
    elapsed = time.perf_counter() - t0
    report(f"rebuild equivalence: {len(PROPERTY_SEEDS)} instances in {elapsed:.1f}s")
    assert elapsed < 60


@pytest.mark.criterion(4)
def test_query_exactness():
    pairs = 0
    for seed in QUERY_SEEDS:
        inst = random_instance(seed)
        for g in (inst.g, inst.g2):
            lab = build(g, inst.R)
            truth = oracle.all_pairs(g)
            for s in range(g.n):
                row = truth[s]
                for t in range(g.n):
                    assert query(lab, g, s, t).distance == row[t], (seed, s, t)
            pairs += g.n * g.n
    report(f"query exactness: {pairs} pairs")


@pytest.mark.criterion(5)
def test_affected_sandwich():
    for seed in PROPERTY_SEEDS:
        inst = random_instance(seed)
        lab = build(inst.g, inst.R)
        for r in inst.R:
            basic = batch_search_basic(inst.g2, inst.batch, r, lab)
            improved = batch_search_improved(inst.g2, inst.batch, r, lab)
            assert oracle.affected_bruteforce(inst.g, inst.g2, r) <= basic, seed
            assert oracle.ld_affected_bruteforce(inst.g, inst.g2, inst.R, r) <= improved <= basic, seed


@pytest.mark.criterion(6)
def test_reversibility():
    for seed in PROPERTY_SEEDS:
        inst = random_instance(seed)
        lab = build(inst.g, inst.R)
        lab2 = batch_update(inst.g2, inst.batch, lab)
        inv = normalize_batch(inst.g2, inst.batch.inverse())
        g3 = apply_batch(inst.g2, inv)
        # inserts on fresh vertices leave them isolated, so the vertex count only grows
        assert batch_update(g3, inv, lab2) == lab.padded(g3.n), seed


@pytest.mark.criterion(7)
def test_desk_scale_benchmark():
    rng = random.Random(2024)
    g = preferential_attachment(25_000, 4, rng)
    raw = random_batch(g, 1000, rng)
    assert g.m >= 95_000
    lab = build(g, select_landmarks(g, 20))
    results = {}
    for variant in ("basic", "improved"):
        g2, lab2, b, affected, secs = run_batch(g, lab, raw, variant)
        results[variant] = (lab2, affected, secs)
    _, _, unit_affected, unit_secs = run_units(g, lab, raw, "improved")
    (lab_b, aff_b, secs_b), (lab_i, aff_i, secs_i) = results["basic"], results["improved"]
    report(f"desk-scale: n={g.n} m={g.m} k=20 batch={len(b)} "
           f"basic affected={aff_b} {secs_b:.2f}s; improved affected={aff_i} {secs_i:.2f}s; "
           f"1000 unit batches affected={unit_affected} {unit_secs:.2f}s")
    assert lab_b == lab_i
    assert aff_i <= aff_b
    assert secs_i < unit_secs


@pytest.mark.criterion(8)
def test_serialization_round_trip():
    for seed in range(300):
        inst = random_instance(seed)
        lab = build(inst.g, inst.R)
        data = serialize(lab)
        assert int.from_bytes(data[-8:], "little") == fnv1a64(data[:-8])
        back = deserialize(data)
        for r in inst.R:
            for v in range(lab.n):
                assert label_distance(back, r, v) == label_distance(lab, r, v)
        with pytest.raises(BadMagic) as err:
            deserialize(b"HBL1" + data[4:])
        assert err.value.code == "bad_magic"
        with pytest.raises(Truncated) as err:
            deserialize(data[: len(data) // 2 // 4 * 4])
        assert err.value.code == "truncated"
        k = len(inst.R)
        offset = 12 + 4 * k + 4 * k * k
        targets = [12, 12 + 4 * k, len(data) - 1]  # landmark id, highway entry, checksum
        for entries in lab.labels:
            if entries:
                targets.append(offset + 8)  # distance of the first entry
                break
            offset += 4
        for pos in targets:
            flipped = bytearray(data)
            flipped[pos] ^= 0x40
            with pytest.raises(ChecksumMismatch) as err:
                deserialize(bytes(flipped))
            assert err.value.code == "checksum"
