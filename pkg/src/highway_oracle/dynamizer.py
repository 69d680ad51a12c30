"""Batch maintenance of the minimal highway cover labelling.

For every landmark a batch search collects the vertices whose landmark
distance may have changed, and batch repair recomputes them from their
unaffected neighbours.  All searches read the pre-batch labelling; repairs
are collected as per-landmark deltas and merged once every landmark is done.

Landmark lengths are packed into ints on the hot paths::

    landmark key  = 2*d + (0 if flag else 1)
    extended key  = 2*landmark key + (0 if deleted else 1)

so that integer order equals the lexicographic order with True < False.
"""
from __future__ import annotations

import multiprocessing
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

from .buckets import BucketQueue
from .graph import Batch, Graph
from .labelling import INF, HighwayLabelling, LandmarkLength, LandmarkSet

INF_D = 1 << 40
INF_KEY = 2 * INF_D + 1

VARIANTS = ("basic", "improved")


class ExtendedLandmarkLength(NamedTuple):
    d: float
    l: bool
    e: bool

    def key(self) -> tuple[float, int, int]:
        return (self.d, 0 if self.l else 1, 0 if self.e else 1)

    def __lt__(self, other):
        return self.key() < other.key()

    def __le__(self, other):
        return self.key() <= other.key()

    def __gt__(self, other):
        return self.key() > other.key()

    def __ge__(self, other):
        return self.key() >= other.key()


@dataclass(frozen=True)
class AnchorSeed:
    anchor: int
    anchor_distance: float
    deleted: bool
    landmark_flag: bool


def oplus(ll: LandmarkLength, w: int, landmarks: LandmarkSet) -> LandmarkLength:
    """Extend a path by vertex ``w``."""
    if ll.d == INF:
        return ll
    return LandmarkLength(ll.d + 1, True if w in landmarks.rank else ll.l)


def beta(lab: HighwayLabelling, r: int, v: int) -> ExtendedLandmarkLength:
    d, l = lab.landmark_dist(lab.landmarks.index(r), v)
    return ExtendedLandmarkLength(d, l, True)


def _unpack(key: int) -> LandmarkLength:
    d = key >> 1
    if d >= INF_D:
        return LandmarkLength(INF, False)
    return LandmarkLength(d, not key & 1)


class _OldView:
    """Memoized reads of d(r_i, .) and landmark keys from the old labelling."""

    __slots__ = ("lab", "i", "rank", "_keys")

    def __init__(self, lab: HighwayLabelling, i: int):
        self.lab = lab
        self.i = i
        self.rank = lab.landmarks.rank
        self._keys: dict[int, int] = {}

    def key(self, v: int) -> int:
        k = self._keys.get(v)
        if k is None:
            if v >= self.lab.n:
                k = INF_KEY
            else:
                d, l = self.lab.landmark_dist(self.i, v)
                k = INF_KEY if d == INF else 2 * d + (0 if l else 1)
            self._keys[v] = k
        return k

    def dist(self, v: int):
        k = self.key(v)
        return INF if k == INF_KEY else k >> 1


def anchor_seeds(lab: HighwayLabelling, b: Batch, r: int) -> list[AnchorSeed]:
    """One seed per update whose endpoints lie at different distances from ``r``."""
    view = _OldView(lab, lab.landmarks.index(r))
    return _seeds(view, b)


def _seeds(view: _OldView, b: Batch) -> list[AnchorSeed]:
    rank = view.rank
    out = []
    for up in b:
        da, db = view.dist(up.u), view.dist(up.v)
        if da == db:
            continue
        pre, anchor = (up.u, up.v) if da < db else (up.v, up.u)
        pk = view.key(pre)
        flag = anchor in rank or not pk & 1
        out.append(AnchorSeed(anchor, (pk >> 1) + 1, up.deleted, flag))
    return out


def _search_basic(g2: Graph, b: Batch, view: _OldView) -> set[int]:
    adj = g2.adj
    dist = view.dist
    q = BucketQueue()
    for s in _seeds(view, b):
        q.push(s.anchor_distance, s.anchor)
    aff: set[int] = set()
    while q:
        d, items = q.pop_bucket()
        nd = d + 1
        for v in sorted(set(items)):
            if v in aff:
                continue
            aff.add(v)
            for w in adj[v]:
                if nd <= dist(w):
                    q.push(nd, w)
    return aff


def _search_improved(g2: Graph, b: Batch, view: _OldView) -> set[int]:
    adj = g2.adj
    key = view.key
    rank = view.rank
    q = BucketQueue()
    for s in _seeds(view, b):
        ext = 4 * s.anchor_distance + (0 if s.landmark_flag else 2) + (0 if s.deleted else 1)
        if ext <= 2 * key(s.anchor):
            q.push(s.anchor_distance, (ext, s.anchor))
    aff: set[int] = set()
    while q:
        d, items = q.pop_bucket()
        nd = d + 1
        items.sort()
        for ext, v in items:
            if v in aff:
                continue
            aff.add(v)
            lbit = ext & 2
            ebit = ext & 1
            for w in adj[v]:
                ext_w = 4 * nd + (0 if w in rank else lbit) + ebit
                if ext_w <= 2 * key(w):
                    q.push(nd, (ext_w, w))
    return aff


def _search(g2: Graph, b: Batch, view: _OldView, variant: str) -> set[int]:
    if variant == "improved":
        return _search_improved(g2, b, view)
    if variant == "basic":
        return _search_basic(g2, b, view)
    raise ValueError(f"unknown search variant {variant!r}")


def batch_search_basic(g2: Graph, b: Batch, r: int, lab: HighwayLabelling) -> set[int]:
    """Every vertex reachable by a composite path no longer than its old distance."""
    return _search_basic(g2, b, _OldView(lab, lab.landmarks.index(r)))


def batch_search_improved(g2: Graph, b: Batch, r: int, lab: HighwayLabelling) -> set[int]:
    """Superset of the vertices whose landmark distance to ``r`` changes."""
    return _search_improved(g2, b, _OldView(lab, lab.landmarks.index(r)))


@dataclass
class RepairDelta:
    """Changes produced by repairing one landmark.

    ``labels`` maps a vertex to its new label distance, or None for removal;
    ``highway`` maps a landmark index to the new highway distance.
    """

    index: int
    labels: dict[int, object] = field(default_factory=dict)
    highway: dict[int, float] = field(default_factory=dict)


@dataclass
class RepairLog:
    initial: dict[int, LandmarkLength] = field(default_factory=dict)
    settled: list[tuple[int, LandmarkLength]] = field(default_factory=list)


def _repair(g2: Graph, aff: set[int], view: _OldView, delta: RepairDelta, log: RepairLog | None = None) -> None:
    adj = g2.adj
    rank = view.rank
    key = view.key
    bound: dict[int, int] = {}
    q = BucketQueue()
    for v in sorted(aff):
        best = INF_KEY
        v_lm = v in rank
        for w in adj[v]:
            if w in aff:
                continue
            k = key(w)
            if k == INF_KEY:
                continue
            cand = (k & ~1) + 2 + (0 if v_lm else k & 1)
            if cand < best:
                best = cand
        bound[v] = best
        if best != INF_KEY:
            q.push(best >> 1, v)
        if log is not None:
            log.initial[v] = _unpack(best)

    remaining = set(aff)

    def settle(v: int, k: int) -> None:
        d = INF if k == INF_KEY else k >> 1
        if log is not None:
            log.settled.append((v, _unpack(k)))
        j = rank.get(v)
        if j is not None:
            delta.highway[j] = d
        elif d == INF or not k & 1:
            delta.labels[v] = None
        else:
            delta.labels[v] = d

    while q:
        d, items = q.pop_bucket()
        vmin = sorted({v for v in items if v in remaining and bound[v] >> 1 == d})
        remaining.difference_update(vmin)
        for v in vmin:
            kv = bound[v]
            settle(v, kv)
            for w in adj[v]:
                if w not in remaining:
                    continue
                cand = (kv & ~1) + 2 + (0 if w in rank else kv & 1)
                if cand < bound[w]:
                    bound[w] = cand
                    q.push(d + 1, w)
    for v in sorted(remaining):
        settle(v, INF_KEY)


def batch_repair(g2: Graph, aff: set[int], r: int, lab_old: HighwayLabelling,
                 delta: RepairDelta | None = None, log: RepairLog | None = None) -> RepairDelta:
    """Recompute the ``r``-labels (and highway entries) of the vertices in ``aff``.

    Reads pre-batch distances from ``lab_old``; writes go to ``delta``.
    """
    i = lab_old.landmarks.index(r)
    if delta is None:
        delta = RepairDelta(i)
    if aff:
        _repair(g2, set(aff), _OldView(_fit(lab_old, g2.n), i), delta, log)
    return delta


def _fit(lab: HighwayLabelling, n: int) -> HighwayLabelling:
    return lab if lab.n >= n else lab.padded(n)


def _landmark_task(g2: Graph, b: Batch, lab: HighwayLabelling, i: int, variant: str):
    view = _OldView(lab, i)
    aff = _search(g2, b, view, variant)
    delta = RepairDelta(i)
    if aff:
        _repair(g2, aff, view, delta)
    return delta, len(aff)


def apply_deltas(lab: HighwayLabelling, deltas) -> HighwayLabelling:
    """Merge per-landmark deltas into a copy of ``lab`` (shares unchanged rows)."""
    out = lab.padded(lab.n)
    labels = out.labels
    hw = out.highway
    for delta in deltas:
        i = delta.index
        for v, d in delta.labels.items():
            entries = labels[v]
            kept = [e for e in entries if e[0] != i]
            if d is not None:
                kept.append((i, d))
                kept.sort()
            kept = tuple(kept)
            if kept != entries:
                labels[v] = kept
        for j, d in delta.highway.items():
            hw[i][j] = d
            hw[j][i] = d
    return out


_SHARED = None


def _shared_task(i: int):
    g2, b, lab, variant = _SHARED
    return _landmark_task(g2, b, lab, i, variant)


def batch_update(g2: Graph, b: Batch, lab: HighwayLabelling, variant: str = "improved",
                 workers: int = 1, backend: str = "thread", affected: list | None = None) -> HighwayLabelling:
    """Labelling of ``g2`` from the labelling ``lab`` of the pre-batch graph.

    ``g2`` must already have ``b`` applied.  With ``workers > 1`` landmarks
    are processed concurrently; the result is identical to the sequential
    run because deltas are merged in landmark order.  Per-landmark affected
    counts are appended to ``affected`` when given.
    """
    global _SHARED
    if variant not in VARIANTS:
        raise ValueError(f"unknown search variant {variant!r}")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    if g2.n < lab.n:
        raise ValueError(f"graph has {g2.n} vertices, labelling has {lab.n}")
    old = _fit(lab, g2.n)
    k = old.k
    if not b:
        results = [(RepairDelta(i), 0) for i in range(k)]
    elif workers == 1 or k == 1:
        results = [_landmark_task(g2, b, old, i, variant) for i in range(k)]
    elif backend == "thread":
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda i: _landmark_task(g2, b, old, i, variant), range(k)))
    elif backend == "process":
        _SHARED = (g2, b, old, variant)
        try:
            ctx = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(workers, mp_context=ctx) as pool:
                results = list(pool.map(_shared_task, range(k)))
        finally:
            _SHARED = None
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if affected is not None:
        affected.extend(count for _, count in results)
    return apply_deltas(old, [delta for delta, _ in results])


def batch_update_parallel(g2: Graph, b: Batch, lab: HighwayLabelling, workers: int,
                          variant: str = "improved", backend: str = "thread") -> HighwayLabelling:
    return batch_update(g2, b, lab, variant=variant, workers=workers, backend=backend)
