"""Minimal highway cover labelling over a fixed landmark set.

Each non-landmark vertex ``v`` stores ``(i, d)`` pairs, one per landmark
``r_i`` for which no shortest ``r_i``-``v`` path passes through another
landmark.  Together with the landmark-to-landmark distance matrix (the
highway) these entries decode ``d(r, v)`` for every landmark ``r``.
"""
from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple, Sequence

from .graph import Graph, GraphError

INF = math.inf

Entry = tuple[int, int]  # (landmark index, distance)


class LandmarkLength(NamedTuple):
    """Path length plus a flag telling whether the path meets another landmark.

    Ordered lexicographically with ``True < False`` on the flag, so the
    minimum over several paths of equal length carries the flag if any of
    them passes through a landmark.
    """

    d: float
    l: bool

    def key(self) -> tuple[float, int]:
        return (self.d, 0 if self.l else 1)

    def __lt__(self, other):
        return self.key() < other.key()

    def __le__(self, other):
        return self.key() <= other.key()

    def __gt__(self, other):
        return self.key() > other.key()

    def __ge__(self, other):
        return self.key() >= other.key()


class LandmarkSet:
    def __init__(self, landmarks: Sequence[int]):
        self.landmarks = list(landmarks)
        self.rank = {r: i for i, r in enumerate(self.landmarks)}
        if len(self.rank) != len(self.landmarks):
            raise GraphError("duplicate landmark")

    def __len__(self):
        return len(self.landmarks)

    def __iter__(self):
        return iter(self.landmarks)

    def __contains__(self, v):
        return v in self.rank

    def __getitem__(self, i):
        return self.landmarks[i]

    def __eq__(self, other):
        return isinstance(other, LandmarkSet) and self.landmarks == other.landmarks

    def __repr__(self):
        return f"LandmarkSet({self.landmarks})"

    def index(self, r: int) -> int:
        try:
            return self.rank[r]
        except KeyError:
            raise GraphError(f"{r} is not a landmark") from None

    def check(self, n: int) -> None:
        for r in self.landmarks:
            if not 0 <= r < n:
                raise GraphError(f"landmark {r} out of range for n={n}")


class HighwayLabelling:
    """Highway matrix plus per-vertex label entries.

    ``labels[v]`` is a tuple of ``(landmark_index, distance)`` pairs sorted by
    landmark index.  The tuples are never mutated in place, which lets
    updated labellings share unchanged rows with their predecessor.
    """

    def __init__(self, landmarks: LandmarkSet, highway: list[list[float]], labels: list[tuple[Entry, ...]]):
        self.landmarks = landmarks
        self.highway = highway
        self.labels = labels

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def k(self) -> int:
        return len(self.landmarks)

    def __eq__(self, other):
        if not isinstance(other, HighwayLabelling):
            return NotImplemented
        return (
            self.landmarks == other.landmarks
            and self.highway == other.highway
            and self.labels == other.labels
        )

    def __repr__(self):
        return f"HighwayLabelling(n={self.n}, k={self.k}, size={self.size()})"

    def size(self) -> int:
        return sum(len(entries) for entries in self.labels)

    def padded(self, n: int) -> "HighwayLabelling":
        """Copy sized for ``n`` vertices; new vertices get empty labels."""
        labels = list(self.labels)
        labels.extend(() for _ in range(n - len(labels)))
        return HighwayLabelling(self.landmarks, [list(row) for row in self.highway], labels)

    def label(self, i: int, v: int):
        """The stored ``r_i``-label distance of ``v`` or None."""
        for j, d in self.labels[v]:
            if j == i:
                return d
        return None

    def dist(self, i: int, v: int) -> float:
        """Decoded ``d(r_i, v)`` from the labels and the highway row of ``r_i``."""
        j = self.landmarks.rank.get(v)
        row = self.highway[i]
        if j is not None:
            return row[j]
        best = INF
        for j, d in self.labels[v]:
            x = d + row[j]
            if x < best:
                best = x
        return best

    def landmark_dist(self, i: int, v: int) -> LandmarkLength:
        j = self.landmarks.rank.get(v)
        row = self.highway[i]
        if j is not None:
            if j == i:
                return LandmarkLength(0, False)
            d = row[j]
            return LandmarkLength(d, d != INF)
        best = INF
        own = False
        for j, d in self.labels[v]:
            if j == i:
                own = True
            x = d + row[j]
            if x < best:
                best = x
        return LandmarkLength(best, best != INF and not own)


def select_landmarks(g: Graph, k: int) -> LandmarkSet:
    """The ``k`` highest-degree vertices, ties broken by smaller id."""
    if k < 1:
        raise GraphError("k must be at least 1")
    if k > g.n:
        raise GraphError(f"k > n ({k} > {g.n})")
    order = sorted(range(g.n), key=lambda v: (-len(g.adj[v]), v))
    return LandmarkSet(order[:k])


def _landmark_bfs(g: Graph, r: int, landmarks: LandmarkSet):
    """BFS from ``r`` returning distances and endpoint-inclusive landmark flags.

    The flag of ``v`` is set iff some shortest ``r``-``v`` path touches a
    landmark other than ``r`` (``v`` itself included).
    """
    n = g.n
    adj = g.adj
    is_lm = landmarks.rank
    dist = [INF] * n
    flag = [False] * n
    dist[r] = 0
    frontier = [r]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for u in frontier:
            fu = flag[u]
            for w in adj[u]:
                dw = dist[w]
                if dw == INF:
                    dist[w] = depth
                    flag[w] = fu or w in is_lm
                    nxt.append(w)
                elif dw == depth and fu and not flag[w]:
                    flag[w] = True
        frontier = nxt
    return dist, flag


def _build_slot(g: Graph, landmarks: LandmarkSet, i: int):
    r = landmarks[i]
    dist, flag = _landmark_bfs(g, r, landmarks)
    row = [dist[s] for s in landmarks]
    slot = [(v, d) for v, d in enumerate(dist) if d != INF and not flag[v] and v not in landmarks.rank]
    return row, slot


def build(g: Graph, landmarks: LandmarkSet, workers: int = 1) -> HighwayLabelling:
    """Construct the minimal highway cover labelling with one BFS per landmark."""
    landmarks.check(g.n)
    k = len(landmarks)
    if workers > 1 and k > 1:
        with ThreadPoolExecutor(workers) as pool:
            slots = list(pool.map(lambda i: _build_slot(g, landmarks, i), range(k)))
    else:
        slots = [_build_slot(g, landmarks, i) for i in range(k)]
    highway = [row for row, _ in slots]
    rows: list[list[Entry]] = [[] for _ in range(g.n)]
    for i, (_, slot) in enumerate(slots):
        for v, d in slot:
            rows[v].append((i, d))
    return HighwayLabelling(landmarks, highway, [tuple(r) for r in rows])


def label_distance(lab: HighwayLabelling, r: int, v: int) -> float:
    return lab.dist(lab.landmarks.index(r), v)


def landmark_distance(lab: HighwayLabelling, r: int, v: int) -> LandmarkLength:
    return lab.landmark_dist(lab.landmarks.index(r), v)


def labelling_size(lab: HighwayLabelling) -> int:
    return lab.size()
