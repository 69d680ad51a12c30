"""Brute-force reference computations for tests.

Nothing here reuses the production traversal code: distances come from a
plain queue BFS and landmark flags from an explicitly materialized
shortest-path DAG.
"""
from __future__ import annotations

import math
from collections import deque

from .graph import Graph
from .labelling import HighwayLabelling, LandmarkSet

INF = math.inf


def bfs_distances(g: Graph, s: int) -> list[float]:
    dist = [INF] * g.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] == INF:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def all_pairs(g: Graph) -> list[list[float]]:
    return [bfs_distances(g, s) for s in range(g.n)]


def shortest_path_dag(g: Graph, dist: list[float]) -> list[tuple[int, int]]:
    """Directed edges (x, y) with dist[x] + 1 == dist[y]."""
    return [
        (x, y)
        for x in range(g.n)
        for y in g.adj[x]
        if dist[x] != INF and dist[x] + 1 == dist[y]
    ]


def landmark_distances(g: Graph, landmarks, r: int) -> list[tuple[float, bool]]:
    """(distance, flag) from ``r`` for every vertex; flag counts the endpoint."""
    others = set(landmarks) - {r}
    dist = bfs_distances(g, r)
    preds: dict[int, list[int]] = {}
    for x, y in shortest_path_dag(g, dist):
        preds.setdefault(y, []).append(x)
    flag = [False] * g.n
    by_layer = sorted((d, v) for v, d in enumerate(dist) if d != INF)
    for d, v in by_layer:
        if v in others:
            flag[v] = True
        elif any(flag[u] for u in preds.get(v, ())):
            flag[v] = True
    return [(dist[v], flag[v]) for v in range(g.n)]


def minimal_labelling_bruteforce(g: Graph, landmarks: LandmarkSet) -> HighwayLabelling:
    R = list(landmarks)
    rows = [[] for _ in range(g.n)]
    highway = []
    for i, r in enumerate(R):
        table = landmark_distances(g, R, r)
        highway.append([table[s][0] for s in R])
        for v, (d, flag) in enumerate(table):
            if v not in R and d != INF and not flag:
                rows[v].append((i, d))
    return HighwayLabelling(LandmarkSet(R), highway, [tuple(row) for row in rows])


def ld_affected_bruteforce(g: Graph, g2: Graph, landmarks, r: int) -> set[int]:
    """Vertices whose (distance, landmark flag) to ``r`` differs between g and g2."""
    n = max(g.n, g2.n)
    before = _padded(g, n)
    after = _padded(g2, n)
    t1 = landmark_distances(before, landmarks, r)
    t2 = landmark_distances(after, landmarks, r)
    return {v for v in range(n) if _norm(t1[v]) != _norm(t2[v])}


def _norm(entry):
    d, flag = entry
    return (d, False) if d == INF else (d, flag)


def _padded(g: Graph, n: int) -> Graph:
    if g.n >= n:
        return g
    h = g.copy()
    h.grow(n)
    return h


def _sp_edges(g: Graph, dr: list[float], dv: list[float], target: int) -> frozenset:
    total = dr[target]
    if total == INF:
        return frozenset()
    out = set()
    for x in range(g.n):
        for y in g.adj[x]:
            if dr[x] + 1 == dr[y] and dr[y] + dv[y] == total:
                out.add((x, y))
    return frozenset(out)


def affected_bruteforce(g: Graph, g2: Graph, r: int) -> set[int]:
    """Vertices whose set of shortest paths to ``r`` changes."""
    n = max(g.n, g2.n)
    g, g2 = _padded(g, n), _padded(g2, n)
    dr1 = bfs_distances(g, r)
    dr2 = bfs_distances(g2, r)
    out = set()
    for v in range(n):
        if dr1[v] != dr2[v]:
            out.add(v)
            continue
        if dr1[v] == INF or v == r:
            continue
        e1 = _sp_edges(g, dr1, bfs_distances(g, v), v)
        e2 = _sp_edges(g2, dr2, bfs_distances(g2, v), v)
        if e1 != e2:
            out.add(v)
    return out


def anchor_pattern(g: Graph, g2: Graph, r: int, anchor: int, anchor_distance) -> dict[int, bool]:
    """For each vertex v: d_G(r, v) >= anchor_distance + d_G'(anchor, v)."""
    n = max(g.n, g2.n)
    dr = bfs_distances(_padded(g, n), r)
    da = bfs_distances(_padded(g2, n), anchor)
    return {v: da[v] != INF and dr[v] >= anchor_distance + da[v] for v in range(n)}


def anchors_bruteforce(g: Graph, batch, r: int) -> list[tuple[int, float]]:
    """(anchor, anchor distance) per non-trivial update, from BFS on g."""
    dr = bfs_distances(g, r) + [INF] * max(0, max((max(u.u, u.v) + 1 for u in batch), default=0) - g.n)
    out = []
    for up in batch:
        a, b = dr[up.u], dr[up.v]
        if a == b:
            continue
        out.append((up.v, a + 1) if a < b else (up.u, b + 1))
    return out
