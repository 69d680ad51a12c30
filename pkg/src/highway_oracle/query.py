"""Exact distance queries: highway upper bound plus bounded bidirectional BFS."""
from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph
from .labelling import INF, HighwayLabelling


@dataclass(frozen=True)
class QueryResult:
    distance: float
    upper_bound_used: float
    searched: bool


def upper_bound(lab: HighwayLabelling, s: int, t: int) -> float:
    """Shortest ``s``-``t`` length over paths routed through the highway.

    Landmark endpoints act as a single entry ``(own index, 0)``.
    """
    hw = lab.highway
    rank = lab.landmarks.rank
    ls = ((rank[s], 0),) if s in rank else lab.labels[s]
    lt = ((rank[t], 0),) if t in rank else lab.labels[t]
    best = INF
    for i, ds in ls:
        row = hw[i]
        for j, dt in lt:
            x = ds + row[j] + dt
            if x < best:
                best = x
    return best


def sparse_bidirectional(g: Graph, s: int, t: int, bound: float, avoid, visit=None) -> float:
    """Distance between ``s`` and ``t`` in ``g`` minus ``avoid``, if below ``bound``.

    Returns ``bound`` when no shorter path exists.  Expands whichever side has
    the smaller frontier, one full level at a time.  ``visit`` is called on
    every vertex discovered (instrumentation for tests).
    """
    if s == t:
        return 0
    adj = g.adj
    seen_s = {s: 0}
    seen_t = {t: 0}
    front_s, front_t = [s], [t]
    depth_s = depth_t = 0
    best = bound
    while front_s and front_t and depth_s + depth_t + 1 < best:
        if len(front_s) <= len(front_t):
            front, mine, other = front_s, seen_s, seen_t
            depth_s += 1
            depth = depth_s
        else:
            front, mine, other = front_t, seen_t, seen_s
            depth_t += 1
            depth = depth_t
        nxt = []
        for u in front:
            for w in adj[u]:
                if w in mine or w in avoid:
                    continue
                mine[w] = depth
                if visit is not None:
                    visit(w)
                hit = other.get(w)
                if hit is not None and depth + hit < best:
                    best = depth + hit
                nxt.append(w)
        if mine is seen_s:
            front_s = nxt
        else:
            front_t = nxt
    return best


def query(lab: HighwayLabelling, g: Graph, s: int, t: int, visit=None) -> QueryResult:
    n = g.n
    if not (0 <= s < n and 0 <= t < n):
        raise IndexError(f"query ({s}, {t}) out of range for n={n}")
    if s == t:
        return QueryResult(0, 0, False)
    rank = lab.landmarks.rank
    if s in rank or t in rank:
        d = lab.dist(rank[s], t) if s in rank else lab.dist(rank[t], s)
        return QueryResult(d, d, False)
    top = upper_bound(lab, s, t)
    d = sparse_bidirectional(g, s, t, top, rank, visit)
    return QueryResult(d, top, True)
