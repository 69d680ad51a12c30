"""Dynamic undirected unweighted graph with batch updates.

Vertices are dense integer ids ``0..n-1``.  Adjacency lists are kept sorted so
that every traversal visits neighbours in a deterministic order.
"""
from __future__ import annotations

import io
from bisect import bisect_left, insort
from dataclasses import dataclass
from enum import Enum
from typing import IO, Iterable, Iterator


class GraphError(ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Kind(Enum):
    INSERT = "+"
    DELETE = "-"

    def flipped(self) -> "Kind":
        return Kind.DELETE if self is Kind.INSERT else Kind.INSERT


@dataclass(frozen=True)
class EdgeUpdate:
    u: int
    v: int
    kind: Kind

    def __post_init__(self):
        if self.u == self.v:
            raise GraphError(f"self-loop update ({self.u}, {self.v})")

    @property
    def edge(self) -> tuple[int, int]:
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)

    @property
    def deleted(self) -> bool:
        return self.kind is Kind.DELETE

    @classmethod
    def insert(cls, u: int, v: int) -> "EdgeUpdate":
        return cls(u, v, Kind.INSERT)

    @classmethod
    def delete(cls, u: int, v: int) -> "EdgeUpdate":
        return cls(u, v, Kind.DELETE)


class Batch(tuple):
    """A normalized, immutable sequence of edge updates.

    Only :func:`normalize_batch` should construct these for a given graph.
    """

    @property
    def inserts(self) -> int:
        return sum(1 for up in self if up.kind is Kind.INSERT)

    @property
    def deletes(self) -> int:
        return sum(1 for up in self if up.kind is Kind.DELETE)

    def inverse(self) -> "Batch":
        return Batch(EdgeUpdate(up.u, up.v, up.kind.flipped()) for up in self)


class Graph:
    def __init__(self, n: int = 0, edges: Iterable[tuple[int, int]] = ()):
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.m = 0
        for u, v in edges:
            self.add_edge(u, v)

    @property
    def n(self) -> int:
        return len(self.adj)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adj == other.adj

    def copy(self) -> "Graph":
        g = Graph()
        g.adj = [list(nbrs) for nbrs in self.adj]
        g.m = self.m
        return g

    def grow(self, n: int) -> None:
        if n > len(self.adj):
            self.adj.extend([] for _ in range(n - len(self.adj)))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> list[int]:
        if not 0 <= v < len(self.adj):
            raise IndexError(f"vertex {v} out of range for n={self.n}")
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        if u >= len(self.adj) or v >= len(self.adj):
            return False
        nbrs = self.adj[u]
        i = bisect_left(nbrs, v)
        return i < len(nbrs) and nbrs[i] == v

    def add_edge(self, u: int, v: int) -> bool:
        """Insert ``(u, v)``; returns False for self-loops and existing edges."""
        if u == v:
            return False
        self.grow(max(u, v) + 1)
        if self.has_edge(u, v):
            return False
        insort(self.adj[u], v)
        insort(self.adj[v], u)
        self.m += 1
        return True

    def remove_edge(self, u: int, v: int) -> bool:
        if not self.has_edge(u, v):
            return False
        nu, nv = self.adj[u], self.adj[v]
        del nu[bisect_left(nu, v)]
        del nv[bisect_left(nv, u)]
        self.m -= 1
        return True

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nbrs in enumerate(self.adj):
            for v in nbrs[bisect_left(nbrs, u + 1):]:
                yield u, v

    def validate(self) -> None:
        """Check symmetry, sortedness, absence of loops/duplicates and the edge count."""
        total = 0
        for u, nbrs in enumerate(self.adj):
            for i, v in enumerate(nbrs):
                if v == u:
                    raise GraphError(f"self-loop at {u}")
                if i and nbrs[i - 1] >= v:
                    raise GraphError(f"adjacency of {u} not strictly sorted")
                if not 0 <= v < self.n or not self.has_edge(v, u):
                    raise GraphError(f"asymmetric edge ({u}, {v})")
            total += len(nbrs)
        if total != 2 * self.m:
            raise GraphError(f"edge count {self.m} != {total}/2")


def neighbors(g: Graph, v: int) -> list[int]:
    return g.neighbors(v)


class IdMap:
    """Bijection between external vertex ids and dense ids (first-appearance order)."""

    def __init__(self, external: Iterable[int] = ()):
        self.to_external: list[int] = []
        self.to_dense: dict[int, int] = {}
        for x in external:
            self.dense(x)

    def __len__(self):
        return len(self.to_external)

    def __eq__(self, other):
        return isinstance(other, IdMap) and self.to_external == other.to_external

    def dense(self, external: int) -> int:
        """Dense id for ``external``, allocating a new one if unseen."""
        d = self.to_dense.get(external)
        if d is None:
            d = len(self.to_external)
            self.to_dense[external] = d
            self.to_external.append(external)
        return d

    def lookup(self, external: int) -> int:
        try:
            return self.to_dense[external]
        except KeyError:
            raise GraphError(f"unknown vertex id {external}") from None

    def external(self, dense: int) -> int:
        return self.to_external[dense]


def _text_lines(source) -> Iterator[tuple[int, str]]:
    if isinstance(source, (bytes, bytearray)):
        source = io.StringIO(source.decode())
    elif isinstance(source, str):
        source = io.StringIO(source)
    for lineno, raw in enumerate(source, 1):
        if isinstance(raw, bytes):
            raw = raw.decode()
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"non-integer token in {' '.join(tokens)!r}", lineno) from None


def load_edge_list(source: str | bytes | IO, ids: IdMap | None = None) -> tuple[Graph, IdMap]:
    """Parse a whitespace-separated edge list, remapping ids densely.

    Self-loops and duplicate edges are dropped; both endpoints of a dropped
    self-loop still receive an id.  Passing a pre-populated ``ids`` keeps an
    earlier dense numbering (isolated vertices included).
    """
    ids = IdMap() if ids is None else ids
    g = Graph(len(ids))
    for lineno, line in _text_lines(source):
        tokens = line.split()
        if len(tokens) < 2:
            raise ParseError(f"expected two vertex ids, got {line!r}", lineno)
        a, b = _ints(tokens[:2], lineno)
        u, v = ids.dense(a), ids.dense(b)
        g.grow(len(ids))
        g.add_edge(u, v)
    return g, ids


def write_edge_list(g: Graph, ids: IdMap | None, out: IO[str]) -> None:
    ext = ids.external if ids is not None else (lambda x: x)
    for u, v in g.edges():
        out.write(f"{ext(u)} {ext(v)}\n")


def load_batch(source, ids: IdMap) -> list[EdgeUpdate]:
    """Parse ``+ u v`` / ``- u v`` lines.  Unseen external ids get new dense ids."""
    updates = []
    for lineno, line in _text_lines(source):
        tokens = line.split()
        if len(tokens) != 3 or tokens[0] not in ("+", "-"):
            raise ParseError(f"expected '+ u v' or '- u v', got {line!r}", lineno)
        a, b = _ints(tokens[1:], lineno)
        if a == b:
            continue
        updates.append(EdgeUpdate(ids.dense(a), ids.dense(b), Kind(tokens[0])))
    return updates


def write_batch(batch: Iterable[EdgeUpdate], ids: IdMap | None, out: IO[str]) -> None:
    ext = ids.external if ids is not None else (lambda x: x)
    for up in batch:
        out.write(f"{up.kind.value} {ext(up.u)} {ext(up.v)}\n")


def normalize_batch(g: Graph, raw: Iterable[EdgeUpdate]) -> Batch:
    """Drop cancelling pairs, duplicates and invalid updates.

    An edge that is both inserted and deleted within ``raw`` is removed
    entirely.  Survivors keep their first-occurrence order.
    """
    raw = list(raw)
    kinds: dict[tuple[int, int], set[Kind]] = {}
    for up in raw:
        kinds.setdefault(up.edge, set()).add(up.kind)
    out = []
    seen = set()
    for up in raw:
        e = up.edge
        if e in seen or len(kinds[e]) > 1:
            continue
        present = g.has_edge(*e)
        if present == (up.kind is Kind.INSERT):
            continue
        seen.add(e)
        out.append(up)
    return Batch(out)


def apply_batch(g: Graph, b: Batch, inplace: bool = False) -> Graph:
    """Return G' with every update of ``b`` applied (a copy unless ``inplace``)."""
    g2 = g if inplace else g.copy()
    for up in b:
        if up.kind is Kind.INSERT:
            g2.add_edge(up.u, up.v)
        else:
            g2.remove_edge(up.u, up.v)
    return g2
