"""Command-line front end.

Payloads go to files or stdout; statistics go to stderr.  A labelling file
``X`` is accompanied by ``X.ids`` listing the external id of every dense id.
"""
from __future__ import annotations

import argparse
import logging
import random
import sys
import time
from pathlib import Path

from . import bench, persist
from .dynamizer import batch_update
from .graph import (GraphError, IdMap, apply_batch, load_batch, load_edge_list, normalize_batch,
                    write_batch, write_edge_list)
from .labelling import INF, LandmarkSet, build, select_landmarks
from .query import query
from .synth import preferential_attachment, random_batch

log = logging.getLogger("highway_oracle")


class CliError(Exception):
    pass


def _ids_path(labels: Path) -> Path:
    return labels.with_name(labels.name + ".ids")


def _read_ids(labels: Path) -> IdMap | None:
    path = _ids_path(labels)
    if not path.exists():
        return None
    return IdMap(int(tok) for tok in path.read_text().split())


def _write_ids(labels: Path, ids: IdMap) -> None:
    _ids_path(labels).write_text("".join(f"{x}\n" for x in ids.to_external))


def _load_graph(path: Path, ids: IdMap | None = None):
    with open(path) as fh:
        return load_edge_list(fh, ids)


def _stats(**fields) -> None:
    print(" ".join(f"{k}={v}" for k, v in fields.items()), file=sys.stderr)


def _load_consistent(graph: Path, labels: Path):
    lab = persist.load(labels)
    g, ids = _load_graph(graph, _read_ids(labels))
    if g.n != lab.n:
        raise CliError(f"labelling/graph mismatch: labelling has n={lab.n}, graph has n={g.n}")
    return g, ids, lab


def cmd_build(args) -> None:
    g, ids = _load_graph(args.graph)
    if args.landmarks_file:
        ext = [int(tok) for tok in Path(args.landmarks_file).read_text().split()]
        try:
            landmarks = LandmarkSet([ids.lookup(x) for x in ext])
        except GraphError as exc:
            raise CliError(f"landmarks file: {exc}") from None
    else:
        if args.k > g.n:
            raise CliError("k > n")
        landmarks = select_landmarks(g, args.k)
    t0 = time.perf_counter()
    lab = build(g, landmarks, workers=args.workers)
    elapsed = time.perf_counter() - t0
    persist.save(lab, args.out)
    _write_ids(args.out, ids)
    _stats(n=g.n, m=g.m, landmarks=lab.k, size=lab.size(), seconds=f"{elapsed:.3f}")


def cmd_update(args) -> None:
    g, ids, lab = _load_consistent(args.graph, args.labels)
    with open(args.batch) as fh:
        raw = load_batch(fh, ids)
    t0 = time.perf_counter()
    b = normalize_batch(g, raw)
    g2 = apply_batch(g, b, inplace=True)
    counts: list[int] = []
    lab2 = batch_update(g2, b, lab, variant=args.variant, workers=args.workers, affected=counts)
    elapsed = time.perf_counter() - t0
    persist.save(lab2, args.out)
    _write_ids(args.out, ids)
    if args.out_graph:
        with open(args.out_graph, "w") as fh:
            write_edge_list(g2, ids, fh)
    for r, count in zip(lab2.landmarks, counts):
        _stats(landmark=ids.external(r), affected=count)
    _stats(variant=args.variant, updates=len(b), inserts=b.inserts, deletes=b.deletes,
           affected=sum(counts), size=lab2.size(), seconds=f"{elapsed:.3f}")


def _read_pairs(path: Path, ids: IdMap):
    pairs = []
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except (ValueError, IndexError):
            raise CliError(f"{path}:{lineno}: expected 'u v'") from None
        for x in (a, b):
            if x not in ids.to_dense:
                raise CliError(f"unknown vertex id {x}")
        pairs.append((ids.to_dense[a], ids.to_dense[b]))
    return pairs


def cmd_query(args) -> None:
    g, ids, lab = _load_consistent(args.graph, args.labels)
    pairs = _read_pairs(args.pairs, ids)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for s, t in pairs:
            d = query(lab, g, s, t).distance
            out.write(f"{-1 if d == INF else d}\n")
    finally:
        if args.out:
            out.close()


def cmd_bench(args) -> None:
    g, ids = _load_graph(args.graph)
    landmarks = select_landmarks(g, min(args.k, g.n))
    lab = build(g, landmarks)
    rows = []
    for path in args.batches:
        with open(path) as fh:
            raw = load_batch(fh, ids)
        sizes = args.sizes or [len(raw)]
        rows += bench.sweep(g, lab, raw, sizes, args.workers, variants=args.variants,
                            pairs=args.pairs, units=args.units)
    with open(args.out, "w") as fh:
        bench.write_csv(rows, fh)
    _stats(rows=len(rows), out=args.out)


def cmd_synth(args) -> None:
    rng = random.Random(args.seed)
    g = preferential_attachment(args.n, args.m, rng)
    with open(args.out, "w") as fh:
        write_edge_list(g, None, fh)
    if args.batch_out:
        with open(args.batch_out, "w") as fh:
            write_batch(random_batch(g, args.batch_size, rng), None, fh)
    _stats(n=g.n, m=g.m)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="highway-oracle", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a labelling for a graph")
    b.add_argument("--graph", type=Path, required=True)
    b.add_argument("--k", type=_positive, default=20)
    b.add_argument("--landmarks-file", type=Path)
    b.add_argument("--workers", type=_positive, default=1)
    b.add_argument("--out", type=Path, required=True)
    b.set_defaults(func=cmd_build)

    u = sub.add_parser("update", help="apply an update batch to a labelling")
    u.add_argument("--graph", type=Path, required=True)
    u.add_argument("--labels", type=Path, required=True)
    u.add_argument("--batch", type=Path, required=True)
    u.add_argument("--variant", choices=("basic", "improved"), default="improved")
    u.add_argument("--workers", type=_positive, default=1)
    u.add_argument("--out-graph", type=Path)
    u.add_argument("--out", type=Path, required=True)
    u.set_defaults(func=cmd_update)

    q = sub.add_parser("query", help="answer distance queries")
    q.add_argument("--graph", type=Path, required=True)
    q.add_argument("--labels", type=Path, required=True)
    q.add_argument("--pairs", type=Path, required=True)
    q.add_argument("--out", type=Path)
    q.set_defaults(func=cmd_query)

    be = sub.add_parser("bench", help="benchmark batch updates, CSV output")
    be.add_argument("--graph", type=Path, required=True)
    be.add_argument("--batches", type=Path, nargs="+", required=True)
    be.add_argument("--sizes", type=_positive, nargs="*")
    be.add_argument("--workers", type=_positive, nargs="*", default=[1])
    be.add_argument("--variants", nargs="*", choices=("basic", "improved"), default=["basic", "improved"])
    be.add_argument("--k", type=_positive, default=20)
    be.add_argument("--pairs", type=int, default=200)
    be.add_argument("--units", action="store_true", help="also time one-update-at-a-time processing")
    be.add_argument("--out", type=Path, required=True)
    be.set_defaults(func=cmd_bench)

    s = sub.add_parser("synth", help="write a seeded preferential-attachment graph")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--m", type=_positive, default=4)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", type=Path, required=True)
    s.add_argument("--batch-out", type=Path)
    s.add_argument("--batch-size", type=int, default=1000)
    s.set_defaults(func=cmd_synth)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        args.func(args)
    except (CliError, GraphError, persist.FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
