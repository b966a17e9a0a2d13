"""Command-line interface: build, query, stats and verify."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from .construction import DEFAULT_PATH_CAP, ConstructionConfig, ConstructionError, build
from .container import ContainerError, IndexContainer
from .graph import GraphParseError, PathCapExceeded, encode_pattern, load_graph
from .index import DEFAULT_SAMPLE_PERIOD, MODES, SIMPLIFIED
from .stats import build_stats
from .suffixtree import find_mems
from .verify import DEFAULT_BUDGET, DEFAULT_NODE_CAP, OracleCapExceeded, locate_verified, verify_index

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_VERIFY = 4
EXIT_CAP = 5

STATS_ORDER = ("order", "base_order", "doubling", "encoding", "input_nodes", "kmers", "nodes",
               "edges", "sampled_nodes", "graph_bits", "index_bits", "lcp_bits", "count_bits",
               "bits_per_kmer")


class UsageError(ValueError):
    pass


def worker_count() -> int:
    raw = os.environ.get("GCSA2_THREADS", "")
    try:
        return max(1, int(raw)) if raw else min(4, os.cpu_count() or 1)
    except ValueError:
        raise UsageError(f"GCSA2_THREADS must be an integer, got {raw!r}") from None


def ordered_map(fn: Callable, items: Sequence) -> list:
    """Apply ``fn`` on a bounded pool; results keep the input order."""
    workers = worker_count()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def fmt_set(values) -> str:
    return "{" + ",".join(str(v) for v in sorted(values)) + "}"


def print_stats(stats: dict, as_json: bool, out) -> None:
    if as_json:
        print(json.dumps(stats, sort_keys=True), file=out)
        return
    for key in STATS_ORDER:
        if key in stats:
            val = stats[key]
            print(f"{key}\t{val:.4f}" if isinstance(val, float) else f"{key}\t{val}", file=out)


def cmd_build(args, out) -> int:
    g = load_graph(args.graph, args.format)
    cfg = ConstructionConfig(k=args.order, doubling=args.doubling, sample_period=args.sample_period,
                             path_cap=args.path_cap, mode=args.encoding, partition_dir=args.partition_dir)
    result = build(g, cfg)
    stats = build_stats(g, result, cfg)
    IndexContainer(result.index, result.lcp, result.counts, stats).save(args.output)
    print_stats(stats, args.json, out)
    return EXIT_OK


def read_patterns(args) -> list[str]:
    patterns = list(args.patterns)
    if args.patterns_file:
        with open(args.patterns_file) as fh:
            patterns.extend(line.rstrip("\r\n") for line in fh)
    for p in patterns:
        try:
            encode_pattern(p)
        except ValueError as e:
            raise UsageError(f"bad pattern {p!r}: {e}") from None
    return patterns


def cmd_query(args, out) -> int:
    container = IndexContainer.load(args.index)
    idx = container.index
    patterns = read_patterns(args)
    graph = load_graph(args.verify) if args.verify else None
    kind = args.kind
    if kind == "count" and container.counts is None:
        raise UsageError("index was saved without counting support")
    if kind == "mem" and container.lcp is None:
        raise UsageError("index was saved without LCP support")

    def answer(p: str):
        r = idx.find(p)
        rec = {"pattern": p, "sp": r[0], "ep": r[1]}
        if kind == "locate":
            if graph is not None:
                confirmed, filtered = locate_verified(idx, graph, p)
                rec["values"] = sorted(confirmed)
                rec["filtered"] = sorted(filtered)
            else:
                rec["values"] = sorted(idx.locate(r))
        elif kind == "count":
            rec["count"] = container.counts.count(r)
        elif kind == "mem":
            rec["mems"] = [{"start": m.start, "end": m.end, "sp": m.range[0], "ep": m.range[1],
                            "flags": m.flags()} for m in find_mems(idx, container.lcp, p, args.min_len)]
        return rec

    for rec in ordered_map(answer, patterns):
        if args.json:
            print(json.dumps(rec, sort_keys=True), file=out)
            continue
        head = f"{rec['pattern']}\t{rec['sp']}\t{rec['ep']}"
        if kind == "find":
            print(head, file=out)
        elif kind == "locate":
            line = f"{head}\t{fmt_set(rec['values'])}"
            if "filtered" in rec:
                line += f"\tfiltered={fmt_set(rec['filtered'])}"
            print(line, file=out)
        elif kind == "count":
            print(f"{head}\t{rec['count']}", file=out)
        else:
            print(f"{head}\t{len(rec['mems'])}", file=out)
            for m in rec["mems"]:
                print(f"{m['start']}\t{m['end']}\t{m['sp']}\t{m['ep']}\t{m['flags']}", file=out)
    return EXIT_OK


def cmd_stats(args, out) -> int:
    container = IndexContainer.load(args.index)
    stats = dict(container.stats)
    idx = container.index
    stats.setdefault("order", idx.order)
    stats.setdefault("encoding", idx.mode)
    stats.setdefault("nodes", len(idx))
    stats.setdefault("edges", idx.num_edges)
    print_stats(stats, args.json, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    container = IndexContainer.load(args.index)
    g = load_graph(args.graph, args.format)
    report = verify_index(container, g, args.budget, args.node_cap, args.seed)
    if report.ok:
        print(f"ok\t{report.checked} checks", file=out)
        return EXIT_OK
    for msg in report.failures:
        print(f"FAIL\t{msg}", file=out)
    return EXIT_VERIFY


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gcsa2", description="Path index for labeled graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build an index from a graph")
    b.add_argument("graph")
    b.add_argument("-o", "--output", required=True)
    b.add_argument("--format", choices=("tsv", "gfa"), default=None)
    b.add_argument("--order", type=int, default=4, help="base k-mer length")
    b.add_argument("--doubling", type=int, default=0, choices=range(4))
    b.add_argument("--sample-period", type=int, default=DEFAULT_SAMPLE_PERIOD)
    b.add_argument("--path-cap", type=int, default=DEFAULT_PATH_CAP)
    b.add_argument("--encoding", choices=MODES, default=SIMPLIFIED)
    b.add_argument("--partition-dir", default=None, help="stage path records in files here")
    b.add_argument("--json", action="store_true")

    q = sub.add_parser("query", help="run find/locate/count/mem queries")
    q.add_argument("kind", choices=("find", "locate", "count", "mem"))
    q.add_argument("index")
    q.add_argument("patterns", nargs="*")
    q.add_argument("--patterns-file", default=None)
    q.add_argument("--min-len", type=int, default=1)
    q.add_argument("--verify", metavar="GRAPH", default=None,
                   help="check located hits against this graph")
    q.add_argument("--json", action="store_true")

    s = sub.add_parser("stats", help="print stored size statistics")
    s.add_argument("index")
    s.add_argument("--json", action="store_true")

    v = sub.add_parser("verify", help="compare an index with brute-force answers")
    v.add_argument("index")
    v.add_argument("graph")
    v.add_argument("--format", choices=("tsv", "gfa"), default=None)
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    v.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP)
    v.add_argument("--seed", type=int, default=0)
    return parser


COMMANDS = {"build": cmd_build, "query": cmd_query, "stats": cmd_stats, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = make_parser().parse_args(argv)
    try:
        if getattr(args, "min_len", 1) < 1:
            raise UsageError("--min-len must be at least 1")
        if getattr(args, "sample_period", 1) < 1:
            raise UsageError("--sample-period must be positive")
        if getattr(args, "order", 1) < 1:
            raise UsageError("--order must be positive")
        return COMMANDS[args.command](args, out)
    except UsageError as e:
        print(f"gcsa2: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphParseError, ContainerError, UnicodeDecodeError) as e:
        print(f"gcsa2: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (PathCapExceeded, OracleCapExceeded) as e:
        print(f"gcsa2: {e}", file=sys.stderr)
        return EXIT_CAP
    except ConstructionError as e:
        print(f"gcsa2: construction failed: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except OSError as e:
        print(f"gcsa2: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
