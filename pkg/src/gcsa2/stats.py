"""Size statistics for a built index."""

from __future__ import annotations

from typing import Sequence

from .construction import BuildResult, ConstructionConfig
from .graph import LabeledGraph


def count_kmers(labels: Sequence[Sequence[int]], succ: Sequence[Sequence[int]], sink: int, length: int) -> int:
    """Distinct length-``length`` strings of the collection, counted on the pruned graph.

    Every such string belongs to the unique node whose key is its prefix, so
    it suffices to count distinct continuations per node.  Successors with
    keys longer than the remaining length may share a truncation and are
    deduplicated; shorter keys are prefix-free and never collide.
    """
    n = len(labels)
    lens = [len(x) for x in labels]
    prev = [1] * n  # distinct strings of length 1
    for L in range(2, length + 1):
        cur = [1] * n
        for u in range(n):
            if lens[u] >= L or u == sink:
                continue
            seen = set()
            total = 0
            for v in succ[u]:
                if lens[v] > L - 1:
                    seen.add(tuple(labels[v][:L - 1]))
                else:
                    total += prev[v]
            cur[u] = total + len(seen)
        prev = cur
    return sum(prev)


def graph_bits(g: LabeledGraph) -> int:
    """Labels at 3 bits per node plus both endpoints of every edge."""
    n = g.num_real
    width = max(n - 1, 1).bit_length()
    edges = sum(len(g.succ[v]) for v in range(n))
    return 3 * n + 2 * width * edges


def build_stats(g: LabeledGraph, result: BuildResult, cfg: ConstructionConfig) -> dict:
    nodes = result.nodes
    labels = nodes.labels(result.base)
    succ: list[list[int]] = [[] for _ in range(len(nodes))]
    for v, lst in enumerate(result.in_edges):
        for _, u in lst:
            if u != 0:  # the sink's only out-edge is the non-real one
                succ[u].append(v)
    kmers = count_kmers(labels, succ, 0, cfg.order)
    idx = result.index
    index_bits = idx.size_in_bits() + idx.sample_bits()
    return {
        "order": cfg.order,
        "base_order": cfg.k,
        "doubling": cfg.doubling,
        "encoding": idx.mode,
        "input_nodes": g.num_real,
        "kmers": kmers,
        "nodes": len(idx),
        "edges": idx.num_edges,
        "sampled_nodes": idx.sampled.count(1),
        "graph_bits": graph_bits(g),
        "index_bits": index_bits,
        "lcp_bits": result.lcp.size_in_bits(),
        "count_bits": result.counts.size_in_bits(),
        "bits_per_kmer": index_bits / kmers if kmers else 0.0,
    }
