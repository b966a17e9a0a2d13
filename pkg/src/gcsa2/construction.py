"""Prefix-doubling construction of a maximally pruned path graph and its index.

Paths are represented by sequences of base k-mer ranks, so labels are never
materialized while sorting, pruning and joining.  A label whose length is not
a multiple of ``k`` ends in a partial block stored as the rank range of all
base k-mers sharing that prefix (``lo`` in the key, ``hi`` separately).
"""

from __future__ import annotations

import heapq
import os
import struct
from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

from .graph import (ENDMARKER, SIGMA, LabeledGraph, PathCapExceeded, ValueCodec, augment,
                    decode, iter_paths, weak_components)
from .index import DEFAULT_SAMPLE_PERIOD, GENERAL, SIMPLIFIED, EncodedIndex, assemble, choose_samples
from .suffixtree import CountSupport, LcpSupport

NONE = -1
DEFAULT_PATH_CAP = 10_000_000
RECORD_MAGIC = b"GCSA2PR1"
RECORD_VERSION = 1


class ConstructionError(RuntimeError):
    pass


@dataclass
class ConstructionConfig:
    k: int = 4
    doubling: int = 0
    sample_period: int = DEFAULT_SAMPLE_PERIOD
    path_cap: int | None = DEFAULT_PATH_CAP
    mode: str = SIMPLIFIED
    partition_dir: str | None = None

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("base order must be positive")
        if not 0 <= self.doubling <= 3:
            raise ValueError("doubling steps must be in 0..3")

    @property
    def order(self) -> int:
        return self.k << self.doubling


class PathRecord(NamedTuple):
    """A path prefix: rank blocks, label length, upper rank of the last block."""

    key: tuple[int, ...]
    length: int
    hi: int
    value: int
    pred: int
    ext: int


class BaseKmerIndex:
    """Sorted base k-mers with their de Bruijn index and LCP support."""

    def __init__(self, k: int, kmers: list[tuple[int, ...]], preds: list[int]) -> None:
        self.k = k
        self.kmers = kmers
        self.rank_of = {km: i for i, km in enumerate(kmers)}
        self.lcp = LcpSupport([0] + [_common(kmers[i - 1], kmers[i]) for i in range(1, len(kmers))])
        self.last = [km[-1] for km in kmers]
        self.first = [km[0] for km in kmers]
        self.index = self._build_index(preds)

    def __len__(self) -> int:
        return len(self.kmers)

    def _build_index(self, preds: list[int]) -> EncodedIndex:
        n = len(self.kmers)
        in_edges: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        out_deg = [0] * n
        end = self.rank_of[(ENDMARKER,) * self.k]
        for v, km in enumerate(self.kmers):
            for c in range(SIGMA):
                if not preds[v] >> c & 1:
                    continue
                u = end if c == ENDMARKER else self.rank_of.get((c,) + km[:-1])
                if u is None:
                    raise ConstructionError(f"missing base k-mer {decode((c,) + km[:-1])}")
                in_edges[v].append((c, u))
                out_deg[u] += 1
        if min(out_deg, default=1) < 1:
            raise ConstructionError("base k-mer without successor")
        return assemble(self.k, in_edges, out_deg, [()] * n, [False] * n, GENERAL)

    def lf(self, r: tuple[int, int], c: int) -> tuple[int, int]:
        if c == ENDMARKER:
            # only $^k follows a $-terminated block
            return (0, 0) if r[0] == 0 and r[1] >= 0 else (0, -1)
        return self.index.lf_range(r, c)

    def block_lcp(self, x: int, y: int) -> int:
        if x == y:
            return self.k
        if x > y:
            x, y = y, x
        return self.lcp.range_min(x + 1, y)

    def prefix_range(self, x: int, hi: int, r: int) -> tuple[int, int]:
        """Ranks of the k-mers sharing the first ``r`` symbols with ranks ``x..hi``."""
        if r == 0:
            return 0, len(self.kmers) - 1
        return max(self.lcp.prev_less(x, r), 0), self.lcp.next_less(hi + 1, r) - 1


def _common(a: Sequence[int], b: Sequence[int]) -> int:
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return i


def build_base(g: LabeledGraph, k: int, order: int | None = None,
               cap: int | None = DEFAULT_PATH_CAP) -> tuple[list[PathRecord], BaseKmerIndex, ValueCodec]:
    """Records for every length-``k`` path (one per extension) and the base index."""
    codec = ValueCodec(augment(g), order or k)
    paths = list(iter_paths(codec, k, cap))
    kmer_preds: dict[tuple[int, ...], int] = defaultdict(int)
    for lab, start, _ in paths:
        kmer_preds[lab] |= codec.preds[start]
    kmers = sorted(kmer_preds)
    base = BaseKmerIndex(k, kmers, [kmer_preds[km] for km in kmers])
    records = []
    for lab, start, last in paths:
        r = base.rank_of[lab]
        p = codec.preds[start]
        for w in codec.succ[last]:
            records.append(PathRecord((r,), k, r, start, p, w))
            if cap is not None and len(records) > cap:
                raise PathCapExceeded(f"more than {cap} path records")
    records = sorted(set(records))
    return records, base, codec


def record_lcp(a: PathRecord, b: PathRecord, base: BaseKmerIndex) -> int:
    ka, kb = a.key, b.key
    m = min(len(ka), len(kb))
    j = 0
    while j < m and ka[j] == kb[j]:
        j += 1
    common = j * base.k if j == m else j * base.k + base.block_lcp(ka[j], kb[j])
    return min(common, a.length, b.length)


def adjacent_lcps(records: Sequence[PathRecord], base: BaseKmerIndex) -> list[int]:
    """``out[i]`` is the LCP of records ``i-1`` and ``i``; both ends are 0."""
    n = len(records)
    out = [0] * (n + 1)
    for i in range(1, n):
        out[i] = record_lcp(records[i - 1], records[i], base)
    return out


def distinguishing_lengths(lcps: Sequence[int], groups: Sequence) -> list[int]:
    """Shortest prefix length isolating each item within its run of equal ``groups``."""
    n = len(groups)
    out = [0] * n
    a = 0
    while a < n:
        b = a
        while b + 1 < n and groups[b + 1] == groups[a]:
            b += 1
        m = lcps[a]
        left = []
        for i in range(a, b + 1):
            if i > a:
                m = min(m, lcps[i])
            left.append(m)
        m = lcps[b + 1]
        for i in range(b, a - 1, -1):
            out[i] = 1 + max(left[i - a], m)
            m = min(m, lcps[i])
        a = b + 1
    return out


def truncate(rec: PathRecord, length: int, base: BaseKmerIndex) -> tuple[tuple[int, ...], int]:
    """Key and upper rank of the first ``length`` symbols of ``rec``."""
    k = base.k
    m, r = divmod(length, k)
    if r == 0:
        return rec.key[:m], rec.key[m - 1]
    x = rec.key[m]
    hi = rec.hi if m == len(rec.key) - 1 else x
    lo, hi = base.prefix_range(x, hi, r)
    return rec.key[:m] + (lo,), hi


def prune_step(records: Sequence[PathRecord], base: BaseKmerIndex) -> list[PathRecord]:
    """Shorten every record whose prefix already identifies a single start node."""
    lcps = adjacent_lcps(records, base)
    lens = distinguishing_lengths(lcps, [r.value for r in records])
    out: list[PathRecord] = []
    for rec, ell in zip(records, lens):
        if ell <= rec.length:
            key, hi = truncate(rec, ell, base)
            rec = PathRecord(key, ell, hi, rec.value, rec.pred, NONE)
            if out and out[-1][:4] == rec[:4]:
                prev = out.pop()
                rec = rec._replace(pred=rec.pred | prev.pred)
        out.append(rec)
    return sorted(set(out))


def extension_step(records: Sequence[PathRecord]) -> list[PathRecord]:
    """Join every unfinished record with the records starting at its extension node."""
    by_value: dict[int, list[PathRecord]] = defaultdict(list)
    for rec in records:
        by_value[rec.value].append(rec)
    out = set()
    for rec in records:
        if rec.ext == NONE:
            out.add(rec)
            continue
        nxt = by_value.get(rec.ext)
        if not nxt:
            raise ConstructionError(f"dangling extension {rec.ext}")
        for other in nxt:
            out.add(PathRecord(rec.key + other.key, rec.length + other.length, other.hi,
                               rec.value, rec.pred, other.ext))
    return sorted(out)


@dataclass
class NodeTable:
    """Key-sorted nodes of a maximally pruned path graph in rank form."""

    order: int
    keys: list[tuple[int, ...]]
    lengths: list[int]
    his: list[int]
    values: list[frozenset[int]]
    preds: list[int]
    lcps: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.keys)

    def label(self, i: int, base: BaseKmerIndex) -> tuple[int, ...]:
        out: list[int] = []
        for r in self.keys[i]:
            out.extend(base.kmers[r])
        return tuple(out[:self.lengths[i]])

    def labels(self, base: BaseKmerIndex) -> list[tuple[int, ...]]:
        return [self.label(i, base) for i in range(len(self))]

    def source(self) -> int:
        for i, vals in enumerate(self.values):
            if 0 in vals:
                return i
        raise ConstructionError("no node holds the source value")


def merging_step(records: Sequence[PathRecord], base: BaseKmerIndex, order: int) -> NodeTable:
    """Merge equal keys, then shorten runs of nodes with equal value sets."""
    merged: list[list] = []
    for rec in records:
        if merged and merged[-1][0] == rec.key and merged[-1][1] == rec.length:
            merged[-1][3].add(rec.value)
            merged[-1][4] |= rec.pred
        else:
            merged.append([rec.key, rec.length, rec.hi, {rec.value}, rec.pred])
    nodes = [PathRecord(m[0], m[1], m[2], 0, m[4], NONE) for m in merged]
    sets = [frozenset(m[3]) for m in merged]
    lcps = adjacent_lcps(nodes, base)
    lens = distinguishing_lengths(lcps, sets)
    out_nodes: list[PathRecord] = []
    out_sets: list[frozenset[int]] = []
    for node, vals, ell in zip(nodes, sets, lens):
        if ell < node.length:
            key, hi = truncate(node, ell, base)
            node = PathRecord(key, ell, hi, 0, node.pred, NONE)
            if out_nodes and out_nodes[-1].key == key and out_nodes[-1].length == ell:
                prev = out_nodes.pop()
                out_sets.pop()
                node = node._replace(pred=node.pred | prev.pred)
        out_nodes.append(node)
        out_sets.append(vals)
    table = NodeTable(order, [n.key for n in out_nodes], [n.length for n in out_nodes],
                      [n.hi for n in out_nodes], out_sets, [n.pred for n in out_nodes])
    table.lcps = adjacent_lcps(out_nodes, base)[:len(out_nodes)]
    return table


def _blocks(key: Sequence[int], length: int, hi: int, k: int) -> list[tuple[int, int, int]]:
    """``(lo, hi, block_length)`` per rank block."""
    out = []
    for j, r in enumerate(key):
        blen = min(k, length - j * k)
        out.append((r, hi if j == len(key) - 1 else r, blen))
    return out


def extend_left(base: BaseKmerIndex, key: Sequence[int], length: int, hi: int, c: int) -> list[tuple[int, int, int]]:
    """Rank blocks of ``c`` followed by the label of ``key``, via LF on the base index."""
    k = base.k
    blocks = _blocks(key, length, hi, k)
    out = []
    prev = c
    for lo, bhi, blen in blocks:
        zlo, zhi = base.lf((lo, bhi), prev)
        out.append((zlo, zhi, min(k, blen + 1)))
        prev = base.last[lo]
    if not blocks or blocks[-1][2] == k:
        zlo, zhi = base.lf((0, len(base) - 1), prev)
        out.append((zlo, zhi, 1))
    return out


def compare_blocks(ublocks: Sequence[tuple[int, int, int]], zblocks: Sequence[tuple[int, int, int]], k: int) -> int:
    """-1, 0 or 1 as the first label sorts before, prefix-matches, or after the second."""
    for (ulo, uhi, ulen), (zlo, zhi, zlen) in zip(ublocks, zblocks):
        if ulen == k and zlen == k:
            if ulo != zlo:
                return -1 if ulo < zlo else 1
            continue
        if uhi < zlo:
            return -1
        if ulo > zhi:
            return 1
        return 0
    return 0


def prefix_match_check(key_u: Sequence[int], len_u: int, hi_u: int, c: int,
                       key_v: Sequence[int], len_v: int, hi_v: int, base: BaseKmerIndex) -> bool:
    """True iff ``c`` followed by label(v) prefix-matches label(u).

    Block ``j`` of the extended label is the last symbol of block ``j-1`` of v
    (or ``c``) followed by the first ``k-1`` symbols of block ``j``.  Each block
    is compared as a rank range over the base k-mers sharing just the symbols
    both labels have there.
    """
    k = base.k
    ublocks = _blocks(key_u, len_u, hi_u, k)
    vblocks = _blocks(key_v, len_v, hi_v, k)
    zlens = [min(k, blen + 1) for _, _, blen in vblocks]
    if not vblocks or vblocks[-1][2] == k:
        zlens.append(1)
    prev = c
    for j, (ulo, uhi, ulen) in enumerate(ublocks):
        if j == len(zlens):
            return True
        m = min(ulen, zlens[j])
        if j < len(vblocks):
            vlo, vhi, _ = vblocks[j]
            zlo, zhi = base.lf(base.prefix_range(vlo, vhi, m - 1), prev)
            prev = base.last[vlo]
        else:
            zlo, zhi = base.lf((0, len(base) - 1), prev)
        if m < ulen:
            ulo, uhi = base.prefix_range(ulo, uhi, m)
        if zhi < zlo or uhi < zlo or ulo > zhi:
            return False
        if m < k:
            return True
    return True


def determine_edges(nodes: NodeTable, base: BaseKmerIndex) -> tuple[list[list[tuple[int, int]]], list[int]]:
    """In-edges per node (sorted by label, source) and out-degrees, in one ordered scan."""
    n = len(nodes)
    k = base.k
    ublocks = [_blocks(nodes.keys[i], nodes.lengths[i], nodes.his[i], k) for i in range(n)]
    firsts = [base.first[key[0]] for key in nodes.keys]
    cursor = [bisect_left(firsts, c) for c in range(SIGMA)]
    in_edges: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    out_deg = [0] * n
    source = nodes.source()
    sink = 0
    for v in range(n):
        mask = nodes.preds[v]
        for c in range(SIGMA):
            if not mask >> c & 1:
                continue
            if c == ENDMARKER:
                if v != source:
                    raise ConstructionError("endmarker predecessor outside the source node")
                in_edges[v].append((c, sink))
                out_deg[sink] += 1
                continue
            z = extend_left(base, nodes.keys[v], nodes.lengths[v], nodes.his[v], c)
            u = cursor[c]
            while u < n and compare_blocks(ublocks[u], z, k) < 0:
                u += 1
            cursor[c] = u
            while u < n and compare_blocks(ublocks[u], z, k) == 0:
                in_edges[v].append((c, u))
                out_deg[u] += 1
                u += 1
    for v in range(n):
        if not in_edges[v] or not out_deg[v]:
            raise ConstructionError(f"node {v} lacks an in- or out-edge")
    return in_edges, out_deg


def determine_edges_and_samples(nodes: NodeTable, base: BaseKmerIndex,
                                cfg: ConstructionConfig) -> tuple[EncodedIndex, list[list[tuple[int, int]]]]:
    in_edges, out_deg = determine_edges(nodes, base)
    sampled = choose_samples(in_edges, nodes.values, nodes.source(), cfg.sample_period)
    return assemble(nodes.order, in_edges, out_deg, nodes.values, sampled, cfg.mode), in_edges


# Partition staging files


_HEADER = struct.Struct("<8sII")
_FIXED = struct.Struct("<IqqqqQ")


def write_records(path: str, records: Iterable[PathRecord]) -> int:
    n = 0
    with open(path, "wb") as f:
        f.write(_HEADER.pack(RECORD_MAGIC, RECORD_VERSION, 0))
        for rec in records:
            f.write(_FIXED.pack(len(rec.key), rec.length, rec.hi, rec.value, rec.ext, rec.pred))
            f.write(struct.pack(f"<{len(rec.key)}q", *rec.key))
            n += 1
    return n


def read_records(path: str) -> Iterator[PathRecord]:
    with open(path, "rb") as f:
        magic, version, _ = _HEADER.unpack(f.read(_HEADER.size))
        if magic != RECORD_MAGIC or version != RECORD_VERSION:
            raise ConstructionError(f"{path}: not a version {RECORD_VERSION} record file")
        while True:
            head = f.read(_FIXED.size)
            if not head:
                return
            m, length, hi, value, ext, pred = _FIXED.unpack(head)
            key = struct.unpack(f"<{m}q", f.read(8 * m))
            yield PathRecord(key, length, hi, value, pred, ext)


def stage_records(records: Iterable[PathRecord], partition_of, directory: str, tag: str) -> list[PathRecord]:
    """Write records to one sorted file per partition, then merge them back."""
    parts: dict[int, list[PathRecord]] = defaultdict(list)
    for rec in records:
        parts[partition_of(rec)].append(rec)
    paths = []
    for pid in sorted(parts):
        path = os.path.join(directory, f"{tag}.part{pid}.bin")
        write_records(path, sorted(parts[pid]))
        paths.append(path)
    merged = list(heapq.merge(*(read_records(p) for p in paths)))
    for p in paths:
        os.remove(p)
    return merged


@dataclass
class BuildResult:
    index: EncodedIndex
    lcp: LcpSupport
    counts: CountSupport
    nodes: NodeTable
    base: BaseKmerIndex
    codec: ValueCodec
    in_edges: list[list[tuple[int, int]]]


def component_partitioner(codec: ValueCodec):
    """Partition id per record: the weak component of its start node, padding and sink shared."""
    comp = weak_components(codec.graph)
    shared = max(comp, default=-1) + 1

    def partition_of(rec: PathRecord) -> int:
        v = rec.value - codec.order
        return comp[v] if 0 <= v < codec.n else shared

    return partition_of


def build_nodes(g: LabeledGraph, cfg: ConstructionConfig) -> tuple[NodeTable, BaseKmerIndex, ValueCodec]:
    """Run the doubling steps and return the merged, maximally pruned node table."""
    records, base, codec = build_base(g, cfg.k, cfg.order, cfg.path_cap)
    partition_of = None
    if cfg.partition_dir:
        os.makedirs(cfg.partition_dir, exist_ok=True)
        partition_of = component_partitioner(codec)
    for step in range(cfg.doubling):
        records = prune_step(records, base)
        records = extension_step(records)
        if cfg.path_cap is not None and len(records) > cfg.path_cap:
            raise PathCapExceeded(f"more than {cfg.path_cap} path records")
        if partition_of is not None:
            records = stage_records(records, partition_of, cfg.partition_dir, f"step{step}")
    return merging_step(records, base, cfg.order), base, codec


def build(g: LabeledGraph, cfg: ConstructionConfig | None = None) -> BuildResult:
    cfg = cfg or ConstructionConfig()
    nodes, base, codec = build_nodes(g, cfg)
    index, in_edges = determine_edges_and_samples(nodes, base, cfg)
    lcp = LcpSupport(nodes.lcps)
    counts = CountSupport.build(nodes.lcps, nodes.values)
    return BuildResult(index, lcp, counts, nodes, base, codec, in_edges)


def to_pathgraph(result: BuildResult):
    """Decode the built nodes and edges into an explicit path graph."""
    from .pathgraph import PathGraph

    keys = result.nodes.labels(result.base)
    edges = [(u, v) for v, lst in enumerate(result.in_edges) for _, u in lst]
    return PathGraph(result.nodes.order, keys, list(result.nodes.values), list(result.nodes.preds),
                     frozenset(), edges)
