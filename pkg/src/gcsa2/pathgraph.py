"""Explicit path graphs: de Bruijn graphs of input graphs and their pruning.

Everything here works on plain string keys and explicit edge lists.  It is
the slow reference used to check the succinct index and the doubling
construction, so sizes are capped.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import (ENDMARKER, SIGMA, SOURCE_MARK, LabeledGraph, ValueCodec, augment,
                    decode, encode_pattern, iter_paths, locate_in_graph)

MAX_NODES = 10_000


class PruneError(ValueError):
    """Raised when a prefix does not satisfy the pruning precondition."""


def prefix_match(a: Sequence[int], b: Sequence[int]) -> bool:
    m = min(len(a), len(b))
    return tuple(a[:m]) == tuple(b[:m])


def mask_symbols(mask: int) -> str:
    return "".join(decode([c]) for c in range(SIGMA) if mask >> c & 1)


@dataclass
class PathGraph:
    """Nodes sorted by key; ``edges`` are ``(u, v)`` index pairs incl. (sink, source)."""

    order: int
    keys: list[tuple[int, ...]]
    values: list[frozenset[int]]
    preds: list[int]
    substrings: frozenset[tuple[int, ...]] = field(repr=False)
    edges: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if len(self.keys) > MAX_NODES:
            raise ValueError(f"reference path graph limited to {MAX_NODES} nodes")
        if not self.edges:
            self.edges = compute_edges(self.keys, self.substrings)
        self.succ: list[list[int]] = [[] for _ in self.keys]
        self.pred_nodes: list[list[int]] = [[] for _ in self.keys]
        for u, v in self.edges:
            self.succ[u].append(v)
            self.pred_nodes[v].append(u)

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def source(self) -> int:
        for i, k in enumerate(self.keys):
            if k and k[0] == SOURCE_MARK and all(c == SOURCE_MARK for c in k) and len(k) == self.order:
                return i
        # order 1 or unexpected pruning: fall back to the node holding s:(P-1)
        for i, vals in enumerate(self.values):
            if 0 in vals and self.keys[i][0] == SOURCE_MARK:
                return i
        raise ValueError("path graph has no source node")

    @property
    def sink(self) -> int:
        i = bisect_left(self.keys, (ENDMARKER,))
        if i < len(self.keys) and self.keys[i][0] == ENDMARKER:
            return i
        raise ValueError("path graph has no sink node")

    def label(self, i: int) -> int:
        return self.keys[i][0]

    def key_str(self, i: int) -> str:
        return decode(self.keys[i])

    def index_of(self, key: str | Sequence[int]) -> int:
        k = tuple(encode_pattern_any(key))
        i = bisect_left(self.keys, k)
        if i < len(self.keys) and self.keys[i] == k:
            return i
        raise KeyError(key)

    def in_edges(self) -> list[list[tuple[int, int]]]:
        """Per node, incoming edges as ``(label, u)`` sorted by label then u."""
        out: list[list[tuple[int, int]]] = [[] for _ in self.keys]
        for u, v in self.edges:
            out[v].append((self.keys[u][0], u))
        for lst in out:
            lst.sort()
        return out

    def dump(self) -> str:
        lines = []
        for k, vals, p in zip(self.keys, self.values, self.preds):
            vs = ",".join(str(v) for v in sorted(vals))
            lines.append(f"{decode(k)}\t{{{vs}}}\t{{{mask_symbols(p)}}}")
        return "\n".join(lines) + ("\n" if lines else "")

    def same_as(self, other: "PathGraph") -> bool:
        return (self.keys == other.keys and self.values == other.values
                and sorted(self.edges) == sorted(other.edges))


def encode_pattern_any(key: str | Sequence[int]) -> tuple[int, ...]:
    if isinstance(key, str):
        from .graph import encode
        return encode(key)
    return tuple(key)


def compute_edges(keys: list[tuple[int, ...]], substrings: frozenset[tuple[int, ...]]) -> list[tuple[int, int]]:
    """Edges by occurrence: (u, v) iff label(u)+key(v) occurs and prefix-matches key(u).

    ``$``-labeled nodes only get the non-real edge to the source.
    """
    index = {k: i for i, k in enumerate(keys)}
    edges = []
    for u, ku in enumerate(keys):
        c = ku[0]
        if c == ENDMARKER:
            continue
        rest = ku[1:]
        cands = [index[rest[:m]] for m in range(1, len(rest) + 1) if rest[:m] in index]
        lo = bisect_left(keys, rest)
        for v in range(lo, len(keys)):
            if keys[v][:len(rest)] != rest:
                break
            if len(keys[v]) > len(rest) or not rest:
                cands.append(v)
        for v in sorted(set(cands)):
            if (c,) + keys[v] in substrings:
                edges.append((u, v))
    sink = bisect_left(keys, (ENDMARKER,))
    src = [i for i, k in enumerate(keys) if k and all(ch == SOURCE_MARK for ch in k)]
    if sink < len(keys) and keys[sink][0] == ENDMARKER and src:
        edges.append((sink, max(src, key=lambda i: len(keys[i]))))
    return edges


def collection_substrings(codec: ValueCodec, k: int, cap: int | None = None) -> frozenset[tuple[int, ...]]:
    """Every substring of length <= k+1 of the padded path-label collection."""
    subs: set[tuple[int, ...]] = set()
    for lab, _, _ in iter_paths(codec, k + 1, cap):
        for m in range(1, k + 2):
            subs.add(lab[:m])
    for m in range(1, k + 1):
        subs.add((ENDMARKER,) * m)
    return frozenset(subs)


def build_debruijn(g: LabeledGraph, k: int, cap: int | None = None) -> PathGraph:
    """Order-``k`` de Bruijn graph of ``g`` with occurrence values."""
    codec = ValueCodec(augment(g), k)
    values: dict[tuple[int, ...], set[int]] = defaultdict(set)
    for lab, start, _ in iter_paths(codec, k, cap):
        values[lab].add(start)
    keys = sorted(values)
    preds = []
    for key in keys:
        m = 0
        for v in values[key]:
            m |= codec.preds[v]
        preds.append(m)
    return PathGraph(k, keys, [frozenset(values[key]) for key in keys], preds,
                     collection_substrings(codec, k, cap))


def _rebuild(pg: PathGraph, nodes: dict[tuple[int, ...], tuple[frozenset[int], int]]) -> PathGraph:
    keys = sorted(nodes)
    return PathGraph(pg.order, keys, [nodes[k][0] for k in keys], [nodes[k][1] for k in keys],
                     pg.substrings)


def prune(pg: PathGraph, K: str | Sequence[int]) -> PathGraph:
    """Replace every node having ``K`` as a proper key prefix by one node ``K``.

    Refuses unless at least one such node exists and all share one value set.
    """
    key = encode_pattern_any(K)
    if not key:
        raise PruneError("prefix must be nonempty")
    group = [i for i, k in enumerate(pg.keys) if len(k) > len(key) and k[:len(key)] == key]
    if not group:
        raise PruneError(f"no key has {decode(key)!r} as a proper prefix")
    vals = {pg.values[i] for i in group}
    if len(vals) != 1:
        raise PruneError(f"nodes under {decode(key)!r} have differing values")
    merged = set(group)
    nodes = {k: (pg.values[i], pg.preds[i]) for i, k in enumerate(pg.keys) if i not in merged}
    p = 0
    for i in group:
        p |= pg.preds[i]
    nodes[key] = (next(iter(vals)), p)
    return _rebuild(pg, nodes)


def maximally_prune(pg: PathGraph) -> PathGraph:
    """Apply pruning for prefixes of decreasing length until nothing merges."""
    nodes = {k: (pg.values[i], pg.preds[i]) for i, k in enumerate(pg.keys)}
    longest = max((len(k) for k in nodes), default=0)
    for length in range(longest - 1, 0, -1):
        groups: dict[tuple[int, ...], list[tuple[int, ...]]] = defaultdict(list)
        for k in nodes:
            if len(k) > length:
                groups[k[:length]].append(k)
        for prefix, members in groups.items():
            vals = {nodes[k][0] for k in members}
            if len(vals) != 1:
                continue
            p = 0
            for k in members:
                p |= nodes.pop(k)[1]
            nodes[prefix] = (vals.pop(), p)
    return _rebuild(pg, nodes)


def prunable_prefixes(pg: PathGraph) -> list[tuple[int, ...]]:
    """Every prefix that would still satisfy the pruning precondition."""
    groups: dict[tuple[int, ...], set[frozenset[int]]] = defaultdict(set)
    for k, vals in zip(pg.keys, pg.values):
        for m in range(1, len(k)):
            groups[k[:m]].add(vals)
    return sorted(p for p, vs in groups.items() if len(vs) == 1)


def is_prefix_free(keys: Iterable[Sequence[int]]) -> bool:
    ks = sorted(tuple(k) for k in keys)
    return all(not prefix_match(a, b) for a, b in zip(ks, ks[1:]))


def oracle_find(pg: PathGraph, x: str | Sequence[int]) -> set[int]:
    """Nodes where a path labeled ``x`` starts, by explicit search."""
    pat = encode_pattern_any(x)
    if not pat:
        return set(range(len(pg)))
    cur = {u for u in range(len(pg)) if pg.keys[u][0] == pat[-1]}
    for c in reversed(pat[:-1]):
        cur = {u for v in cur for u in pg.pred_nodes[v] if pg.keys[u][0] == c}
        if not cur:
            break
    return cur


def path_graph_locate(pg: PathGraph, x: str | Sequence[int]) -> set[int]:
    out: set[int] = set()
    for v in oracle_find(pg, x):
        out |= pg.values[v]
    return out


def oracle_locate(g: LabeledGraph, x: str | Sequence[int], order: int) -> set[int]:
    """Occurrence values of paths labeled ``x`` in the input graph itself."""
    pat = encode_pattern(x) if isinstance(x, str) else tuple(x)
    codec = ValueCodec(augment(g), order)
    if not pat:
        return set(codec.start_values())
    return {order + v for v in locate_in_graph(codec.graph, pat)}


def long_edge_violations(pg: PathGraph) -> list[tuple[int, int]]:
    """Edges with ``|key(u)| > |key(v)| + 1`` (the non-real edge excluded)."""
    sink = pg.sink
    return [(u, v) for u, v in pg.edges
            if u != sink and len(pg.keys[u]) > len(pg.keys[v]) + 1]


def max_preds_per_label(pg: PathGraph) -> int:
    best = 0
    for v in range(len(pg)):
        counts: dict[int, int] = defaultdict(int)
        for u in pg.pred_nodes[v]:
            counts[pg.keys[u][0]] += 1
        best = max(best, max(counts.values(), default=0))
    return best
