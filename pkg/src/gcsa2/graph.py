"""Input graphs with single-character node labels.

Real nodes get internal ids ``0..n-1``; after augmentation the source is
``n`` and the sink ``n + 1``.  Occurrence values reported by the index live in
a separate integer space that depends on the index order ``P`` (see
:class:`ValueCodec`).
"""

from __future__ import annotations

import io
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, TextIO

SYMBOLS = "$#ACGTN"
SIGMA = len(SYMBOLS)
ENDMARKER, SOURCE_MARK, A, C, G, T, N = range(SIGMA)
BASES = (A, C, G, T)
_ORD = {ch: i for i, ch in enumerate(SYMBOLS)}
_COMPLEMENT = [ENDMARKER, SOURCE_MARK, T, G, C, A, N]


class GraphParseError(ValueError):
    pass


class PathCapExceeded(RuntimeError):
    pass


def encode(text: str | Iterable[int]) -> tuple[int, ...]:
    """Map a string over ``$#ACGTN`` (or an existing symbol sequence) to ordinals."""
    if isinstance(text, str):
        try:
            return tuple(_ORD[ch] for ch in text.upper())
        except KeyError as e:
            raise ValueError(f"unknown symbol {e.args[0]!r}") from None
    seq = tuple(text)
    for s in seq:
        if not 0 <= s < SIGMA:
            raise ValueError(f"symbol ordinal {s} outside alphabet")
    return seq


def decode(seq: Iterable[int]) -> str:
    return "".join(SYMBOLS[s] for s in seq)


def encode_pattern(text: str | Iterable[int]) -> tuple[int, ...]:
    x = encode(text)
    if ENDMARKER in x or SOURCE_MARK in x:
        raise ValueError("patterns may not contain '#' or '$'")
    return x


def complement(c: int) -> int:
    return _COMPLEMENT[c]


def reverse_complement(seq):
    """Reverse complement; technical characters ($, #) keep their positions.

    Accepts a string or a symbol sequence and returns the same kind.
    """
    as_str = isinstance(seq, str)
    syms = list(encode(seq)) if as_str else list(seq)
    out = list(syms)
    i = 0
    while i < len(syms):
        if syms[i] <= SOURCE_MARK:
            i += 1
            continue
        j = i
        while j < len(syms) and syms[j] > SOURCE_MARK:
            j += 1
        out[i:j] = [_COMPLEMENT[c] for c in reversed(syms[i:j])]
        i = j
    return decode(out) if as_str else tuple(out)


@dataclass
class LabeledGraph:
    labels: list[int]
    succ: list[list[int]]
    names: list[str] = field(default_factory=list)
    source: int | None = None
    sink: int | None = None

    def __post_init__(self) -> None:
        self.pred_lists: list[list[int]] = [[] for _ in self.labels]
        for u, vs in enumerate(self.succ):
            for v in vs:
                self.pred_lists[v].append(u)

    @property
    def augmented(self) -> bool:
        return self.source is not None

    @property
    def num_real(self) -> int:
        return len(self.labels) - (2 if self.augmented else 0)

    def __len__(self) -> int:
        return len(self.labels)

    def real_nodes(self) -> range:
        return range(self.num_real)

    def is_real(self, v: int) -> bool:
        return 0 <= v < self.num_real

    def edges(self, include_nonreal: bool = False) -> list[tuple[int, int]]:
        out = [(u, v) for u, vs in enumerate(self.succ) for v in vs]
        if include_nonreal and self.augmented:
            out.append((self.sink, self.source))
        return out

    def in_degree(self, v: int) -> int:
        return len(self.pred_lists[v])

    def out_degree(self, v: int) -> int:
        return len(self.succ[v])

    def name(self, v: int) -> str:
        if self.augmented and v == self.source:
            return "#source"
        if self.augmented and v == self.sink:
            return "$sink"
        return self.names[v] if v < len(self.names) else str(v)


def _renumber(labels: list[int], succ: list[list[int]], names: list[str]) -> LabeledGraph:
    """Renumber nodes so that every unary edge (u, v) has v == u + 1.

    Unary means u has one out-edge and v one in-edge.  Cycles made only of
    unary edges cannot satisfy this everywhere and are broken at their
    smallest original id.
    """
    n = len(labels)
    indeg = [0] * n
    for vs in succ:
        for v in vs:
            indeg[v] += 1
    nxt = [-1] * n
    has_prev = [False] * n
    for u in range(n):
        if len(succ[u]) == 1:
            v = succ[u][0]
            if indeg[v] == 1 and v != u:
                nxt[u] = v
                has_prev[v] = True
    sources = [v for v in range(n) if indeg[v] == 0]
    sinks = [v for v in range(n) if not succ[v]]

    order: list[int] = []
    seen = [False] * n

    def take_chain(h: int) -> list[int]:
        chain = []
        while h != -1 and not seen[h]:
            seen[h] = True
            chain.append(h)
            h = nxt[h]
        return chain

    heads = [v for v in range(n) if not has_prev[v]]
    chains = [take_chain(h) for h in heads]
    for v in range(n):
        if not seen[v]:
            chains.append(take_chain(v))
    first = None
    last = None
    # the source/sink edges are unary when exactly one node needs them
    if len(sources) == 1:
        first = next(i for i, ch in enumerate(chains) if ch and ch[0] == sources[0])
    if len(sinks) == 1:
        last = next(i for i, ch in enumerate(chains) if ch and ch[-1] == sinks[0])
    if first is not None:
        order.extend(chains[first])
    for i, ch in enumerate(chains):
        if i != first and i != last:
            order.extend(ch)
    if last is not None and last != first:
        order.extend(chains[last])

    new_id = [0] * n
    for i, v in enumerate(order):
        new_id[v] = i
    new_labels = [labels[v] for v in order]
    new_succ = [sorted(new_id[w] for w in succ[v]) for v in order]
    new_names = [names[v] for v in order]
    return LabeledGraph(new_labels, new_succ, new_names)


def _read_text(source: str | bytes | TextIO) -> str:
    if isinstance(source, bytes):
        return source.decode()
    if isinstance(source, str):
        return source
    return source.read()


def parse_tsv(source: str | bytes | TextIO) -> LabeledGraph:
    """Lines ``N <id> <char>`` and ``E <from> <to>``; ``#!`` starts a comment."""
    labels: list[int] = []
    names: list[str] = []
    index: dict[str, int] = {}
    raw_edges: list[tuple[str, str, int]] = []
    for lineno, line in enumerate(io.StringIO(_read_text(source)), 1):
        line = line.split("#!", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "N" and len(parts) == 3:
            name, ch = parts[1], parts[2].upper()
            if name in index:
                raise GraphParseError(f"line {lineno}: duplicate node id {name!r}")
            if len(ch) != 1 or ch not in "ACGTN":
                raise GraphParseError(f"line {lineno}: unknown symbol {parts[2]!r}")
            index[name] = len(labels)
            labels.append(_ORD[ch])
            names.append(name)
        elif parts[0] == "E" and len(parts) == 3:
            raw_edges.append((parts[1], parts[2], lineno))
        else:
            raise GraphParseError(f"line {lineno}: cannot parse {line!r}")
    succ: list[set[int]] = [set() for _ in labels]
    for a, b, lineno in raw_edges:
        if a not in index or b not in index:
            missing = a if a not in index else b
            raise GraphParseError(f"line {lineno}: edge references unknown node {missing!r}")
        succ[index[a]].add(index[b])
    return _renumber(labels, [sorted(s) for s in succ], names)


def parse_gfa(source: str | bytes | TextIO) -> LabeledGraph:
    """``S`` and forward-strand ``L`` lines with ``0M`` overlap only."""
    labels: list[int] = []
    names: list[str] = []
    segments: dict[str, tuple[int, int]] = {}
    links: list[tuple[str, str, int]] = []
    for lineno, line in enumerate(io.StringIO(_read_text(source)), 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.startswith("#") or line.startswith("H"):
            continue
        parts = line.split("\t") if "\t" in line else line.split()
        if parts[0] == "S" and len(parts) >= 3:
            name, seq = parts[1], parts[2].upper()
            if name in segments:
                raise GraphParseError(f"line {lineno}: duplicate segment id {name!r}")
            if not seq or seq == "*":
                raise GraphParseError(f"line {lineno}: segment {name!r} has no sequence")
            bad = [ch for ch in seq if ch not in "ACGTN"]
            if bad:
                raise GraphParseError(f"line {lineno}: unknown symbol {bad[0]!r}")
            start = len(labels)
            for off, ch in enumerate(seq):
                labels.append(_ORD[ch])
                names.append(f"{name}:{off}")
            segments[name] = (start, len(labels) - 1)
        elif parts[0] == "L" and len(parts) >= 6:
            _, a, oa, b, ob, overlap = parts[:6]
            if oa != "+" or ob != "+":
                raise GraphParseError(f"line {lineno}: only forward-strand links are supported")
            if overlap not in ("0M", "*"):
                raise GraphParseError(f"line {lineno}: overlapping links are not supported")
            links.append((a, b, lineno))
        else:
            raise GraphParseError(f"line {lineno}: unsupported GFA record {parts[0]!r}")
    succ: list[set[int]] = [set() for _ in labels]
    for first, last in segments.values():
        for v in range(first, last):
            succ[v].add(v + 1)
    for a, b, lineno in links:
        if a not in segments or b not in segments:
            missing = a if a not in segments else b
            raise GraphParseError(f"line {lineno}: link references unknown segment {missing!r}")
        succ[segments[a][1]].add(segments[b][0])
    return _renumber(labels, [sorted(s) for s in succ], names)


def parse_graph(source: str | bytes | TextIO, fmt: str = "tsv") -> LabeledGraph:
    if fmt == "tsv":
        return parse_tsv(source)
    if fmt == "gfa":
        return parse_gfa(source)
    raise ValueError(f"unknown graph format {fmt!r}")


def load_graph(path: str, fmt: str | None = None) -> LabeledGraph:
    if fmt is None:
        fmt = "gfa" if path.endswith(".gfa") else "tsv"
    with open(path) as fh:
        return parse_graph(fh, fmt)


def from_edges(labels: str | Iterable[int], edges: Iterable[tuple[int, int]]) -> LabeledGraph:
    """Build an unaugmented graph directly, keeping the given node ids."""
    labs = list(encode(labels))
    for c in labs:
        if c <= SOURCE_MARK:
            raise ValueError("real nodes may not be labeled '#' or '$'")
    succ: list[set[int]] = [set() for _ in labs]
    for u, v in edges:
        succ[u].add(v)
    return LabeledGraph(labs, [sorted(s) for s in succ], [str(i) for i in range(len(labs))])


def augment(g: LabeledGraph) -> LabeledGraph:
    """Add source ``#`` and sink ``$``; the edge (t, s) is implicit and non-real."""
    if g.augmented:
        return g
    if any(c <= SOURCE_MARK for c in g.labels):
        raise ValueError("graph already contains '#' or '$' labels")
    n = len(g.labels)
    s, t = n, n + 1
    succ = [list(vs) for vs in g.succ]
    indeg = [0] * n
    for vs in g.succ:
        for v in vs:
            indeg[v] += 1
    for v in range(n):
        if not g.succ[v]:
            succ[v].append(t)
    succ.append([v for v in range(n) if indeg[v] == 0])
    succ.append([])
    out = LabeledGraph(g.labels + [SOURCE_MARK, ENDMARKER], succ, list(g.names), source=s, sink=t)
    return out


def pred(g: LabeledGraph, v: int, c: int | str) -> set[int]:
    """Real predecessors of ``v`` labeled ``c``."""
    if isinstance(c, str):
        c = _ORD[c]
    return {u for u in g.pred_lists[v] if g.labels[u] == c}


class ValueCodec:
    """Occurrence ids for an order-``P`` index.

    Source paddings ``s:j`` are ``P-1-j``; real node ``v`` is ``P + v``; every
    ``$`` position is ``P + n`` for ``n`` real nodes.
    """

    def __init__(self, g: LabeledGraph, order: int) -> None:
        if not g.augmented:
            raise ValueError("graph must be augmented")
        self.graph = g
        self.order = order
        self.n = g.num_real
        self.sink_value = order + self.n
        # the source needs a successor and the sink a predecessor; otherwise
        # a virtual s -> t path keeps #^k and $^k in the collection
        self.virtual_st = not g.succ[g.source] or not g.pred_lists[g.sink]
        P = order
        succ: list[tuple[int, ...]] = []
        labels: list[int] = []
        preds: list[int] = []
        s_succ = tuple(self.value(w) for w in g.succ[g.source])
        if self.virtual_st:
            s_succ = s_succ + (self.sink_value,)
        for j in range(P - 1, -1, -1):
            labels.append(SOURCE_MARK)
            preds.append(1 << ENDMARKER if j == P - 1 else 1 << SOURCE_MARK)
            succ.append((P - j,) if j > 0 else s_succ)
        for v in range(self.n):
            labels.append(g.labels[v])
            succ.append(tuple(self.value(w) for w in g.succ[v]))
            preds.append(self._pred_mask(v))
        labels.append(ENDMARKER)
        succ.append((self.sink_value,))
        sink_pred = self._pred_mask(g.sink)
        if self.virtual_st:
            sink_pred |= 1 << SOURCE_MARK
        preds.append(sink_pred)
        self.labels = labels
        self.succ = succ
        self.preds = preds

    def _pred_mask(self, v: int) -> int:
        m = 0
        for u in self.graph.pred_lists[v]:
            m |= 1 << self.graph.labels[u]
        return m

    def value(self, node: int) -> int:
        g = self.graph
        if node == g.source:
            return self.order - 1
        if node == g.sink:
            return self.sink_value
        return self.order + node

    def node(self, value: int) -> int:
        """Graph node behind an occurrence value (paddings map to the source)."""
        if value < self.order:
            return self.graph.source
        if value == self.sink_value:
            return self.graph.sink
        return value - self.order

    def describe(self, value: int) -> str:
        if value < self.order:
            return f"s:{self.order - 1 - value}"
        if value == self.sink_value:
            return "t"
        return self.graph.name(value - self.order)

    def start_values(self) -> range:
        return range(self.sink_value + 1)

    def __len__(self) -> int:
        return self.sink_value + 1


def iter_paths(codec: ValueCodec, length: int, cap: int | None = None) -> Iterator[tuple[tuple[int, ...], int, int]]:
    """Yield ``(label, start, last)`` for every padded path of ``length`` nodes.

    Paths are walks in value space: source paddings lead into the graph and
    the sink repeats itself as ``$`` padding.  The only path starting at the
    sink is ``$^length``.
    """
    labels = codec.labels
    succ = codec.succ
    produced = 0
    for start in codec.start_values():
        stack = [(start, (labels[start],))]
        while stack:
            v, lab = stack.pop()
            if len(lab) == length:
                produced += 1
                if cap is not None and produced > cap:
                    raise PathCapExceeded(f"more than {cap} paths of length {length}")
                yield lab, start, v
                continue
            for w in reversed(succ[v]):
                stack.append((w, lab + (labels[w],)))


@dataclass(frozen=True)
class KPath:
    label: tuple[int, ...]
    value: int
    pred: int
    ext: int


def enumerate_k_paths(g: LabeledGraph, k: int, order: int | None = None,
                      cap: int | None = None) -> list[KPath]:
    """All length-``k`` paths, one record per extension node.

    ``order`` sets the source padding depth (defaults to ``k``).
    """
    if k < 1:
        raise ValueError("k must be positive")
    codec = ValueCodec(augment(g), order or k)
    out = []
    for lab, start, last in iter_paths(codec, k, cap):
        p = codec.preds[start]
        for w in codec.succ[last]:
            out.append(KPath(lab, start, p, w))
            if cap is not None and len(out) > cap:
                raise PathCapExceeded(f"more than {cap} path records")
    return out


def verify_match(g: LabeledGraph, start: int, x: str | Iterable[int]) -> bool:
    """True iff some path from real node ``start`` is labeled ``x``."""
    pat = encode(x)
    if not pat:
        return True
    if g.labels[start] != pat[0]:
        return False
    frontier = {start}
    for c in pat[1:]:
        frontier = {w for v in frontier for w in g.succ[v] if g.labels[w] == c}
        if not frontier:
            return False
    return True


def locate_in_graph(g: LabeledGraph, x: Iterable[int]) -> set[int]:
    """Real start nodes of paths labeled ``x`` (backward frontier sweep)."""
    pat = tuple(x)
    if not pat:
        return set(g.real_nodes())
    n = g.num_real
    cur = {v for v in range(n) if g.labels[v] == pat[-1]}
    for c in reversed(pat[:-1]):
        if not cur:
            break
        nxt = set()
        for v in cur:
            for u in g.pred_lists[v]:
                if u < n and g.labels[u] == c:
                    nxt.add(u)
        cur = nxt
    return cur


def weak_components(g: LabeledGraph) -> list[int]:
    """Component id per real node (undirected connectivity over real edges)."""
    n = g.num_real
    comp = [-1] * n
    adj: dict[int, list[int]] = defaultdict(list)
    for u in range(n):
        for v in g.succ[u]:
            if v < n:
                adj[u].append(v)
                adj[v].append(u)
    cid = 0
    for v in range(n):
        if comp[v] >= 0:
            continue
        comp[v] = cid
        stack = [v]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if comp[w] < 0:
                    comp[w] = cid
                    stack.append(w)
        cid += 1
    return comp
