"""Succinct path-graph index: degree vectors, edge labels, backward search and locate."""

from __future__ import annotations

from typing import Iterable, Sequence

from .graph import A, C, ENDMARKER, G, N, SIGMA, SOURCE_MARK, T, encode_pattern
from .succinct import BitVec, CharSeq, SparseBitVec, UnaryVec, WordReader, WordWriter

GENERAL = "general"
SIMPLIFIED = "simplified"
MODES = (GENERAL, SIMPLIFIED)
DEFAULT_SAMPLE_PERIOD = 64

# lf_node probes frequent symbols first
PROBE_ORDER = (A, C, G, T, N, ENDMARKER, SOURCE_MARK)
SPARSE_SYMBOLS = (N, SOURCE_MARK, ENDMARKER)

Range = tuple[int, int]


class EncodingError(ValueError):
    pass


def is_empty(r: Range) -> bool:
    return r[1] < r[0]


def range_size(r: Range) -> int:
    return max(0, r[1] - r[0] + 1)


def choose_samples(in_edges: Sequence[Sequence[tuple[int, int]]], values: Sequence[Iterable[int]],
                   source: int, period: int = DEFAULT_SAMPLE_PERIOD) -> list[bool]:
    """Sampled flag per node.

    A node is sampled when it has several in-edges, is the source, or its
    values are not its predecessor's values shifted by one.  Nodes still
    ``period`` or more steps from a sample are then sampled as well.
    """
    if period < 1:
        raise ValueError("sample period must be positive")
    n = len(in_edges)
    sets = [frozenset(v) for v in values]
    sampled = [False] * n
    for v in range(n):
        if v == source or len(in_edges[v]) != 1:
            sampled[v] = True
            continue
        u = in_edges[v][0][1]
        if sets[v] != frozenset(x + 1 for x in sets[u]):
            sampled[v] = True
    depth = [0 if s else -1 for s in sampled]
    for v in range(n):
        if depth[v] >= 0:
            continue
        chain = []
        w = v
        on_chain = set()
        while depth[w] < 0 and w not in on_chain:
            chain.append(w)
            on_chain.add(w)
            w = in_edges[w][0][1]
        if depth[w] < 0:
            # unsampled cycle: cannot happen with consistent values, but stay safe
            sampled[w] = True
            depth[w] = 0
            chain = chain[:chain.index(w)]
        d = depth[w]
        for x in reversed(chain):
            d += 1
            if d % period == 0:
                sampled[x] = True
                d = 0
            depth[x] = d
    return sampled


class EncodedIndex:
    """Key-sorted path graph stored as succinct edge structures plus samples."""

    def __init__(self, mode: str, order: int, out: UnaryVec, c_array: list[int],
                 bwt: CharSeq | None, inv: UnaryVec | None, labels: list | None,
                 sampled: BitVec, sample_sizes: UnaryVec, sample_values: list[int]) -> None:
        if mode not in MODES:
            raise ValueError(f"unknown encoding {mode!r}")
        self.mode = mode
        self.order = order
        self.out = out
        self.c_array = c_array
        self.bwt = bwt
        self.inv = inv
        self.labels = labels
        self.sampled = sampled
        self.sample_sizes = sample_sizes
        self.sample_values = sample_values
        self.num_nodes = len(out)

    def __len__(self) -> int:
        return self.num_nodes

    @property
    def num_edges(self) -> int:
        return self.c_array[SIGMA]

    def full_range(self) -> Range:
        return (0, self.num_nodes - 1)

    def lf_range(self, r: Range, c: int) -> Range:
        sp, ep = r
        if ep < sp:
            return r
        base = self.c_array[c]
        if self.mode == GENERAL:
            sp_in = self.inv.select(sp) + 1
            ep_in = self.inv.select(ep + 1)
            sp_out = base + self.bwt.rank(sp_in, c)
            ep_out = base + self.bwt.rank(ep_in + 1, c) - 1
        else:
            bc = self.labels[c]
            sp_out = base + bc.rank(sp)
            ep_out = base + bc.rank(ep + 1) - 1
        lo = self.out.rank(sp_out)
        if ep_out < sp_out:
            return (lo, lo - 1)
        return (lo, self.out.rank(ep_out))

    def find(self, pattern: str | Sequence[int], trace: list | None = None) -> Range:
        pat = encode_pattern(pattern)
        r = self.full_range()
        for c in reversed(pat):
            r = self.lf_range(r, c)
            if trace is not None:
                trace.append(r)
            if is_empty(r):
                break
        return r

    def predecessor_label(self, i: int) -> int:
        if self.mode == GENERAL:
            return self.bwt[self.inv.select(i) + 1]
        for c in PROBE_ORDER:
            if self.labels[c][i]:
                return c
        raise EncodingError(f"node {i} has no predecessor")

    def lf_node(self, i: int) -> int:
        """Rank of the unique predecessor of node ``i``."""
        if self.mode == GENERAL:
            pos = self.inv.select(i) + 1
            c = self.bwt[pos]
            return self.out.rank(self.c_array[c] + self.bwt.rank(pos, c))
        for c in PROBE_ORDER:
            bc = self.labels[c]
            if bc[i]:
                return self.out.rank(self.c_array[c] + bc.rank(i))
        raise EncodingError(f"node {i} has no predecessor")

    def sample_of(self, i: int) -> list[int]:
        k = self.sampled.rank(i)
        lo, hi = self.sample_sizes.unary_range(k)
        return self.sample_values[lo:hi + 1]

    def node_values(self, i: int) -> set[int]:
        steps = 0
        while not self.sampled[i]:
            i = self.lf_node(i)
            steps += 1
            if steps > self.num_nodes:
                raise EncodingError("sample walk did not terminate")
        return {v + steps for v in self.sample_of(i)}

    def locate(self, r: Range) -> set[int]:
        out: set[int] = set()
        for i in range(r[0], r[1] + 1):
            out |= self.node_values(i)
        return out

    def size_in_bits(self) -> int:
        bits = self.out.size_in_bits() + 64 * (SIGMA + 1)
        if self.mode == GENERAL:
            bits += self.bwt.size_in_bits() + self.inv.size_in_bits()
        else:
            bits += sum(b.size_in_bits() for b in self.labels)
        return bits

    def sample_bits(self) -> int:
        width = max(self.sample_values, default=0).bit_length() or 1
        return (self.sampled.size_in_bits() + self.sample_sizes.size_in_bits()
                + width * len(self.sample_values))

    def write(self, out: WordWriter) -> None:
        out.put(MODES.index(self.mode))
        out.put(self.order)
        self.out.write(out)
        out.extend(self.c_array)
        if self.mode == GENERAL:
            self.bwt.write(out)
            self.inv.write(out)
        else:
            for c in range(SIGMA):
                b = self.labels[c]
                out.put(1 if isinstance(b, SparseBitVec) else 0)
                b.write(out)
        self.sampled.write(out)
        self.sample_sizes.write(out)
        out.put(len(self.sample_values))
        out.extend(self.sample_values)

    @classmethod
    def read(cls, inp: WordReader) -> "EncodedIndex":
        mode = MODES[inp.get()]
        order = inp.get()
        out = UnaryVec.read(inp)
        c_array = list(inp.take(SIGMA + 1))
        bwt = inv = labels = None
        if mode == GENERAL:
            bwt = CharSeq.read(inp)
            inv = UnaryVec.read(inp)
        else:
            labels = []
            for _ in range(SIGMA):
                sparse = inp.get()
                labels.append(SparseBitVec.read(inp) if sparse else BitVec.read(inp))
        sampled = BitVec.read(inp)
        sizes = UnaryVec.read(inp)
        values = list(inp.take(inp.get()))
        return cls(mode, order, out, c_array, bwt, inv, labels, sampled, sizes, values)

    def to_bytes(self) -> bytes:
        w = WordWriter()
        self.write(w)
        return w.to_bytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "EncodedIndex":
        return cls.read(WordReader(data))


def assemble(order: int, in_edges: Sequence[Sequence[tuple[int, int]]], out_degrees: Sequence[int],
             values: Sequence[Iterable[int]], sampled: Sequence[bool], mode: str = SIMPLIFIED) -> EncodedIndex:
    """Build the index from key-sorted nodes.

    ``in_edges[v]`` lists ``(label, u)`` pairs sorted by label and then u.
    """
    n = len(in_edges)
    counts = [0] * SIGMA
    for lst in in_edges:
        for c, _ in lst:
            counts[c] += 1
    c_array = [0] * (SIGMA + 1)
    for c in range(SIGMA):
        c_array[c + 1] = c_array[c] + counts[c]
    out = UnaryVec.from_counts(out_degrees)
    bwt = inv = labels = None
    if mode == GENERAL:
        bwt = CharSeq([c for lst in in_edges for c, _ in lst], SIGMA)
        inv = UnaryVec.from_counts(len(lst) for lst in in_edges)
    elif mode == SIMPLIFIED:
        positions: list[list[int]] = [[] for _ in range(SIGMA)]
        for v, lst in enumerate(in_edges):
            prev = -1
            for c, _ in lst:
                if c == prev:
                    raise EncodingError(f"node {v} has several predecessors labeled {c}")
                positions[c].append(v)
                prev = c
        labels = [SparseBitVec(positions[c], n) if c in SPARSE_SYMBOLS
                  else BitVec.from_positions(positions[c], n) for c in range(SIGMA)]
    else:
        raise ValueError(f"unknown encoding {mode!r}")
    sampled_bv = BitVec(1 if s else 0 for s in sampled)
    sizes = []
    flat: list[int] = []
    for v in range(n):
        if sampled[v]:
            vs = sorted(values[v])
            sizes.append(len(vs))
            flat.extend(vs)
    return EncodedIndex(mode, order, out, c_array, bwt, inv, labels,
                        sampled_bv, UnaryVec.from_counts(sizes), flat)


def encode(pg, mode: str = SIMPLIFIED, sample_period: int = DEFAULT_SAMPLE_PERIOD) -> EncodedIndex:
    """Encode an explicit path graph (see ``pathgraph.PathGraph``)."""
    in_edges = pg.in_edges()
    out_degrees = [len(s) for s in pg.succ]
    sampled = choose_samples(in_edges, pg.values, pg.source, sample_period)
    return assemble(pg.order, in_edges, out_degrees, pg.values, sampled, mode)
