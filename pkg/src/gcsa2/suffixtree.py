"""LCP-based suffix-tree operations over the key-sorted nodes of an index."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import encode_pattern
from .index import EncodedIndex, Range, is_empty
from .succinct import BitVec, WordReader, WordWriter

BRANCHING = 64


def lcp_of(a: Sequence[int], b: Sequence[int]) -> int:
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return i


def lcp_array(keys: Sequence[Sequence[int]]) -> list[int]:
    return [0] + [lcp_of(keys[i - 1], keys[i]) for i in range(1, len(keys))]


class LcpSupport:
    """Integer array with a ``BRANCHING``-ary min tree for RMQ and smaller-value search."""

    def __init__(self, values: Iterable[int], branching: int = BRANCHING) -> None:
        self.values = list(values)
        self.branching = branching
        levels = [self.values]
        while len(levels[-1]) > 1:
            prev = levels[-1]
            levels.append([min(prev[i:i + branching]) for i in range(0, len(prev), branching)])
        self.levels = levels

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def _check(self, i: int) -> None:
        if not 0 <= i < len(self.values):
            raise IndexError(f"position {i} out of range")

    def range_min(self, lo: int, hi: int) -> int:
        self._check(lo)
        self._check(hi)
        if hi < lo:
            raise IndexError("empty range")
        x = self.branching
        best = None
        level = 0
        while lo <= hi:
            row = self.levels[level]
            if hi - lo < x or level + 1 == len(self.levels):
                m = min(row[lo:hi + 1])
                return m if best is None else min(best, m)
            # partial blocks at the ends, full blocks one level up
            lo_end = -(-lo // x) * x
            hi_start = (hi + 1) // x * x
            parts = row[lo:lo_end] + row[hi_start:hi + 1]
            if parts:
                m = min(parts)
                best = m if best is None else min(best, m)
            lo, hi = lo_end // x, hi_start // x - 1
            level += 1
        return best

    def next_leq(self, i: int, t: int) -> int:
        """Smallest ``j >= i`` with ``values[j] <= t``, or ``len``."""
        n = len(self.values)
        if i >= n:
            return n
        x = self.branching
        level, pos = 0, max(i, 0)
        while True:
            row = self.levels[level]
            end = min(len(row), (pos // x + 1) * x)
            for j in range(pos, end):
                if row[j] <= t:
                    return self._descend_first(level, j, t)
            if level + 1 == len(self.levels) or end >= len(row):
                return n
            pos = end // x
            level += 1

    def _descend_first(self, level: int, j: int, t: int) -> int:
        x = self.branching
        while level > 0:
            level -= 1
            row = self.levels[level]
            for c in range(j * x, min(len(row), j * x + x)):
                if row[c] <= t:
                    j = c
                    break
        return j

    def prev_leq(self, i: int, t: int) -> int:
        """Largest ``j <= i`` with ``values[j] <= t``, or -1."""
        if i < 0:
            return -1
        x = self.branching
        level, pos = 0, min(i, len(self.values) - 1)
        while True:
            row = self.levels[level]
            start = pos // x * x
            for j in range(pos, start - 1, -1):
                if row[j] <= t:
                    return self._descend_last(level, j, t)
            if level + 1 == len(self.levels) or start == 0:
                return -1
            pos = start // x - 1
            level += 1

    def _descend_last(self, level: int, j: int, t: int) -> int:
        x = self.branching
        while level > 0:
            level -= 1
            row = self.levels[level]
            for c in range(min(len(row), j * x + x) - 1, j * x - 1, -1):
                if row[c] <= t:
                    j = c
                    break
        return j

    def prev_less(self, i: int, t: int) -> int:
        return self.prev_leq(i, t - 1)

    def next_less(self, i: int, t: int) -> int:
        return self.next_leq(i, t - 1)

    def rmq(self, lo: int, hi: int) -> int:
        """Leftmost position of the minimum in ``[lo, hi]``."""
        return self.next_leq(lo, self.range_min(lo, hi))

    def psv(self, i: int) -> int:
        self._check(i)
        return self.prev_less(i - 1, self.values[i])

    def nsv(self, i: int) -> int:
        self._check(i)
        return self.next_less(i + 1, self.values[i])

    def parent(self, r: Range) -> tuple[Range, int]:
        """Smallest LCP interval strictly enclosing ``r`` and its depth."""
        n = len(self.values)
        sp, ep = r
        if is_empty(r) or (sp == 0 and ep == n - 1):
            return (0, n - 1), 0
        depth = max(self.values[sp], self.values[ep + 1] if ep + 1 < n else 0)
        if depth == 0:
            return (0, n - 1), 0
        lo = max(self.prev_less(sp, depth), 0)
        hi = self.next_less(ep + 1, depth) - 1
        return (lo, hi), depth

    def size_in_bits(self) -> int:
        width = max(self.values, default=0).bit_length() or 1
        return width * len(self.values)

    def write(self, out: WordWriter) -> None:
        out.put(len(self.values))
        out.put(self.branching)
        out.extend(self.values)

    @classmethod
    def read(cls, inp: WordReader) -> "LcpSupport":
        n = inp.get()
        x = inp.get()
        return cls(inp.take(n), x)


def build_lcp(pg) -> LcpSupport:
    return LcpSupport(lcp_array(pg.keys))


def redundancy_array(lcp: Sequence[int], values: Sequence[Iterable[int]]) -> list[int]:
    """Per adjacent-node boundary, the duplicate value count of the subtree first split there."""
    n = len(values)
    red = [0] * max(n - 1, 0)
    if n == 0:
        return red

    class Node:
        __slots__ = ("depth", "first", "vals", "child_sum")

        def __init__(self, depth: int, first: int) -> None:
            self.depth = depth
            self.first = first
            self.vals: set[int] = set()
            self.child_sum = 0

        def add(self, vals: set[int]) -> None:
            self.child_sum += len(vals)
            if len(vals) > len(self.vals):
                self.vals, vals = vals, self.vals
            self.vals |= vals

        def close(self) -> set[int]:
            if self.first >= 0:
                red[self.first] = self.child_sum - len(self.vals)
            return self.vals

    stack = [Node(0, -1)]
    pending = set(values[0])
    for i in range(1, n):
        h = lcp[i]
        while stack[-1].depth > h:
            top = stack.pop()
            top.add(pending)
            pending = top.close()
        if stack[-1].depth < h:
            stack.append(Node(h, i - 1))
        elif stack[-1].first < 0:
            stack[-1].first = i - 1
        stack[-1].add(pending)
        pending = set(values[i])
    while stack:
        top = stack.pop()
        top.add(pending)
        pending = top.close()
    return red


def _unary_zeros(counts: Iterable[int]) -> BitVec:
    bits: list[int] = []
    for x in counts:
        bits.extend([0] * x)
        bits.append(1)
    return BitVec(bits)


def _prefix_sum(bv: BitVec, a: int, b: int) -> int:
    """Sum of encoded items ``a..b`` in a ``0^x 1`` stream."""
    if b < a:
        return 0
    return (bv.select(b + 1) - b) - (bv.select(a) + 1 - a)


@dataclass
class CountSupport:
    redundancy: BitVec
    extra: BitVec

    @classmethod
    def build(cls, lcp: Sequence[int], values: Sequence[Iterable[int]]) -> "CountSupport":
        red = redundancy_array(lcp, values)
        return cls(_unary_zeros(red), _unary_zeros(len(set(v)) - 1 for v in values))

    def count(self, r: Range) -> int:
        sp, ep = r
        if ep < sp:
            return 0
        total = (ep - sp + 1) + _prefix_sum(self.extra, sp, ep)
        return total - _prefix_sum(self.redundancy, sp, ep - 1)

    def size_in_bits(self) -> int:
        return self.redundancy.size_in_bits() + self.extra.size_in_bits()

    def write(self, out: WordWriter) -> None:
        self.redundancy.write(out)
        self.extra.write(out)

    @classmethod
    def read(cls, inp: WordReader) -> "CountSupport":
        return cls(BitVec.read(inp), BitVec.read(inp))


def build_count(pg) -> CountSupport:
    return CountSupport.build(lcp_array(pg.keys), pg.values)


@dataclass(frozen=True)
class Mem:
    start: int
    end: int  # exclusive
    range: Range
    capped: bool

    @property
    def length(self) -> int:
        return self.end - self.start

    def flags(self) -> str:
        return "verify" if self.capped else "-"


def shorten(lcp: LcpSupport, r: Range, length: int) -> Range:
    """Range of the first ``length`` symbols of the pattern whose range is ``r``."""
    if length == 0:
        return (0, len(lcp) - 1)
    while True:
        p, depth = lcp.parent(r)
        if depth < length or p == r:
            return r
        r = p


def matching_statistics(idx: EncodedIndex, lcp: LcpSupport, query: str | Sequence[int]) -> list[tuple[int, Range]]:
    """Per position, the longest indexed prefix of the query suffix (at most the order)."""
    q = encode_pattern(query)
    cap = idx.order
    full = idx.full_range()
    out: list[tuple[int, Range]] = [(0, full)] * len(q)
    r, length = full, 0
    for i in range(len(q) - 1, -1, -1):
        c = q[i]
        while True:
            nxt = idx.lf_range(r, c)
            if not is_empty(nxt):
                r, length = nxt, length + 1
                if length > cap:
                    length = cap
                    r = shorten(lcp, r, cap)
                break
            if length == 0:
                r = full
                break
            r, length = lcp.parent(r)
        out[i] = (length, r)
    return out


def find_mems(idx: EncodedIndex, lcp: LcpSupport, query: str | Sequence[int], min_len: int = 1) -> list[Mem]:
    """Maximal exact matches of length at least ``min_len``, capped at the index order."""
    if min_len < 1:
        raise ValueError("min_len must be at least 1")
    ms = matching_statistics(idx, lcp, query)
    mems = []
    for i, (length, r) in enumerate(ms):
        if length < min_len:
            continue
        if i > 0 and ms[i - 1][0] > length:
            continue
        mems.append(Mem(i, i + length, r, length >= idx.order))
    return mems
