"""Static rank/select structures over bits and small-alphabet strings.

Conventions follow SDSL: ``rank(i, c)`` counts occurrences of ``c`` in
``[0, i)`` and ``select(i, c)`` is the position of the ``i``-th occurrence
(1-based), with ``select(0, c) == -1``.
"""

from __future__ import annotations

import struct
from bisect import bisect_left
from typing import Iterable, Iterator, Sequence

WORD = 64
_SELECT_SAMPLE = 64
_MASK = (1 << WORD) - 1


class WordWriter:
    """Accumulates unsigned 64-bit little-endian words."""

    def __init__(self) -> None:
        self.words: list[int] = []

    def put(self, value: int) -> None:
        if value < 0 or value > _MASK:
            raise ValueError(f"word out of range: {value}")
        self.words.append(value)

    def put_signed(self, value: int) -> None:
        self.put(value & _MASK)

    def extend(self, values: Iterable[int]) -> None:
        for v in values:
            self.put(v)

    def to_bytes(self) -> bytes:
        return struct.pack(f"<{len(self.words)}Q", *self.words)


class WordReader:
    def __init__(self, data: bytes) -> None:
        if len(data) % 8:
            raise ValueError("payload is not a whole number of 64-bit words")
        self.words = struct.unpack(f"<{len(data) // 8}Q", data)
        self.pos = 0

    def get(self) -> int:
        if self.pos >= len(self.words):
            raise ValueError("truncated payload")
        v = self.words[self.pos]
        self.pos += 1
        return v

    def get_signed(self) -> int:
        v = self.get()
        return v - (1 << WORD) if v >> (WORD - 1) else v

    def take(self, n: int) -> tuple[int, ...]:
        if self.pos + n > len(self.words):
            raise ValueError("truncated payload")
        out = self.words[self.pos:self.pos + n]
        self.pos += n
        return out

    def done(self) -> bool:
        return self.pos == len(self.words)


def _nth_set_bit(word: int, r: int) -> int:
    """Offset of the r-th (1-based) set bit of ``word``."""
    for _ in range(r - 1):
        word &= word - 1
    return (word & -word).bit_length() - 1


class BitVec:
    """Plain bitvector with a cumulative count per 64-bit word.

    Rank is one table lookup plus a popcount; select bisects the cumulative
    table between sampled word positions (one sample per 64 set bits).
    """

    def __init__(self, bits: Iterable[int] = ()) -> None:
        words: list[int] = []
        cur = 0
        n = 0
        for b in bits:
            if b:
                cur |= 1 << (n & 63)
            n += 1
            if n & 63 == 0:
                words.append(cur)
                cur = 0
        if n & 63:
            words.append(cur)
        self._init(words, n)

    @classmethod
    def from_words(cls, words: Sequence[int], length: int) -> "BitVec":
        self = cls.__new__(cls)
        self._init(list(words), length)
        return self

    @classmethod
    def from_positions(cls, positions: Iterable[int], length: int) -> "BitVec":
        words = [0] * ((length + 63) // 64)
        for p in positions:
            if not 0 <= p < length:
                raise IndexError(f"position {p} outside [0, {length})")
            words[p >> 6] |= 1 << (p & 63)
        return cls.from_words(words, length)

    def _init(self, words: list[int], length: int) -> None:
        if len(words) != (length + 63) // 64:
            raise ValueError("word count does not match length")
        if length & 63 and words and words[-1] >> (length & 63):
            raise ValueError("bits set beyond length")
        self._words = words
        self._n = length
        cum = [0] * (len(words) + 1)
        total = 0
        samples = []
        for w, word in enumerate(words):
            cum[w] = total
            c = word.bit_count()
            # the word holding the (64m+1)-th one starts a new sample bucket
            while len(samples) * _SELECT_SAMPLE < total + c:
                samples.append(w)
            total += c
        cum[len(words)] = total
        self._cum = cum
        self._ones = total
        self._samples = samples

    def __len__(self) -> int:
        return self._n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self._n:
            raise IndexError(f"bit index {i} outside [0, {self._n})")
        return (self._words[i >> 6] >> (i & 63)) & 1

    def __iter__(self) -> Iterator[int]:
        for i in range(self._n):
            yield (self._words[i >> 6] >> (i & 63)) & 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BitVec) and self._n == other._n and self._words == other._words

    def __repr__(self) -> str:
        return f"BitVec({''.join(map(str, self))!r})" if self._n <= 64 else f"BitVec(n={self._n})"

    @property
    def words(self) -> list[int]:
        return self._words

    def count(self, c: int = 1) -> int:
        return self._ones if c else self._n - self._ones

    def rank1(self, i: int) -> int:
        if not 0 <= i <= self._n:
            raise IndexError(f"rank position {i} outside [0, {self._n}]")
        w = i >> 6
        r = i & 63
        if r == 0:
            return self._cum[w]
        return self._cum[w] + (self._words[w] & ((1 << r) - 1)).bit_count()

    def rank(self, i: int, c: int = 1) -> int:
        r1 = self.rank1(i)
        return r1 if c else i - r1

    def select1(self, i: int) -> int:
        if i == 0:
            return -1
        if not 0 < i <= self._ones:
            raise IndexError(f"select({i}, 1) but only {self._ones} ones")
        m = (i - 1) // _SELECT_SAMPLE
        lo = self._samples[m]
        hi = self._samples[m + 1] + 1 if m + 1 < len(self._samples) else len(self._words)
        w = bisect_left(self._cum, i, lo, hi + 1) - 1
        return (w << 6) + _nth_set_bit(self._words[w], i - self._cum[w])

    def select0(self, i: int) -> int:
        if i == 0:
            return -1
        zeros = self._n - self._ones
        if not 0 < i <= zeros:
            raise IndexError(f"select({i}, 0) but only {zeros} zeros")
        lo, hi = 0, len(self._words) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if (mid << 6) - self._cum[mid] < i:
                lo = mid
            else:
                hi = mid - 1
        w = lo
        inv = ~self._words[w] & _MASK
        return (w << 6) + _nth_set_bit(inv, i - ((w << 6) - self._cum[w]))

    def select(self, i: int, c: int = 1) -> int:
        return self.select1(i) if c else self.select0(i)

    def ones(self) -> Iterator[int]:
        for w, word in enumerate(self._words):
            while word:
                low = word & -word
                yield (w << 6) + low.bit_length() - 1
                word ^= low

    def size_in_bits(self) -> int:
        return self._n

    def write(self, out: WordWriter) -> None:
        out.put(self._n)
        out.extend(self._words)

    @classmethod
    def read(cls, inp: WordReader) -> "BitVec":
        n = inp.get()
        return cls.from_words(inp.take((n + 63) // 64), n)


class SparseBitVec:
    """Bitvector stored as its sorted list of set positions."""

    def __init__(self, positions: Iterable[int], universe: int) -> None:
        pos = list(positions)
        for a, b in zip(pos, pos[1:]):
            if a >= b:
                raise ValueError("positions must be strictly increasing")
        if pos and (pos[0] < 0 or pos[-1] >= universe):
            raise ValueError("position outside universe")
        self._pos = pos
        self._n = universe

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "SparseBitVec":
        pos = []
        n = 0
        for i, b in enumerate(bits):
            if b:
                pos.append(i)
            n = i + 1
        return cls(pos, n)

    def __len__(self) -> int:
        return self._n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self._n:
            raise IndexError(f"bit index {i} outside [0, {self._n})")
        j = bisect_left(self._pos, i)
        return int(j < len(self._pos) and self._pos[j] == i)

    def __iter__(self) -> Iterator[int]:
        it = iter(self._pos)
        nxt = next(it, None)
        for i in range(self._n):
            if i == nxt:
                yield 1
                nxt = next(it, None)
            else:
                yield 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SparseBitVec) and self._n == other._n and self._pos == other._pos

    @property
    def positions(self) -> list[int]:
        return self._pos

    def count(self, c: int = 1) -> int:
        return len(self._pos) if c else self._n - len(self._pos)

    def rank1(self, i: int) -> int:
        if not 0 <= i <= self._n:
            raise IndexError(f"rank position {i} outside [0, {self._n}]")
        return bisect_left(self._pos, i)

    def rank(self, i: int, c: int = 1) -> int:
        r1 = self.rank1(i)
        return r1 if c else i - r1

    def select1(self, i: int) -> int:
        if i == 0:
            return -1
        if not 0 < i <= len(self._pos):
            raise IndexError(f"select({i}, 1) but only {len(self._pos)} ones")
        return self._pos[i - 1]

    def select0(self, i: int) -> int:
        if i == 0:
            return -1
        zeros = self._n - len(self._pos)
        if not 0 < i <= zeros:
            raise IndexError(f"select({i}, 0) but only {zeros} zeros")
        # the i-th zero sits at i-1 + (ones before it); binary search on that count
        lo, hi = 0, len(self._pos)
        while lo < hi:
            mid = (lo + hi) // 2
            if self._pos[mid] - mid < i:
                lo = mid + 1
            else:
                hi = mid
        return i - 1 + lo

    def select(self, i: int, c: int = 1) -> int:
        return self.select1(i) if c else self.select0(i)

    def ones(self) -> Iterator[int]:
        return iter(self._pos)

    def size_in_bits(self) -> int:
        width = max(1, (self._n - 1).bit_length()) if self._n else 1
        return len(self._pos) * width

    def write(self, out: WordWriter) -> None:
        out.put(self._n)
        out.put(len(self._pos))
        out.extend(self._pos)

    @classmethod
    def read(cls, inp: WordReader) -> "SparseBitVec":
        n = inp.get()
        m = inp.get()
        return cls(inp.take(m), n)


class CharSeq:
    """String over ``[0, sigma)`` with one indicator bitvector per symbol."""

    def __init__(self, symbols: Iterable[int], sigma: int) -> None:
        syms = bytes(symbols)
        if sigma < 1 or sigma > 16:
            raise ValueError("alphabet size must be in [1, 16]")
        if syms and max(syms) >= sigma:
            raise ValueError("symbol outside alphabet")
        self._syms = syms
        self.sigma = sigma
        n = len(syms)
        positions: list[list[int]] = [[] for _ in range(sigma)]
        for i, s in enumerate(syms):
            positions[s].append(i)
        self._bv = [BitVec.from_positions(p, n) for p in positions]

    def __len__(self) -> int:
        return len(self._syms)

    def __getitem__(self, i: int) -> int:
        return self._syms[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CharSeq) and self.sigma == other.sigma and self._syms == other._syms

    def rank(self, i: int, c: int) -> int:
        if not 0 <= c < self.sigma:
            return 0
        return self._bv[c].rank1(i)

    def select(self, i: int, c: int) -> int:
        if not 0 <= c < self.sigma:
            raise IndexError(f"symbol {c} outside alphabet")
        return self._bv[c].select1(i)

    def count(self, c: int) -> int:
        return self._bv[c].count(1) if 0 <= c < self.sigma else 0

    def size_in_bits(self) -> int:
        return len(self._syms) * max(1, (self.sigma - 1).bit_length())

    def write(self, out: WordWriter) -> None:
        out.put(len(self._syms))
        out.put(self.sigma)
        padded = self._syms + bytes(-len(self._syms) % 8)
        out.extend(struct.unpack(f"<{len(padded) // 8}Q", padded))

    @classmethod
    def read(cls, inp: WordReader) -> "CharSeq":
        n = inp.get()
        sigma = inp.get()
        raw = struct.pack(f"<{(n + 7) // 8}Q", *inp.take((n + 7) // 8))
        return cls(raw[:n], sigma)


class UnaryVec:
    """Counts ``d >= 1`` encoded as ``0^(d-1) 1`` and concatenated."""

    def __init__(self, bits: BitVec) -> None:
        self.bits = bits

    @classmethod
    def from_counts(cls, counts: Iterable[int]) -> "UnaryVec":
        ones = []
        pos = -1
        for d in counts:
            if d < 1:
                raise ValueError(f"unary counts must be >= 1, got {d}")
            pos += d
            ones.append(pos)
        return cls(BitVec.from_positions(ones, pos + 1))

    def __len__(self) -> int:
        """Number of encoded counts."""
        return self.bits.count(1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, UnaryVec) and self.bits == other.bits

    def unary_range(self, i: int) -> tuple[int, int]:
        if not 0 <= i < len(self):
            raise IndexError(f"item {i} outside [0, {len(self)})")
        return self.bits.select1(i) + 1, self.bits.select1(i + 1)

    def counts(self) -> list[int]:
        out = []
        prev = -1
        for p in self.bits.ones():
            out.append(p - prev)
            prev = p
        return out

    def rank(self, i: int, c: int = 1) -> int:
        return self.bits.rank(i, c)

    def select(self, i: int, c: int = 1) -> int:
        return self.bits.select(i, c)

    def size_in_bits(self) -> int:
        return len(self.bits)

    def write(self, out: WordWriter) -> None:
        self.bits.write(out)

    @classmethod
    def read(cls, inp: WordReader) -> "UnaryVec":
        return cls(BitVec.read(inp))
