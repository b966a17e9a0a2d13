"""Plain-text suffix array, BWT and LCP helpers used to cross-check the graph index."""

from __future__ import annotations

from typing import Sequence

from .graph import encode


def suffix_array(text: str | Sequence[int]) -> list[int]:
    """Suffix array by prefix doubling; the text should end with a unique smallest symbol."""
    seq = encode(text) if isinstance(text, str) else tuple(text)
    n = len(seq)
    if n == 0:
        return []
    rank = list(seq)
    sa = list(range(n))
    h = 1
    while True:
        key = lambda i: (rank[i], rank[i + h] if i + h < n else -1)
        sa.sort(key=key)
        new = [0] * n
        for j in range(1, n):
            new[sa[j]] = new[sa[j - 1]] + (key(sa[j]) != key(sa[j - 1]))
        rank = new
        if rank[sa[-1]] == n - 1:
            return sa
        h *= 2


def bwt(text: str | Sequence[int], sa: Sequence[int] | None = None) -> tuple[int, ...]:
    seq = encode(text) if isinstance(text, str) else tuple(text)
    if sa is None:
        sa = suffix_array(seq)
    return tuple(seq[i - 1] for i in sa)


def lcp_array(text: str | Sequence[int], sa: Sequence[int] | None = None) -> list[int]:
    """Kasai et al. linear-time LCP; ``lcp[0] = 0``."""
    seq = encode(text) if isinstance(text, str) else tuple(text)
    if sa is None:
        sa = suffix_array(seq)
    n = len(seq)
    inv = [0] * n
    for r, i in enumerate(sa):
        inv[i] = r
    lcp = [0] * n
    h = 0
    for i in range(n):
        r = inv[i]
        if r == 0:
            h = 0
            continue
        j = sa[r - 1]
        while i + h < n and j + h < n and seq[i + h] == seq[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return lcp


def backward_search(bwt_seq: Sequence[int], pattern: Sequence[int]) -> tuple[int, int]:
    """Suffix-array range of ``pattern`` using C array and rank over the BWT."""
    counts: dict[int, int] = {}
    for c in bwt_seq:
        counts[c] = counts.get(c, 0) + 1
    c_array = {}
    total = 0
    for c in sorted(counts):
        c_array[c] = total
        total += counts[c]
    sp, ep = 0, len(bwt_seq) - 1
    for c in reversed(pattern):
        if c not in c_array:
            return 0, -1
        sp = c_array[c] + sum(1 for x in bwt_seq[:sp] if x == c)
        ep = c_array[c] + sum(1 for x in bwt_seq[:ep + 1] if x == c) - 1
        if ep < sp:
            break
    return sp, ep
