"""On-disk index container (layout documented in FORMAT.md)."""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field

from .index import MODES, EncodedIndex
from .succinct import WordReader, WordWriter
from .suffixtree import CountSupport, LcpSupport

MAGIC = b"GCSA2RS1"
VERSION = 1
_HEAD = struct.Struct("<8sIB3x")
_WORD = struct.Struct("<Q")


class ContainerError(ValueError):
    pass


@dataclass
class IndexContainer:
    index: EncodedIndex
    lcp: LcpSupport | None = None
    counts: CountSupport | None = None
    stats: dict = field(default_factory=dict)

    def to_bytes(self) -> bytes:
        idx = self.index
        out = bytearray(_HEAD.pack(MAGIC, VERSION, MODES.index(idx.mode)))
        for x in (idx.order, idx.num_nodes, idx.num_edges):
            out += _WORD.pack(x)
        sections = [idx.to_bytes(), _words(self.lcp), _words(self.counts),
                    json.dumps(self.stats, sort_keys=True).encode() if self.stats else None]
        for payload in sections:
            if payload is None:
                out += _WORD.pack(0) + _WORD.pack(0)
                continue
            out += _WORD.pack(1) + _WORD.pack(len(payload))
            out += payload + b"\0" * (-len(payload) % 8)
        return bytes(out)

    @classmethod
    def from_bytes(cls, data: bytes) -> "IndexContainer":
        if len(data) < _HEAD.size + 24:
            raise ContainerError("file too short for an index container")
        magic, version, mode = _HEAD.unpack_from(data, 0)
        if magic != MAGIC:
            raise ContainerError("not an index container (bad magic)")
        if version != VERSION:
            raise ContainerError(f"unsupported container version {version}")
        pos = _HEAD.size
        order, nodes, edges = (_WORD.unpack_from(data, pos + 8 * i)[0] for i in range(3))
        pos += 24
        payloads = []
        for _ in range(4):
            if pos + 16 > len(data):
                raise ContainerError("truncated section header")
            present = _WORD.unpack_from(data, pos)[0]
            size = _WORD.unpack_from(data, pos + 8)[0]
            pos += 16
            if not present:
                payloads.append(None)
                continue
            if pos + size > len(data):
                raise ContainerError("truncated section")
            payloads.append(data[pos:pos + size])
            pos += size + (-size % 8)
        if payloads[0] is None:
            raise ContainerError("container has no index section")
        try:
            idx = EncodedIndex.from_bytes(payloads[0])
            lcp = LcpSupport.read(WordReader(payloads[1])) if payloads[1] is not None else None
            counts = CountSupport.read(WordReader(payloads[2])) if payloads[2] is not None else None
            stats = json.loads(payloads[3]) if payloads[3] is not None else {}
        except (ValueError, IndexError) as e:
            raise ContainerError(f"corrupt section: {e}") from None
        if mode >= len(MODES) or (MODES[mode], order, nodes, edges) != (idx.mode, idx.order, idx.num_nodes, idx.num_edges):
            raise ContainerError("header does not match index section")
        if lcp is not None and len(lcp) != idx.num_nodes:
            raise ContainerError("LCP section length does not match node count")
        return cls(idx, lcp, counts, stats)

    def save(self, path: str) -> None:
        with open(path, "wb") as f:
            f.write(self.to_bytes())

    @classmethod
    def load(cls, path: str) -> "IndexContainer":
        with open(path, "rb") as f:
            return cls.from_bytes(f.read())


def _words(obj) -> bytes | None:
    if obj is None:
        return None
    w = WordWriter()
    obj.write(w)
    return w.to_bytes()
