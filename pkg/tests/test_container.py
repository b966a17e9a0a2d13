import random

import pytest

from gcsa2.construction import ConstructionConfig, build
from gcsa2.container import MAGIC, ContainerError, IndexContainer
from gcsa2.stats import build_stats


def container_for(g, **kw):
    cfg = ConstructionConfig(**kw)
    result = build(g, cfg)
    return IndexContainer(result.index, result.lcp, result.counts, build_stats(g, result, cfg))


def test_round_trip(g2):
    c = container_for(g2, k=3)
    data = c.to_bytes()
    assert data[:8] == MAGIC
    back = IndexContainer.from_bytes(data)
    assert back.to_bytes() == data
    assert back.stats == c.stats
    assert back.lcp.values == c.lcp.values


def test_optional_sections(g2):
    c = container_for(g2, k=3)
    bare = IndexContainer(c.index)
    back = IndexContainer.from_bytes(bare.to_bytes())
    assert back.lcp is None and back.counts is None and back.stats == {}


@pytest.mark.parametrize("mutate", [
    lambda d: b"XXXXXXXX" + d[8:],
    lambda d: d[:8] + (2).to_bytes(4, "little") + d[12:],
    lambda d: d[:40],
    lambda d: d[:10],
    lambda d: d[:16] + (999).to_bytes(8, "little") + d[24:],
])
def test_rejects_bad_files(g2, mutate):
    data = container_for(g2, k=3).to_bytes()
    with pytest.raises(ContainerError):
        IndexContainer.from_bytes(mutate(data))


def test_save_load(tmp_path, g2):
    c = container_for(g2, k=2, doubling=1)
    path = tmp_path / "g2.idx"
    c.save(str(path))
    assert IndexContainer.load(str(path)).to_bytes() == c.to_bytes()


def test_corrupt_payloads_raise_container_error(g2):
    data = container_for(g2, k=3).to_bytes()
    # index section: 16-byte header, three header words, then present/length words
    start = 16 + 24 + 16
    for offset in (0, 8, 16):
        bad = bytearray(data)
        bad[start + offset:start + offset + 8] = (2 ** 62).to_bytes(8, "little")
        with pytest.raises(ContainerError):
            IndexContainer.from_bytes(bytes(bad))


def test_random_corruption_never_escapes_as_other_errors(g2):
    data = container_for(g2, k=3).to_bytes()
    rng = random.Random(71)
    for _ in range(300):
        bad = bytearray(data)
        pos = rng.randrange(len(bad))
        bad[pos] = rng.randrange(256)
        try:
            IndexContainer.from_bytes(bytes(bad[:rng.choice([len(bad), pos + 1])]))
        except ContainerError:
            pass
