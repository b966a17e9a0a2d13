import itertools
import random

import pytest

from gcsa2.graph import A, C, encode as encode_symbols, from_edges, verify_match
from gcsa2.index import (GENERAL, SIMPLIFIED, EncodedIndex, EncodingError, choose_samples, encode,
                         is_empty)
from gcsa2.pathgraph import (build_debruijn, max_preds_per_label, maximally_prune, oracle_find,
                             path_graph_locate, prune)
from oracles import dfs_locate, random_graph

ALL4 = ["".join(p) for n in range(1, 5) for p in itertools.product("ACGT", repeat=n)]


def as_set(r):
    return set(range(r[0], r[1] + 1))


@pytest.fixture
def g2_pruned(g2):
    return maximally_prune(build_debruijn(g2, 3))


@pytest.fixture(params=[GENERAL, SIMPLIFIED])
def g2_index(request, g2_pruned):
    return encode(g2_pruned, request.param)


def test_lf_range_examples(g2_pruned, g2_index):
    t = g2_index.find("T")
    assert as_set(g2_index.lf_range(t, C)) == {g2_pruned.index_of("C")}
    assert is_empty(g2_index.lf_range(t, A))
    assert is_empty(g2_index.lf_range((3, 2), C))


def test_find_examples(g2_pruned, g2_index):
    assert g2_index.find("") == (0, len(g2_pruned) - 1)
    assert as_set(g2_index.find("ACT")) == {g2_pruned.index_of("A")}
    assert is_empty(g2_index.find("TT"))


def test_lf_node_examples(g2_pruned, g2_index):
    assert g2_index.lf_node(g2_pruned.index_of("C")) == g2_pruned.index_of("A")
    assert g2_index.lf_node(g2_pruned.index_of("A")) == g2_pruned.index_of("#A")


def test_lf_node_walks_chain_backwards():
    pg = maximally_prune(build_debruijn(from_edges("ACGT", [(0, 1), (1, 2), (2, 3)]), 3))
    idx = encode(pg)
    i = pg.index_of("T")
    walked = []
    for _ in range(3):
        i = idx.lf_node(i)
        walked.append(pg.keys[i])
    assert walked == [encode_symbols("G"), encode_symbols("C"), encode_symbols("A")]


def test_locate_examples(g2_index):
    assert g2_index.locate(g2_index.find("A")) == {3}
    assert g2_index.locate(g2_index.find("T")) == {6}
    assert g2_index.locate((4, 3)) == set()


def test_single_node_index():
    idx = encode(build_debruijn(from_edges("A", []), 1))
    assert len(idx) == 3
    assert idx.locate(idx.find("A")) == {1}


def test_simplified_rejects_duplicate_label_predecessors(g2):
    # after merging only the A-keys, #AC and #AG both enter node A with label #
    pg = prune(build_debruijn(g2, 3), "A")
    assert max_preds_per_label(pg) == 2
    assert encode(pg, GENERAL)
    with pytest.raises(EncodingError):
        encode(pg, SIMPLIFIED)
    assert encode(maximally_prune(pg), SIMPLIFIED)


def test_component_sizes_agree(g2_pruned):
    gen = encode(g2_pruned, GENERAL)
    simp = encode(g2_pruned, SIMPLIFIED)
    edges = len(g2_pruned.edges)
    assert len(gen.bwt) == edges
    assert sum(gen.inv.counts()) == edges == sum(gen.out.counts())
    assert gen.c_array == simp.c_array
    assert gen.c_array[-1] == edges
    labels = [c for lst in g2_pruned.in_edges() for c, _ in lst]
    for c in range(7):
        assert gen.c_array[c + 1] - gen.c_array[c] == labels.count(c)
    assert gen.sampled.count(1) == len(gen.sample_sizes)
    assert sum(gen.sample_sizes.counts()) == len(gen.sample_values)


def differential(pg, patterns):
    gen = encode(pg, GENERAL)
    simp = encode(pg, SIMPLIFIED)
    for x in patterns:
        r = gen.find(x)
        assert r == simp.find(x)
        assert gen.locate(r) == simp.locate(r)


def test_differential_fixtures(fixture_graphs):
    for g in fixture_graphs.values():
        for k in (2, 3, 4):
            differential(maximally_prune(build_debruijn(g, k)), [x for x in ALL4 if len(x) <= k])


def test_differential_random():
    rng = random.Random(31)
    pats = 0
    while pats < 10_000:
        g = random_graph(rng, 30, 0.2, 0.05)
        k = rng.randint(2, 5)
        patterns = ["".join(rng.choice("ACGT") for _ in range(rng.randint(1, k))) for _ in range(250)]
        differential(maximally_prune(build_debruijn(g, k)), patterns)
        pats += len(patterns)


@pytest.mark.parametrize("period", [1, 2, 64])
def test_find_and_locate_match_oracles(period):
    rng = random.Random(32)
    for _ in range(15):
        g = random_graph(rng, 25, 0.25, 0.05)
        k = rng.randint(2, 4)
        pg = maximally_prune(build_debruijn(g, k))
        for mode in (GENERAL, SIMPLIFIED):
            idx = encode(pg, mode, period)
            for x in ALL4:
                if len(x) > k:
                    continue
                r = idx.find(x)
                assert as_set(r) == oracle_find(pg, x)
                assert idx.locate(r) == path_graph_locate(pg, x) == dfs_locate(g, x, k)


def test_long_patterns_have_only_verifiable_false_positives():
    rng = random.Random(33)
    for _ in range(20):
        g = random_graph(rng, 25, 0.3, 0.05)
        k = 2
        idx = encode(maximally_prune(build_debruijn(g, k)))
        for _ in range(50):
            x = "".join(rng.choice("ACGT") for _ in range(rng.randint(k + 1, 2 * k + 2)))
            got = idx.locate(idx.find(x))
            truth = dfs_locate(g, x, k)
            assert truth <= got
            for v in got - truth:
                assert not verify_match(g, v - k, x)


def test_find_step_count(g2_index):
    trace: list = []
    g2_index.find("ACT", trace)
    assert len(trace) == 3
    trace = []
    g2_index.find("TTA", trace)
    assert len(trace) == 2 and is_empty(trace[-1])


def test_sampling_rules(g2_pruned):
    in_edges = g2_pruned.in_edges()
    every = choose_samples(in_edges, g2_pruned.values, g2_pruned.source, 1)
    assert all(every)
    default = choose_samples(in_edges, g2_pruned.values, g2_pruned.source)
    assert default[g2_pruned.source]
    assert default[g2_pruned.index_of("T")]
    assert not default[g2_pruned.index_of("C")]
    with pytest.raises(ValueError):
        choose_samples(in_edges, g2_pruned.values, g2_pruned.source, 0)


def test_sample_period_bounds_walks():
    g = from_edges("ACGTACGTTGCA", [(i, i + 1) for i in range(11)])
    pg = maximally_prune(build_debruijn(g, 4))
    for period in (1, 3, 5):
        idx = encode(pg, SIMPLIFIED, period)
        for i in range(len(idx)):
            steps = 0
            while not idx.sampled[i]:
                i = idx.lf_node(i)
                steps += 1
            assert steps < period


def test_serialization_round_trip(g2_index):
    data = g2_index.to_bytes()
    back = EncodedIndex.from_bytes(data)
    assert back.to_bytes() == data
    for x in [""] + ALL4[:84]:
        r = g2_index.find(x)
        assert back.find(x) == r
        assert back.locate(r) == g2_index.locate(r)
