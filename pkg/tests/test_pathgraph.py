import itertools
import random

import pytest

from gcsa2.graph import decode, encode, from_edges
from gcsa2.pathgraph import (PruneError, build_debruijn, is_prefix_free, long_edge_violations,
                             max_preds_per_label, maximally_prune, oracle_find, oracle_locate,
                             path_graph_locate, prefix_match, prunable_prefixes, prune)
from oracles import dfs_locate, padded_kmers, random_graph

ALL4 = [""] + ["".join(p) for n in range(1, 5) for p in itertools.product("ACGT", repeat=n)]


def key_values(pg):
    return {decode(k): set(v) for k, v in zip(pg.keys, pg.values)}


def test_debruijn_g2(g2):
    pg = build_debruijn(g2, 3)
    # ids: s:2=0, s:1=1, s:0=2, A=3, C=4, G=5, T=6, t=7
    assert key_values(pg) == {
        "ACT": {3}, "AGT": {3}, "CT$": {4}, "GT$": {5}, "T$$": {6},
        "#AC": {2}, "#AG": {2}, "##A": {1}, "###": {0}, "$$$": {7},
    }
    assert pg.keys == sorted(pg.keys)


def test_debruijn_repeated_kmer():
    pg = build_debruijn(from_edges("GCATCATA", [(i, i + 1) for i in range(7)]), 3)
    assert len(pg.values[pg.index_of("CAT")]) == 2


def test_debruijn_single_node():
    pg = build_debruijn(from_edges("A", []), 1)
    assert [decode(k) for k in pg.keys] == ["$", "#", "A"]


def test_debruijn_matches_walk_oracle():
    rng = random.Random(8)
    for _ in range(40):
        g = random_graph(rng, 30, 0.2, 0.05)
        k = rng.randint(1, 5)
        assert key_values(build_debruijn(g, k)) == padded_kmers(g, k, k)


def test_prune_examples(g2):
    pg = build_debruijn(g2, 3)
    merged = prune(pg, "A")
    assert key_values(merged)["A"] == {3}
    assert "ACT" not in key_values(merged)
    assert key_values(prune(pg, "#A"))["#A"] == {2}
    with pytest.raises(PruneError):
        prune(pg, "##")
    with pytest.raises(PruneError):
        prune(pg, "GG")


def test_maximally_prune_g2(g2):
    pruned = maximally_prune(build_debruijn(g2, 3))
    assert {decode(k) for k in pruned.keys} == {"###", "##A", "#A", "A", "C", "G", "T", "$"}
    assert pruned.dump() == (
        "$\t{7}\t{T}\n###\t{0}\t{$}\n##A\t{1}\t{#}\n#A\t{2}\t{#}\n"
        "A\t{3}\t{#}\nC\t{4}\t{A}\nG\t{5}\t{A}\nT\t{6}\t{CG}\n"
    )


def test_maximally_prune_distinct_chain():
    pruned = maximally_prune(build_debruijn(from_edges("ACGT", [(0, 1), (1, 2), (2, 3)]), 3))
    real = [k for k in pruned.keys if k[0] not in encode("#$")]
    assert real and all(len(k) == 1 for k in real)


def test_maximally_prune_fixed_point():
    g = from_edges("ACAC", [(0, 1), (1, 2), (2, 3), (3, 0)])
    once = maximally_prune(build_debruijn(g, 3))
    assert maximally_prune(once).same_as(once)
    order1 = build_debruijn(g, 1)
    assert maximally_prune(order1).same_as(order1)


def test_oracle_find_examples(g2):
    pruned = maximally_prune(build_debruijn(g2, 3))
    assert oracle_find(pruned, "A") == {pruned.index_of("A")}
    assert oracle_find(pruned, "") == set(range(len(pruned)))
    assert oracle_find(pruned, "AT") == set()


def test_oracle_locate_examples(g2):
    assert oracle_locate(g2, "A", 3) == {3}
    assert oracle_locate(g2, "T", 3) == {6}
    assert oracle_locate(g2, "CG", 3) == set()


def graphs(seed, count, max_nodes=20):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_graph(rng, max_nodes, 0.25, 0.05), rng.randint(1, 4)


def test_prefix_free_after_every_prune():
    rng = random.Random(2)
    for g, k in graphs(21, 25):
        pg = build_debruijn(g, k)
        assert is_prefix_free(pg.keys)
        while True:
            cands = prunable_prefixes(pg)
            if not cands:
                break
            pg = prune(pg, rng.choice(cands))
            assert is_prefix_free(pg.keys)


def test_no_false_negatives_or_short_false_positives():
    for g, k in graphs(22, 25):
        full = build_debruijn(g, k)
        pruned = maximally_prune(full)
        for x in ALL4[1:]:
            if len(x) > k:
                continue
            truth = dfs_locate(g, x, k)
            assert oracle_locate(g, x, k) == truth
            assert path_graph_locate(full, x) == truth
            assert path_graph_locate(pruned, x) == truth


def test_k_equivalence_of_every_pruning_stage():
    rng = random.Random(4)
    fixtures = [from_edges("ACGT", [(0, 1), (0, 2), (1, 3), (2, 3)]),
                from_edges("ACGT", [(0, 1), (1, 2), (2, 3), (3, 0)]),
                from_edges("AACG", [(0, 1), (1, 2), (1, 3), (2, 3)])]
    for g in fixtures:
        for k in (2, 3, 4):
            pg = build_debruijn(g, k)
            expected = {x: path_graph_locate(pg, x) for x in ALL4 if len(x) <= k}
            while prunable_prefixes(pg):
                pg = prune(pg, rng.choice(prunable_prefixes(pg)))
                assert {x: path_graph_locate(pg, x) for x in expected} == expected


def test_maximal_pruning_edge_bound():
    for g, k in graphs(23, 40):
        pruned = maximally_prune(build_debruijn(g, k))
        assert long_edge_violations(pruned) == []
        assert max_preds_per_label(pruned) <= 1
        assert prunable_prefixes(pruned) == []


def test_find_is_a_contiguous_prefix_match_range():
    for g, k in graphs(24, 20):
        pruned = maximally_prune(build_debruijn(g, k))
        for x in ALL4:
            if len(x) > k:
                continue
            found = oracle_find(pruned, x)
            pat = encode(x)
            matching = {i for i, key in enumerate(pruned.keys) if prefix_match(key, pat)}
            covering = {i for i in matching if len(pruned.keys[i]) >= len(pat)}
            assert covering <= found <= matching
            if found:
                assert found == set(range(min(found), max(found) + 1))


def test_edges_respect_keys():
    for g, k in graphs(25, 20):
        for pg in (build_debruijn(g, k), maximally_prune(build_debruijn(g, k))):
            sink = pg.sink
            for u, v in pg.edges:
                if u == sink:
                    continue
                assert prefix_match(pg.keys[u], pg.keys[u][:1] + pg.keys[v])
