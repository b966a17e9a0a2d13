import io
import json

import pytest

from gcsa2.cli import main
from gcsa2.container import IndexContainer
from gcsa2.graph import C, G, load_graph
from gcsa2.pathgraph import build_debruijn, maximally_prune
from gcsa2.succinct import BitVec
from conftest import data_path


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def g2_index(tmp_path, g2_file):
    path = str(tmp_path / "g2.idx")
    code, _ = run("build", g2_file, "-o", path, "--order", "3")
    assert code == 0
    return path


def stats_of(text):
    return dict(line.split("\t") for line in text.splitlines())


def test_build_reports_stats(tmp_path, g2_file):
    code, text = run("build", g2_file, "-o", str(tmp_path / "a.idx"), "--order", "3")
    assert code == 0
    stats = stats_of(text)
    assert stats["nodes"] == "8"
    assert stats["order"] == "3"
    assert {"kmers", "graph_bits", "index_bits", "bits_per_kmer"} <= set(stats)


def test_build_default_order_matches_oracle(tmp_path, g2_file):
    code, text = run("build", g2_file, "-o", str(tmp_path / "a.idx"), "--json")
    assert code == 0
    stats = json.loads(text)
    expected = len(maximally_prune(build_debruijn(load_graph(g2_file), 4)))
    assert stats["order"] == 4 and stats["nodes"] == expected == 9


def test_build_doubling_reports_order(tmp_path, g2_file):
    code, text = run("build", g2_file, "-o", str(tmp_path / "a.idx"), "--doubling", "2", "--json")
    assert code == 0
    assert json.loads(text)["order"] == 16


def test_build_empty_graph(tmp_path):
    graph = tmp_path / "empty.tsv"
    graph.write_text("")
    idx = str(tmp_path / "e.idx")
    assert run("build", str(graph), "-o", idx)[0] == 0
    code, text = run("stats", idx)
    assert stats_of(text)["input_nodes"] == "0"
    assert run("verify", idx, str(graph))[0] == 0


def test_query_locate(g2_index):
    code, text = run("query", "locate", g2_index, "A", "T", "CG", "ACT", "")
    assert code == 0
    assert text.splitlines() == [
        "A\t4\t4\t{3}", "T\t7\t7\t{6}", "CG\t5\t4\t{}", "ACT\t4\t4\t{3}", "\t0\t7\t{0,1,2,3,4,5,6,7}",
    ]


def test_query_find_and_count(g2_index):
    assert run("query", "find", g2_index, "T")[1] == "T\t7\t7\n"
    code, text = run("query", "count", g2_index, "", "A")
    assert text.splitlines() == ["\t0\t7\t8", "A\t4\t4\t1"]


def test_query_mem(g2_index):
    code, text = run("query", "mem", g2_index, "ACGT", "--min-len", "2")
    lines = text.splitlines()
    assert lines[0].split("\t")[0] == "ACGT" and lines[0].endswith("\t2")
    assert [tuple(x.split("\t")[:2]) for x in lines[1:]] == [("0", "2"), ("2", "4")]


def test_query_json_and_patterns_file(tmp_path, g2_index):
    pats = tmp_path / "p.txt"
    pats.write_text("A\nGT\n")
    code, text = run("query", "locate", g2_index, "--patterns-file", str(pats), "--json")
    recs = [json.loads(x) for x in text.splitlines()]
    assert [r["pattern"] for r in recs] == ["A", "GT"]
    assert recs[1]["values"] == [5]


def test_query_verify_filters_false_positives(tmp_path):
    graph = tmp_path / "acag.tsv"
    graph.write_text("N\t1\tA\nN\t2\tC\nN\t3\tA\nN\t4\tG\nE\t1\t2\nE\t2\t3\nE\t3\t4\n")
    idx = str(tmp_path / "acag.idx")
    assert run("build", str(graph), "-o", idx, "--order", "1")[0] == 0
    assert run("query", "locate", idx, "CAC")[1].endswith("\t{2}\n")
    code, text = run("query", "locate", idx, "CAC", "--verify", str(graph))
    assert text.endswith("\t{}\tfiltered={2}\n")


@pytest.mark.parametrize("pattern", ["ZZZ", "A#", "$"])
def test_bad_patterns_are_usage_errors(g2_index, pattern):
    assert run("query", "find", g2_index, pattern)[0] == 2


def test_usage_errors(g2_index, g2_file, tmp_path):
    assert run("query", "mem", g2_index, "A", "--min-len", "0")[0] == 2
    assert run("build", g2_file, "-o", str(tmp_path / "x"), "--sample-period", "0")[0] == 2
    with pytest.raises(SystemExit) as exc:
        run("frobnicate")
    assert exc.value.code == 2


def test_parse_and_container_errors(tmp_path, g2_index):
    bad = tmp_path / "bad.tsv"
    bad.write_text("N\t1\tQ\n")
    assert run("build", str(bad), "-o", str(tmp_path / "x"))[0] == 3
    junk = tmp_path / "junk.idx"
    junk.write_bytes(b"not an index at all, just text")
    assert run("stats", str(junk))[0] == 3


def test_io_error(tmp_path):
    assert run("build", str(tmp_path / "missing.tsv"), "-o", str(tmp_path / "x"))[0] == 1


def test_resource_caps(tmp_path, g2_file, g2_index):
    assert run("build", g2_file, "-o", str(tmp_path / "x"), "--path-cap", "3")[0] == 5
    assert run("verify", g2_index, g2_file, "--node-cap", "2")[0] == 5


def test_verify_fixtures(tmp_path):
    for name in ("g2.tsv", "bubble.gfa", "cycle.tsv", "empty.tsv"):
        idx = str(tmp_path / f"{name}.idx")
        assert run("build", data_path(name), "-o", idx, "--order", "2", "--doubling", "1")[0] == 0
        code, text = run("verify", idx, data_path(name))
        assert code == 0 and text.startswith("ok"), name


def test_verify_detects_corrupted_label_bit(tmp_path, g2_index, g2_file):
    container = IndexContainer.load(g2_index)
    idx = container.index
    node_c = 5  # key "C"; its only in-label is A
    bits = list(idx.labels[G])
    assert bits[node_c] == 0 and idx.labels[C][node_c] == 0
    bits[node_c] = 1
    idx.labels[G] = BitVec(bits)
    bad = str(tmp_path / "bad.idx")
    container.save(bad)
    code, text = run("verify", bad, g2_file)
    assert code == 4
    assert text.startswith("FAIL")


def test_output_is_deterministic(tmp_path, g2_file, monkeypatch):
    a, b = str(tmp_path / "a.idx"), str(tmp_path / "b.idx")
    run("build", g2_file, "-o", a, "--order", "2", "--doubling", "1")
    run("build", g2_file, "-o", b, "--order", "2", "--doubling", "1")
    assert open(a, "rb").read() == open(b, "rb").read()
    pats = ["A", "C", "GT", "ACGT", "TTT", "", "AG", "CT"] * 5
    monkeypatch.setenv("GCSA2_THREADS", "1")
    single = run("query", "locate", a, *pats)[1]
    monkeypatch.setenv("GCSA2_THREADS", "4")
    assert run("query", "locate", a, *pats)[1] == single
    assert run("query", "locate", a, *pats)[1] == single
    monkeypatch.setenv("GCSA2_THREADS", "lots")
    assert run("query", "locate", a, "A")[0] == 2
