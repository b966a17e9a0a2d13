from hypothesis import given, settings
from hypothesis import strategies as st

from gcsa2.graph import decode, encode
from gcsa2.textindex import backward_search, bwt, lcp_array, suffix_array
from oracles import sort_key


def naive_sa(text):
    return sorted(range(len(text)), key=lambda i: sort_key(text[i:]))


def naive_lcp(text, sa):
    out = [0]
    for a, b in zip(sa, sa[1:]):
        x, y = text[a:], text[b:]
        h = 0
        while h < min(len(x), len(y)) and x[h] == y[h]:
            h += 1
        out.append(h)
    return out


def test_small_text_examples():
    text = "GCATCATA$"
    sa = suffix_array(text)
    assert sa == naive_sa(text) == [8, 7, 5, 2, 4, 1, 0, 6, 3]
    assert decode(bwt(text)) == "ATCCTG$AA"
    assert lcp_array(text) == naive_lcp(text, sa) == [0, 0, 1, 2, 0, 3, 0, 0, 1]


def test_backward_search_counts():
    text = "GCATCATA$"
    sa = suffix_array(text)
    sp, ep = backward_search(bwt(text), encode("CAT"))
    assert sorted(sa[sp:ep + 1]) == [1, 4]
    assert backward_search(bwt(text), encode("GG"))[1] < backward_search(bwt(text), encode("GG"))[0]


def test_empty_text():
    assert suffix_array("") == []


@settings(max_examples=150, deadline=None)
@given(st.text(alphabet="ACGT", max_size=60))
def test_matches_naive_sort(body):
    text = body + "$"
    sa = suffix_array(text)
    assert sa == naive_sa(text)
    assert lcp_array(text, sa) == naive_lcp(text, sa)
    b = bwt(text, sa)
    assert sorted(b) == sorted(encode(text))
