import json

import pytest
from hypothesis import assume, given

from sofic_forge import GeneratingList, block_language, infer_forbidden_words, labelled_iso, left_fischer_cover, loop_graph, sft_certificate
from sofic_forge.errors import NotSftError
from sofic_forge.reproduce import FIG1
from oracles import concatenation_blocks, forbidden_free, graph_blocks
from strategies import is_sft, lists

E1 = GeneratingList.of("aa", "aaa", "b")


def test_example1_cover():
    c = left_fischer_cover(E1)
    assert c.memory == 2
    assert len(c.vertices) == 3
    assert labelled_iso(FIG1, c.graph) is not None
    assert infer_forbidden_words(E1) == {("b", "a", "b")}


def test_golden_mean():
    lst = GeneratingList.of("a", "ab")
    c = left_fischer_cover(lst)
    assert c.memory == 1
    assert infer_forbidden_words(lst) == {("b", "b")}
    assert len(c.vertices) == 2


def test_full_shift_has_memory_zero():
    c = left_fischer_cover(GeneratingList.of("a", "b"))
    assert c.memory == 0
    assert len(c.vertices) == 1
    assert infer_forbidden_words(GeneratingList.of("a", "b")) == set()


def test_strictly_sofic_witness_replays():
    cert = sft_certificate(GeneratingList.of("a", "bb"))
    assert not cert.is_sft
    assert cert.replay()
    label, p, q = cert.witness
    assert p != q and len(p) == len(q) == len(label) + 1
    assert cert.describe().startswith("NOT_SFT witness=")
    with pytest.raises(NotSftError) as info:
        left_fischer_cover(GeneratingList.of("a", "bb"))
    assert info.value.certificate.replay()


def test_tampered_witness_fails_replay():
    cert = sft_certificate(GeneratingList.of("a", "bb"))
    label, p, q = cert.witness
    bad = type(cert)(None, (label, p, p), cert.presentation)
    assert not bad.replay()


@given(lists())
def test_certificate_consistency(lst):
    cert = sft_certificate(lst)
    assert cert.replay()
    assert cert.is_sft == (cert.memory is not None)


@given(lists())
def test_cover_language_matches_concatenations(lst):
    assume(is_sft(lst))
    c = left_fischer_cover(lst)
    assert c.graph.is_left_resolving()
    assert c.graph.is_irreducible()
    for n in range(1, min(2 * c.memory + 2, 7) + 1):
        want = concatenation_blocks(lst, n)
        assert graph_blocks(c.graph, n) == want
        assert block_language(lst, n) == want


@given(lists())
def test_forbidden_words_regenerate_the_language(lst):
    assume(is_sft(lst))
    m = sft_certificate(lst).memory
    assume(m <= 5)
    forb = infer_forbidden_words(lst)
    assert all(len(f) <= m + 1 for f in forb)
    # m is minimal: it is the longest minimal forbidden word minus one
    assert max((len(f) for f in forb), default=1) == m + 1
    for n in range(1, m + 4):
        assert forbidden_free(lst.alphabet, forb, n) == concatenation_blocks(lst, n)


@given(lists())
def test_vertices_are_separated_by_fingerprints(lst):
    assume(is_sft(lst))
    c = left_fischer_cover(lst)
    fps = [c.fingerprint(v) for v in c.vertices]
    assert len(set(fps)) == len(fps)
    for v in c.vertices:
        u = c.representative(v)
        assert len(u) == c.memory
        if c.memory:
            assert c.vertex_of(u) == v


@given(lists())
def test_krieger_equals_fischer_for_sft(lst):
    assume(is_sft(lst))
    f = left_fischer_cover(lst)
    k = left_fischer_cover(lst, kind="krieger")
    assert labelled_iso(f.graph, k.graph) is not None


def test_cover_json():
    doc = json.loads(left_fischer_cover(E1).to_json())
    assert doc["memory"] == 2
    assert [v["descriptor"] for v in doc["vertices"]] == ["aa", "ab", "ba"]
    assert len(doc["edges"]) == 5
    assert all(v["fingerprint"] for v in doc["vertices"])


def test_block_language_validation():
    with pytest.raises(ValueError):
        block_language(E1, -1)
    assert block_language(E1, 0) == {()}
    assert block_language(E1, 3) == graph_blocks(loop_graph(E1), 3)


def test_unknown_cover_kind():
    with pytest.raises(ValueError):
        left_fischer_cover(E1, kind="right")
