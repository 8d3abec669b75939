import pytest
from hypothesis import assume, given

from sofic_forge import GeneratingList, border_report, bordering_status, diag_sum_cover, is_modular, labelled_iso, left_fischer_cover, sum_surgery_fischer
from sofic_forge.borders import border_points, strongly_right_bordering_word
from sofic_forge.covers import block_language
from sofic_forge.errors import AlphabetsOverlap, NotModular, UniversalPointMissing
from sofic_forge.families import DPlusM, family_instance, r_base
from sofic_forge.reproduce import DPLUSM_CASES, FIG1, _modular_pairs
from sofic_forge.words import Bordering
from oracles import graph_blocks, nx_isomorphic
from strategies import is_sft, lists

E1 = GeneratingList.of("aa", "aaa", "b")


def in_star(lst, w):
    ok = [True] + [False] * len(w)
    for i in range(1, len(w) + 1):
        ok[i] = any(len(g) <= i and ok[i - len(g)] and w[i - len(g):i] == g for g in lst)
    return ok[-1]


def test_example1_border_structure():
    c = left_fischer_cover(E1)
    iso = labelled_iso(FIG1, c.graph)
    rep = border_report(E1, c)
    assert rep.border_vertices == {iso[0], iso[1]}
    assert rep.universal_vertex == iso[0]
    assert rep.minimal_generators(iso[0])[0] == ("b",)
    assert rep.minimal_generators(iso[1])[0] == ("a", "a")
    assert dict(rep.generators[iso[1]])[("a", "a", "b")] is False
    assert rep.strongly_bordering_word == ("b",)
    # ba never ends a concatenation of generators
    assert rep.p0_fingerprint == {("a", "a"), ("a", "b"), ("b", "b")}


def test_r_family_border_count():
    for r in (2, 3, 4):
        base = r_base(r)
        rep = border_report(base, generator_bound=0)
        assert len(rep.border_vertices) == r + 1
        assert rep.universal_vertex in rep.border_vertices


@given(lists())
def test_border_vertices_are_classes_of_bordering_blocks(lst):
    assume(is_sft(lst))
    cover, border, universal, witness = border_points(lst)
    m = cover.memory
    assume(m >= 1)
    found = set()
    for u in block_language(lst, m):
        if bordering_status(lst, u) is not Bordering.NOT:
            found.add(cover.vertex_of(u))
    assert found == border
    if witness is not None:
        assert bordering_status(lst, witness) is Bordering.STRONGLY
        assert universal in border
    else:
        assert universal is None


@given(lists())
def test_generators_are_synchronizing_star_words(lst):
    assume(is_sft(lst))
    rep = border_report(lst, generator_bound=6, budget=2000)
    assert rep.search_bound <= 6
    for v, ws in rep.generators.items():
        assert v in rep.border_vertices
        for w, _ in ws:
            assert in_star(lst, w)
            assert len(w) <= rep.search_bound


def test_strongly_right_bordering_word():
    assert strongly_right_bordering_word(E1) == ("b",)
    assert strongly_right_bordering_word(GeneratingList.of("aa")) is None


def test_modularity_example1_and_counterexample():
    assert is_modular(E1)
    assert is_modular(E1, "right")
    lst = GeneratingList.of("e", "ef", "ff")
    res = is_modular(lst)
    assert not res
    start, label = res.counterexample
    cover, border, universal, _ = border_points(lst)
    # a border start must read a star word, a non-border start must not
    assert in_star(lst, label) != (start in border)
    with pytest.raises(UniversalPointMissing):
        is_modular(GeneratingList.of("a", "aa"))
    with pytest.raises(ValueError):
        is_modular(E1, "middle")


def _surgery(l1, l2):
    c1, c2 = left_fischer_cover(l1), left_fischer_cover(l2)
    return sum_surgery_fischer(c1, border_report(l1, c1, 0), c2, border_report(l2, c2, 0))


@pytest.mark.parametrize("l1,l2", _modular_pairs(), ids=lambda lst: str(lst))
def test_sum_surgery_matches_pipeline(l1, l2):
    s = _surgery(l1, l2)
    direct = left_fischer_cover(GeneratingList(l1.words + l2.words))
    assert labelled_iso(s.graph, direct.graph) is not None
    assert nx_isomorphic(s.graph, direct.graph)


@given(lists(max_words=3), lists(max_words=3))
def test_sum_surgery_property(l1, l2):
    l2 = GeneratingList(tuple(tuple(c.upper() for c in w) for w in l2))
    for lst in (l1, l2):
        assume(is_sft(lst))
        try:
            assume(is_modular(lst))
        except UniversalPointMissing:
            assume(False)
    s = _surgery(l1, l2)
    direct = left_fischer_cover(GeneratingList(l1.words + l2.words))
    assert labelled_iso(s.graph, direct.graph) is not None


def test_sum_surgery_guards():
    with pytest.raises(AlphabetsOverlap):
        _surgery(E1, GeneratingList.of("a", "c"))
    with pytest.raises(NotModular):
        _surgery(E1, GeneratingList.of("e", "ef", "ff"))


@pytest.mark.parametrize("ns,lm", DPLUSM_CASES, ids=str)
def test_diag_surgery_matches_pipeline(ns, lm):
    s = diag_sum_cover(ns, lm)
    direct = left_fischer_cover(family_instance(DPlusM(ns, lm))[0])
    assert labelled_iso(s.graph, direct.graph) is not None


def test_diag_surgery_gap_when_some_n_is_two():
    # With n_i = 2 the diagonal part has no words ending in a_i, and the
    # connecting edges built from P(a_i a_j ...) admit words the system lacks.
    lm = GeneratingList.of("e")
    s = diag_sum_cover((4, 2), lm)
    direct = left_fischer_cover(family_instance(DPlusM((4, 2), lm))[0])
    assert len(s.vertices) == 5 and len(direct.vertices) == 6
    bad = ("e", "a1", "a2", "e")
    assert bad in graph_blocks(s.graph, 4)
    assert bad not in block_language(direct.list, 4)


def _forward(g, starts, w):
    cur = set(starts)
    for a in w:
        cur = {t for s, t, b in g.edges if b == a and s in cur}
    return cur


def _backward(g, ends, w):
    cur = set(ends)
    for a in reversed(w):
        cur = {s for s, t, b in g.edges if b == a and t in cur}
    return cur


@given(lists())
def test_border_point_lemma(lst):
    assume(is_sft(lst))
    cover = left_fischer_cover(lst)
    rep = border_report(lst, cover, generator_bound=8, budget=3000)
    g, border = cover.graph, rep.border_vertices
    assume(cover.memory >= 1)
    # (1) P0 sits inside every border point and equals the universal one
    for p in border:
        assert rep.p0_fingerprint <= cover.fingerprint(p)
    if rep.universal_vertex is not None:
        assert cover.fingerprint(rep.universal_vertex) == rep.p0_fingerprint
    # (2) a generator of P1 labels a path from P1 to every border point
    for p1, ws in rep.generators.items():
        for w, _ in ws[:3]:
            assert border <= _forward(g, {p1}, w)
    # (3) star words reach a border point from exactly one border point
    star = [w for ws in rep.generators.values() for w, _ in ws[:3]] + list(lst)
    for p1 in border:
        for w in star:
            assert len(_backward(g, {p1}, w) & border) == 1


@given(lists())
def test_every_border_point_has_a_generator(lst):
    assume(is_sft(lst))
    rep = border_report(lst, budget=5000)
    # only conclusive when the search was not cut short by the word budget
    assume(rep.search_bound >= 3 * left_fischer_cover(lst).memory + lst.total_length)
    assert set(rep.generators) == set(rep.border_vertices)
