import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sofic_forge import left_fischer_cover, signed_bowen_franks
from sofic_forge.covers import block_language, sft_certificate
from sofic_forge.errors import InvalidParams, NoClosedForm, NotSftError
from sofic_forge.families import (
    B,
    R,
    Diag,
    DPlusM,
    HSum,
    PosDet,
    build_family,
    closed_form_invariant,
    diag_chain_m,
    diag_det,
    diagonal_list,
    example3_det,
    example3_x,
    expand_grid,
    family_instance,
    forbidden_runs_matrix,
    hsum_det,
    invariant_factors,
    matched_r,
    parse_params,
    pipeline_invariant,
    posdet_base,
    posdet_det,
    r_base,
    r_det,
    rows_to_tsv,
    search_det,
    sweep,
)
from sofic_forge import LabelledGraph
from oracles import forbidden_free, graph_blocks, run_length_matrix

counts = st.integers(1, 3)


def test_parameter_validation():
    with pytest.raises(InvalidParams):
        R(r=1)
    with pytest.raises(InvalidParams):
        R(r=3, gammas=(1,))
    with pytest.raises(InvalidParams):
        PosDet(a=0)
    with pytest.raises(InvalidParams):
        Diag((2, 2))
    with pytest.raises(InvalidParams):
        Diag((5,))
    with pytest.raises(InvalidParams):
        HSum(())
    with pytest.raises(InvalidParams):
        B(2, (2,), (1, 1))
    assert Diag((8, 4, 2)).is_chain and Diag((3, 3)).is_chain
    assert not Diag((5, 3)).is_chain and not Diag((2, 3)).is_chain


def test_r_base_list():
    assert {" ".join(w) for w in r_base(2)} == {"al", "alt", "ga2", "al ga2 be", "be alt ga2"}
    assert len(r_base(3)) == 6


@pytest.mark.parametrize("r", [2, 3, 4])
def test_r_cover_has_2r_plus_1_vertices(r):
    assert len(left_fischer_cover(r_base(r)).vertices) == 2 * r + 1


@given(st.integers(2, 3), st.data())
def test_r_determinant_formula(r, data):
    p = R(r, data.draw(counts), data.draw(counts), data.draw(counts), tuple(data.draw(counts) for _ in range(r - 1)))
    bf = pipeline_invariant(p)
    assert bf.is_cyclic
    assert bf.det == r_det(p) == closed_form_invariant(p).det


@pytest.mark.parametrize("p", [R(2, 2, 1, 1, (2,)), R(2, 1, 2, 2, (1,)), R(3, 2, 1, 1, (1, 2))])
def test_weights_mode_agrees_with_direct_fragmentation(p):
    assert pipeline_invariant(p, "direct") == pipeline_invariant(p, "weights")


def test_r_unit_counts_by_hand():
    # r=2, all counts 1: 1 - 1 - 1 - 1 - 2 + 1
    assert r_det(R(2)) == -3
    assert pipeline_invariant(R(2)).det == -3


@given(st.integers(1, 2), st.data())
def test_hsum_determinant_formula(nblocks, data):
    blocks = tuple(
        R(r, data.draw(counts), data.draw(counts), data.draw(counts), tuple(data.draw(counts) for _ in range(r - 1)))
        for r in (data.draw(st.integers(2, 3)) for _ in range(nblocks))
    )
    p = HSum(blocks, data.draw(counts))
    bf = pipeline_invariant(p)
    assert bf.is_cyclic
    assert bf.det == hsum_det(p)


def test_hsum_single_block_matches_r_plus_letter():
    # the free letter is one more loop at the universal vertex
    for blk in (R(2), R(2, 2, 1, 3, (2,)), R(3, 1, 2, 1, (2, 1))):
        p = HSum((blk,), 1)
        assert hsum_det(p) == r_det(blk) - 1 == pipeline_invariant(p).det


@pytest.mark.parametrize("cs", list(itertools.product((1, 2), repeat=2)))
@pytest.mark.parametrize("d", [1, 2])
def test_b_list_flow_equivalent_to_matched_r(cs, d):
    p = B(2, (2, 2), cs, d, 1)
    assert pipeline_invariant(p) == pipeline_invariant(matched_r(p))


def test_posdet_matrix_is_the_published_one():
    cover = left_fischer_cover(posdet_base())
    g = cover.graph
    n = len(g)
    sym = [[[] for _ in range(n)] for _ in range(n)]
    for s, t, a in g.edges:
        sym[s][t].append(a)
    sym = [[tuple(sorted(x)) for x in row] for row in sym]
    e = ()
    published = [
        [("a", "al", "alt"), ("al",), e, ("a", "al", "alt", "be"), ("a", "al")],
        [e, e, ("ga",), e, e],
        [("be",), e, e, e, ("be",)],
        [e, e, e, e, ("alt",)],
        [("ga",), e, e, ("ga",), ("ga",)],
    ]
    assert any(
        all(sym[p[i]][p[j]] == published[i][j] for i in range(n) for j in range(n))
        for p in itertools.permutations(range(n))
    )


@given(counts, counts, counts, counts, st.integers(1, 4))
def test_posdet_formula(a, al, alt, be, ga):
    p = PosDet(a, al, alt, be, ga)
    bf = pipeline_invariant(p)
    assert bf.is_cyclic and bf.det == posdet_det(p)


def test_posdet_unit_polynomial():
    for g in range(1, 8):
        for a in range(1, 5):
            assert posdet_det(PosDet(a=a, gamma=g)) == g * g - 3 * g - a - 1


@pytest.mark.parametrize("k", [-50, -7, -1, 0, 1, 2, 13, 50])
def test_search_det(k):
    p = search_det(k)
    bf = pipeline_invariant(p)
    assert bf.det == k and bf.is_cyclic


def test_diag_closed_forms():
    assert diag_det((4, 2)) == -2
    assert diag_det((3, 3)) == -3
    assert diag_det((8, 4, 2)) == -72
    assert diag_det((9, 3, 3)) == -99
    assert diag_chain_m((8, 4, 2)) == 36
    assert closed_form_invariant(Diag((8, 4, 2))).torsion == (2, 36)
    assert closed_form_invariant(Diag((9, 3, 3))).torsion == (3, 33)
    # 3 | 3, so the divisibility hypothesis holds for (3, 3) as well
    assert closed_form_invariant(Diag((3, 3))).torsion == (3,)
    assert closed_form_invariant(Diag((5, 3))).torsion is None


@pytest.mark.parametrize("ns", [(4, 2), (9, 3, 3), (3, 3), (5, 3), (4, 3), (6, 3, 3)])
def test_diag_pipeline(ns):
    p = Diag(ns)
    bf = pipeline_invariant(p)
    cf = closed_form_invariant(p)
    assert bf.det == cf.det < 0
    if cf.torsion is not None:
        assert bf.torsion == cf.torsion


@pytest.mark.parametrize("ns", [(4, 2), (8, 4, 2), (9, 3, 3), (3, 3), (4, 4, 2), (4, 2, 2), (6, 3, 3)])
def test_closed_forms_hold_for_the_forbidden_run_shift(ns):
    # the shift forbidding a_i^{n_i}, presented by run lengths
    bf = signed_bowen_franks(run_length_matrix(ns))
    cf = closed_form_invariant(Diag(ns))
    assert bf.det == cf.det
    if cf.torsion is not None:
        assert bf.torsion == cf.torsion


@pytest.mark.parametrize("ns", [(4, 2), (8, 4, 2), (3, 3, 2)])
def test_forbidden_runs_matrix_presents_the_target_shift(ns):
    a = forbidden_runs_matrix(ns)
    assert a == run_length_matrix(ns)
    # label each state by its letter; words read along edges give the language
    states = [i for i, n in enumerate(ns) for _ in range(1, n)]
    g = LabelledGraph(
        tuple((k, str(k)) for k in range(len(a))),
        tuple((s, t, f"a{states[t] + 1}") for s in range(len(a)) for t in range(len(a)) if a[s][t]),
    )
    letters = [f"a{i + 1}" for i in range(len(ns))]
    forb = [(x,) * n for x, n in zip(letters, ns)]
    for n in range(1, 7):
        assert graph_blocks(g, n) == forbidden_free(letters, forb, n)


@pytest.mark.parametrize("ns", [(4, 2), (9, 3, 3), (3, 3), (5, 3)])
def test_diagonal_list_generates_forbidden_run_shift(ns):
    lst = diagonal_list(ns)
    forb = [(a,) * n for a, n in zip(lst.alphabet, ns)]
    for n in range(1, 7):
        assert block_language(lst, n) == forbidden_free(lst.alphabet, forb, n)


def test_diagonal_list_misses_blocks_when_some_n_is_two():
    # no generator ends in a3 when n_3 = 2, and a2 a2 a2 a3 a1 a2 a2 (allowed
    # in the shift forbidding a1^8, a2^4, a3^2) has no partitioning
    lst = diagonal_list((8, 4, 2))
    w = ("a2", "a2", "a2", "a3", "a1", "a2", "a2")
    assert w in forbidden_free(lst.alphabet, [("a1",) * 8, ("a2",) * 4, ("a3",) * 2], 7)
    assert w not in block_language(lst, 7)
    assert not sft_certificate(lst).is_sft
    with pytest.raises(NotSftError):
        pipeline_invariant(Diag((8, 4, 2)))


def test_example3_x_zero_gives_z6():
    # gamma = 4, a = 3: gamma^2 - 3 gamma - a - 1 = 0
    p = DPlusM((4, 2), PosDet(a=3, gamma=4))
    cf = closed_form_invariant(p)
    assert cf.x == 0 and cf.torsion == (6,)
    bf = pipeline_invariant(p)
    assert bf.torsion == (6,) and bf.det == -6 == example3_det((4, 2), 0)


@pytest.mark.parametrize("gamma,a", [(3, 1), (5, 2), (6, 8), (7, 3)])
def test_example3_x_identification(gamma, a):
    p = DPlusM((4, 2), PosDet(a=a, gamma=gamma))
    bf = pipeline_invariant(p)
    assert example3_x((4, 2), bf.det) == gamma * gamma - 3 * gamma - a - 1
    assert bf.free_rank == 0 and len(bf.torsion) <= 2


def test_example3_formula_examples():
    assert example3_det((4, 2), 1) == 2 * (1 * 3 - 4)
    assert example3_x((4, 2), example3_det((4, 2), 5)) == 5
    with pytest.raises(NoClosedForm):
        closed_form_invariant(DPlusM((4, 2), PosDet(alpha=2)))
    with pytest.raises(NoClosedForm):
        closed_form_invariant(B(2, (2, 2), (1, 1)))


def test_family_instance_dplusm():
    base, weights = family_instance(DPlusM((3, 3), PosDet(a=2)))
    assert weights["a"] == 2
    assert ("a1", "a") in base.words and ("a2", "al", "ga", "be") in base.words
    assert len(build_family(PosDet(a=2, gamma=2))) == 6 + 1 + 1 + 2


def test_invariant_factors():
    assert invariant_factors((4, 6)) == (2, 12)
    assert invariant_factors((1, 5)) == (5,)
    assert invariant_factors(()) == ()


def test_parse_params():
    assert parse_params("R", "r=3;alpha=2;gammas=1,2") == R(3, 2, 1, 1, (1, 2))
    assert parse_params("Diag", "ns=8,4,2") == Diag((8, 4, 2))
    assert parse_params("DPlusM", "ns=4,2;gamma=4;a=3") == DPlusM((4, 2), PosDet(a=3, gamma=4))
    h = parse_params("HSum", "a=2;blocks=r=2&alpha=2|r=3")
    assert h == HSum((R(2, 2), R(3)), 2)
    with pytest.raises(InvalidParams):
        parse_params("Nope", "")
    with pytest.raises(InvalidParams):
        parse_params("R", "r")
    with pytest.raises(InvalidParams):
        parse_params("R", "r=2;zeta=1")


def test_grid_and_sweep():
    ps = expand_grid("PosDet", "gamma=4..5;a=1..2")
    assert ps == [PosDet(a=1, gamma=4), PosDet(a=2, gamma=4), PosDet(a=1, gamma=5), PosDet(a=2, gamma=5)]
    assert len(expand_grid("Diag", "ns=4,2/3,3")) == 2
    rows = sweep(ps)
    assert [r["det"] for r in rows] == [posdet_det(p) for p in ps]
    tsv = rows_to_tsv(rows)
    assert tsv.splitlines()[0].split("\t")[-4:] == ["sign", "torsion", "free_rank", "det"]
    assert len(tsv.splitlines()) == 5
    assert rows_to_tsv([]) == ""
