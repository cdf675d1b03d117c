from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from qcotangent import pairing
from qcotangent import rmatrix as rm
from qcotangent.hdalgebra import _re_relations
from qcotangent.scalars import Field


@pytest.fixture(scope="module", params=[2, 3])
def ctx(request):
    return rm.RMatrixContext(Field(request.param, sl=True))


@pytest.fixture(scope="module")
def ctx2():
    return rm.RMatrixContext(Field(2, sl=True))


def test_requires_sl_and_standard_r():
    with pytest.raises(ValueError):
        pairing.pair_t_l(rm.RMatrixContext(Field(2)))
    f = Field(2, sl=True)
    twisted = rm.twist(rm.drinfeld_jimbo(f), [[1, 2], [3, 1]], f)
    with pytest.raises(ValueError):
        pairing.pair_t_l(rm.RMatrixContext(f, twisted))


def test_a1_by_hand(ctx2):
    p = ctx2.field.p
    assert pairing.pair_t_ai(ctx2, 1) == ctx2.I().scale(p ** 3 + p ** -5)


def test_all_a_i_match_closed_form(ctx):
    for i in range(ctx.n + 1):
        pairing.pair_t_ai(ctx, i)
    assert pairing.pair_t_ai(ctx, ctx.n) == ctx.I().scale(1 / ctx.field.q)


def test_mu_pairings(ctx):
    assert all(pairing.verify_mu_pairing(ctx.field).values())
    assert all(pairing.verify_mu_pairing_rescaled(ctx.field).values())


def test_mu_exponents_n2():
    # q^{2a + 2 delta_an - n - 3/n - 1} with q = p^2
    assert pairing.mu_pairing_exponents(2) == [-5, 3]


letters = st.tuples(st.integers(1, 2), st.integers(1, 2))
words = st.lists(letters, min_size=0, max_size=3)


@settings(max_examples=20)
@given(words, words)
def test_word_pairing_is_multiplicative(u, v):
    c = rm.RMatrixContext(Field(2, sl=True))
    assert pairing.pair_t_word(c, u + v) == pairing.pair_t_word(c, u) @ pairing.pair_t_word(c, v)


@settings(max_examples=10)
@given(words, words, st.integers(0, 15))
def test_relations_pair_to_zero_inside_words(u, v, which):
    c = rm.RMatrixContext(Field(2, sl=True))
    sys_ = pairing.free_re_system(c)
    alg = sys_.alg
    rels = [r for r in _re_relations(c, sys_.L) if not r.is_zero()]
    rel = rels[which % len(rels)]

    def word_expr(w):
        x = alg.scalar(1)
        for k, l in w:
            x = alg.mul(x, alg.gen("L", k, l))
        return x

    x = alg.mul(word_expr(u), alg.mul(rel, word_expr(v)))
    assert pairing.pair_t_expr(c, x).is_zero()


def test_non_l_letters_rejected(ctx2):
    from qcotangent.hdalgebra import build_hd_presentation

    hd = build_hd_presentation(ctx2)
    with pytest.raises(ValueError):
        pairing.pair_t_expr(ctx2, hd.alg.gen("T", 1, 1))
