from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from qcotangent import hdalgebra as hda
from qcotangent import rmatrix as rm
from qcotangent.hecke import antisymmetrizer
from qcotangent.ncalgebra import check_identity, check_matrix_identity
from qcotangent.scalars import Field
from qcotangent.tensor import decode


@pytest.fixture(scope="module")
def re2():
    return hda.build_re_presentation(rm.RMatrixContext(Field(2)))


@pytest.fixture(scope="module")
def hd2():
    return hda.build_hd_presentation(rm.RMatrixContext(Field(2)))


@pytest.fixture(scope="module")
def hd3():
    return hda.build_hd_presentation(rm.RMatrixContext(Field(3)))


def _gen(hd, fam, i, j):
    return hd.alg.gen(fam, i + 1, j + 1)


def test_det_matches_index_summation(hd2):
    # Tr(A T_1 T_2) = sum A[(k,l),(i,j)] T^i_k T^j_l
    a = antisymmetrizer(hd2.ctx, 2)
    alg = hd2.alg
    acc = alg.zero()
    for (r, c), v in a.entries.items():
        k, l = decode(r, 2, 2)
        i, j = decode(c, 2, 2)
        acc = acc + alg.mul(alg.scalar(v), alg.mul(_gen(hd2, "T", i, k), _gen(hd2, "T", j, l)))
    assert check_identity(hda.det_r(hd2), acc, alg)


def test_a2_matches_index_summation(re2):
    # a_2 = Tr(D_1 D_2 A L_1 R L_1 R^-1) by explicit index summation
    ctx, alg = re2.ctx, re2.alg
    a = antisymmetrizer(ctx, 2)
    r, ri = ctx.R.entries, ctx.Rinv.entries
    d = [ctx.D[(x, x)] for x in range(2)]
    acc = alg.zero()
    # sum over A[(k,l),(i,j)] L^i_u R[(u,j),(v,w)] L^v_m R^-1[(m,w),(k,l)]
    for k, l, i, j, u, v, w, m in product(range(2), repeat=8):
        coeff = a[(k * 2 + l, i * 2 + j)] * r.get((u * 2 + j, v * 2 + w), 0) \
            * ri.get((m * 2 + w, k * 2 + l), 0) * d[k] * d[l]
        if coeff == 0:
            continue
        term = alg.mul(_gen(re2, "L", i, u), _gen(re2, "L", v, m))
        acc = acc + alg.mul(alg.scalar(coeff), term)
    assert check_identity(hda.elementary_symmetric(re2, 2), acc, alg)


def test_a1_is_p1(re2):
    assert check_identity(hda.elementary_symmetric(re2, 1), hda.power_sum(re2, 1), re2.alg)


@pytest.mark.parametrize("i", [1, 2])
def test_centrality(re2, i):
    assert hda.verify_centrality(re2, hda.elementary_symmetric(re2, i))
    assert hda.verify_centrality(re2, hda.power_sum(re2, i))


@settings(max_examples=6)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_polynomials_in_a_are_central(cs):
    hd = hda.build_re_presentation(rm.RMatrixContext(Field(2)))
    a1, a2 = hda.elementary_symmetric(hd, 1), hda.elementary_symmetric(hd, 2)
    alg = hd.alg
    x = alg.mul(alg.scalar(cs[0]), alg.mul(a1, a1)) + alg.mul(alg.scalar(cs[1]), a2) \
        + alg.mul(alg.scalar(cs[2]), alg.mul(a1, a2))
    assert hda.verify_centrality(hd, x)


def test_power_sum_as_braid_trace(re2):
    assert hda.verify_power_sum_as_ch(re2, 2)


def test_newton_and_cayley_hamilton(re2):
    assert hda.verify_newton(re2, 1)
    assert hda.verify_newton(re2, 2)
    assert hda.verify_ch(re2)


def test_cayley_hamilton_n2_explicit(re2):
    q = re2.field.q
    L = re2.L
    a1, a2 = hda.elementary_symmetric(re2, 1), hda.elementary_symmetric(re2, 2)
    lhs = L @ L - L.scale(a1).scale(q) + re2.I().scale(a2).scale(q * q)
    assert check_matrix_identity(lhs, re2.I().scale(re2.alg.zero()), re2.alg)


def test_chn_both_routes_and_literal_order(re2):
    assert hda.verify_chn(re2, 2)
    q = re2.field.q
    rhs = (re2.L.scale(re2.one()) - re2.I().scale(hda.elementary_symmetric(re2, 1)).scale(q)).scale(-1)
    # A^(2) written to the left of the barred copy does not give the identity
    A = re2.lift(antisymmetrizer(re2.ctx, 2))
    literal = rm.r_trace(re2.ctx, A @ hda.l_copies(re2, 2, 2)[1], 2).scale(re2.field.qint(2))
    assert check_matrix_identity(literal, rhs, re2.alg).status == "refuted"


@pytest.mark.parametrize("k", [2, 3])
def test_copy_monomials(re2, k):
    assert hda.verify_lll(re2, k)


@pytest.mark.parametrize("i", [1, 2])
def test_t_exchange(hd2, i):
    assert hda.verify_tsigma(hd2, i)
    assert hda.verify_tp(hd2, i)


def test_copy_identities(hd2):
    checks = hda.verify_copy_identities(hd2, 3)
    assert all(checks.values()), [k for k, v in checks.items() if not v]


def test_det_relations_and_inverse(hd2):
    assert all(hda.verify_det_relations(hd2).values())
    assert hda.verify_inverse_t(hd2)


def test_n3_suite(hd3):
    for i in (1, 2, 3):
        assert hda.verify_tsigma(hd3, i)
        assert hda.verify_chn(hd3, i)
    assert hda.verify_ch(hd3)
    assert all(hda.verify_det_relations(hd3).values())


def test_sl_quotient_needs_sl_field():
    with pytest.raises(ValueError):
        hda.build_hd_presentation(rm.RMatrixContext(Field(2)), sl_quotient=True)
    hd = hda.build_hd_presentation(rm.RMatrixContext(Field(2, sl=True)), sl_quotient=True)
    assert hda.verify_sl_evolution_det(hd)


def test_spectral_resolution_n2():
    hd = hda.build_hd_presentation(rm.RMatrixContext(Field(2)), spectral=True)
    assert all(hda.verify_resolution(hd).values())
    assert all(hda.verify_t_mu(hd).values())
    assert all(hda.verify_det_mu(hd).values())


def test_left_sector_requires_sl():
    hd = hda.build_hd_presentation(rm.RMatrixContext(Field(2)))
    with pytest.raises(ValueError):
        hda.verify_left_sector(hd)
