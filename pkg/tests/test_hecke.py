from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from qcotangent import hecke
from qcotangent import rmatrix as rm
from qcotangent.scalars import Field
from qcotangent.tensor import TensorOp, embed, from_rows, identity, permutation, rank


@pytest.fixture(scope="module")
def ctx2():
    return rm.RMatrixContext(Field(2))


@pytest.fixture(scope="module")
def ctx3():
    return rm.RMatrixContext(Field(3))


def test_a2_closed_form(ctx2):
    f = ctx2.field
    expected = (ctx2.I(2).scale(f.q) - ctx2.R).scale(1 / (f.q + 1 / f.q))
    assert hecke.antisymmetrizer(ctx2, 2) == expected
    assert hecke.antisymmetrizer(ctx2, 1) == ctx2.I()


def test_glqn(ctx2, ctx3):
    assert hecke.check_glqn(ctx2)
    assert hecke.check_glqn(ctx3)
    assert hecke.antisymmetrizer(ctx2, 3).is_zero()


def test_glqn_rejects_permutation():
    f = Field(2)
    ctx = rm.RMatrixContext(f, permutation(2, f.one), name="P")
    assert not hecke.check_glqn(ctx)


@pytest.mark.parametrize("k", [2, 3])
def test_absorption(ctx3, k):
    assert hecke.check_idempotent(ctx3, k)


def test_absorbs_smaller_shifted_antisymmetrizers(ctx3):
    a3 = hecke.antisymmetrizer(ctx3, 3)
    a2 = hecke.antisymmetrizer(ctx3, 2)
    assert a3 @ embed(a2, (1, 2), 3) == a3
    assert a3 @ hecke.shift_up(a2) == a3


def test_symmetrizer_complements_antisymmetrizer(ctx2):
    s2 = hecke.symmetrizer(ctx2, 2)
    a2 = hecke.antisymmetrizer(ctx2, 2)
    assert s2 + a2 == ctx2.I(2)
    assert (s2 @ a2).is_zero()
    assert ctx2.R @ s2 == s2.scale(ctx2.q)


def test_jucys_murphy(ctx2):
    js, z = hecke.jucys_murphy(ctx2, 3)
    assert js[1] == ctx2.R_at(1, 3, 2)
    z2 = hecke.jucys_murphy(ctx2, 2)[1]
    a2 = hecke.antisymmetrizer(ctx2, 2)
    assert z2 @ a2 == a2.scale(ctx2.q ** -2)


def test_upsilon(ctx2):
    f = ctx2.field
    assert hecke.upsilon(ctx2.P, 2, f.one) == ctx2.P
    up = hecke.upsilon(ctx2.P, 3, f.one)
    assert up @ up == ctx2.I(3)
    ur = hecke.upsilon(ctx2.R, 3, f.one)
    assert ctx2.R_at(1, 3) @ ur == ur @ ctx2.R_at(2, 3)


@settings(max_examples=10)
@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_upsilon_p_reverses_legs(vals):
    f = Field(2)
    m = from_rows([[f(v) for v in vals[:2]], [f(v) for v in vals[2:]]], 2, f.one)
    up = hecke.upsilon(permutation(2, f.one), 3, f.one)
    assert embed(m, (1,), 3) @ up == up @ embed(m, (3,), 3)


def test_star_r(ctx2):
    f = ctx2.field
    s = hecke.star_r(ctx2)
    assert rm.check_ybe(s)
    sc = hecke.star_context(ctx2)
    assert rm.check_hecke(s, 1 / f.q)
    assert sc.q == 1 / f.q
    assert rank(hecke.star_antisymmetrizer(ctx2, 2)) == 1
    p = permutation(2, f.one)
    assert hecke.star_r(rm.RMatrixContext(f, p, name="P", q=f.one)) == p


def test_star_identities_n2(ctx2):
    checks = hecke.check_star_identities(ctx2, 2)
    bad = [k for k, v in checks.items() if not v]
    assert not bad


def test_theta_j_n3(ctx3):
    assert hecke.check_theta_j(ctx3, 1)
