from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qcotangent.scalars import Field, random_points

small = st.integers(min_value=-4, max_value=4)


def _poly(field, coeffs):
    p = field.p
    return sum((field(c) * p ** e for e, c in enumerate(coeffs)), field.zero)


@given(st.lists(small, min_size=1, max_size=4), st.lists(small, min_size=1, max_size=4),
       st.lists(small, min_size=1, max_size=4))
def test_field_ring_axioms(a, b, c):
    f = Field(2)
    x, y, z = _poly(f, a), _poly(f, b), _poly(f, c)
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - x == f.zero


@given(st.lists(small, min_size=1, max_size=4).filter(any))
def test_inverse_and_text_roundtrip(a):
    f = Field(2)
    x = _poly(f, a) / (f.p ** 2 + 3)
    assert x * x.inverse() == f.one
    assert f.parse(f.to_text(x)) == x


def test_q_is_p_to_the_n():
    f = Field(3)
    assert f.q == f.p ** 3
    assert f.parse("q") == f.q


def test_sl_identifies_gamma_with_p():
    assert Field(2, sl=True).gamma == Field(2, sl=True).p
    assert not Field(2).is_symbolic("m3") and Field(2).is_symbolic("g")


def test_q_numbers():
    f = Field(2)
    q = f.q
    assert f.qint(3) == q ** 2 + 1 + q ** -2
    assert f.qbinomial(4, 2) == f.qfactorial(4) / (f.qfactorial(2) * f.qfactorial(2))


def test_pinned_field_is_plain_rationals():
    f = Field(2, values={"p": 2, "g": 3, "m1": 5, "m2": 7})
    assert f.numeric
    assert f.q == 4


def test_unknown_variable_rejected():
    with pytest.raises(ValueError):
        Field(2, values={"x": 1})


def test_random_points_are_seeded():
    a = random_points(2, False, 3, seed=11)
    assert a == random_points(2, False, 3, seed=11)
    assert a != random_points(2, False, 3, seed=12)
    assert set(a[0]) == {"p", "g", "m1", "m2"}
    assert all(isinstance(v, Fraction) and v > 1 for pt in a for v in pt.values())
