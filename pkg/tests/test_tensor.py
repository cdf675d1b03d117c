from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qcotangent.tensor import (TensorOp, embed, from_rows, identity, inverse, kron, partial_trace,
                               permutation, rank)

entry = st.integers(min_value=-3, max_value=3).map(Fraction)


def ops(dim, legs):
    side = dim ** legs
    return st.lists(st.lists(entry, min_size=side, max_size=side), min_size=side,
                    max_size=side).map(lambda rows: from_rows(rows, dim, Fraction(1)))


@given(ops(2, 2), ops(2, 2), ops(2, 2))
def test_product_associative(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)


@given(ops(2, 1), ops(2, 1))
def test_partial_trace_of_kron(a, b):
    assert partial_trace(kron(a, b), 2) == a.scale(b.trace())
    assert partial_trace(kron(a, b), 1) == b.scale(a.trace())


@given(ops(2, 2))
def test_permutation_conjugation_swaps_legs(x):
    p = permutation(2, Fraction(1))
    assert p @ embed(x, (1, 2), 2) @ p == embed(x, (2, 1), 2)


@given(ops(2, 1), ops(2, 1))
def test_embed_matches_kron(a, b):
    one = identity(2, 1, Fraction(1))
    assert embed(a, (1,), 2) @ embed(b, (2,), 2) == kron(a, b)
    assert embed(b, (2,), 2) == kron(one, b)


@given(ops(2, 1))
def test_inverse_when_full_rank(a):
    if rank(a) == 2:
        assert a @ inverse(a) == identity(2, 1, Fraction(1))


def test_entry_uses_one_based_digits():
    x = TensorOp(2, 2, {(1, 2): Fraction(5)}, Fraction(1))
    assert x.entry((1, 2), (2, 1)) == 5


def test_shape_mismatch_raises():
    with pytest.raises(ValueError):
        identity(2, 1) @ identity(2, 2)
    with pytest.raises(ValueError):
        embed(identity(2, 2), (1, 1), 3)


def test_first_difference_reports_digits():
    a = identity(2, 1, Fraction(1))
    b = TensorOp(2, 1, {(0, 0): Fraction(1), (1, 1): Fraction(2)}, Fraction(1))
    assert a.first_difference(b) == ((1,), (1,), 1, 2)
