from __future__ import annotations

import cmath

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qcotangent import evolution as evo


def test_lattice_forms():
    assert evo.lattice_form(2).a_star == ((1,),)
    assert evo.lattice_form(3).a_star == ((2, -1), (-1, 2))
    with pytest.raises(ValueError):
        evo.lattice_form(1)


def test_theta_exponents_by_hand():
    s2 = evo.theta_coefficients(2, 3)
    assert all(e == k[0] ** 2 + k[0] for k, e in s2.exponents.items())
    s3 = evo.theta_coefficients(3, 2)
    assert s3.exponents[(1, 0)] == 3
    assert s3.exponents[(1, 1)] == 4
    assert s3.exponents[(-1, 2)] == 15


@pytest.mark.parametrize("n,K", [(2, 8), (3, 4)])
def test_recursion_and_evolution(n, K):
    ser = evo.theta_coefficients(n, K)
    rec = evo.check_recursion(ser)
    assert rec and rec.witness["checked"] > 0
    assert evo.check_sl_evolution_theta1(ser)


@settings(max_examples=10)
@given(st.integers(-3, 3), st.integers(-3, 3))
def test_perturbed_coefficient_breaks_recursion(a, b):
    ser = evo.theta_coefficients(3, 3)
    ser.exponents[(a, b)] += 3  # multiplies c(k) by q
    assert not evo.check_recursion(ser)
    assert not evo.check_sl_evolution_theta1(ser)


def test_weyl_symmetry():
    assert evo.check_weyl_symmetry(3, 3)
    assert evo.check_weyl_symmetry(4, 2)


@pytest.mark.parametrize("n", [2, 3])
def test_gaussian_exponent(n):
    assert evo.check_sl_evolution_theta2(n)
    assert not evo.check_sl_evolution_theta2(n, sign=-1)


def test_gaussian_quadratic_form_n3():
    g = evo.gaussian_theta2(3)
    tau = g.tau
    assert sympy.simplify(g.quadratic_matrix() + sympy.Matrix([[2, 1], [1, 2]]) / (2 * tau)) \
        == sympy.zeros(2, 2)


@settings(max_examples=10)
@given(st.floats(0.5, 2.0), st.floats(-0.3, 0.3), st.floats(-0.2, 0.2))
def test_one_dimensional_theta_matches_mpmath(im_tau, re_z, im_z):
    tau = complex(0.1, im_tau)
    z = complex(re_z, im_z)
    ours = evo.riemann_theta(np.array([z]), np.array([[tau]]), 12)
    ref = complex(mpmath.jtheta(3, mpmath.pi * z, mpmath.exp(1j * mpmath.pi * tau)))
    assert abs(ours - ref) < 1e-12 * max(1.0, abs(ref))


@pytest.mark.parametrize("n,tau", [(2, 0.8j), (3, 1j)])
def test_modular_relation(n, tau):
    z = [0.1 + 0.05j, -0.07 + 0.02j][: n - 1]
    r = evo.modular_check(n, tau, z)
    assert r.relative_error < 1e-8
    assert r.tail_change < 1e-12


def test_modular_rejects_lower_half_plane():
    with pytest.raises(ValueError):
        evo.modular_check(2, -1j, [0.1])


def test_jacobi_exact_and_sympy_oracle():
    assert evo.jacobi_check_exact(20)
    q, mu = sympy.symbols("q mu")
    order = 6
    prod = sympy.Integer(1)
    for m in range(1, order + 2):
        prod = sympy.expand(prod * (1 - q ** m) * (1 + q ** m * mu) * (1 + q ** (m - 1) / mu))
        prod = sum(t for t in prod.as_ordered_terms() if sympy.degree(t, q) <= order)
    got = {}
    for t in sympy.Add.make_args(sympy.expand(prod)):
        c, rest = t.as_coeff_Mul()
        got[(int(sympy.degree(rest, q)), int(sympy.Poly(rest * mu ** 10, mu).degree() - 10))] = int(c)
    assert got == evo.jacobi_series(order)


def test_jacobi_float():
    assert evo.jacobi_check(10, 0.3) < 1e-12
    with pytest.raises(ValueError):
        evo.jacobi_check(10, 1.2)


@pytest.mark.parametrize("n", [2, 3])
def test_gl_consistency(n):
    assert all(evo.check_gl_consistency(n).values())
