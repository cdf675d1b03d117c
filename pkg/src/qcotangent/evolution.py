"""Evolution operators on the SL-type Heisenberg double.

Theta(mu) implements the discrete time step T -> LT by conjugation, which
reduces to the difference equations

    q mu_a Theta(nabla^a mu) = Theta(mu),   nabla^a: mu_b -> q^{2 X_ab} mu_b,

with X_ab = delta_ab - 1/n and prod mu = q^-1.  Two solutions are handled:
the A*_{n-1} lattice theta series (|q| < 1) and a Gaussian in the logarithmic
variables z_a (any q).  Coefficients of the theta series are integer powers
of p = q^(1/n), so the series checks are exact.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import permutations, product

import numpy as np
import sympy

from .rmatrix import Check
from .scalars import Field

__all__ = [
    "LatticeForm", "ThetaSeries", "GaussianExponent", "lattice_form", "theta_coefficients",
    "check_recursion", "check_sl_evolution_theta1", "gaussian_theta2",
    "check_sl_evolution_theta2", "riemann_theta", "ModularResult", "modular_check",
    "theta_cutoff", "jacobi_series", "triple_product_series", "jacobi_check_exact",
    "jacobi_check", "check_gl_consistency", "check_weyl_symmetry",
]


# -- lattice data -------------------------------------------------------------

@dataclass(frozen=True)
class LatticeForm:
    """X (n x n), A* = n X and A = delta + 1 restricted to the first n-1 indices."""

    n: int
    X: tuple
    a_star: tuple
    a_root: tuple

    def quad(self, k) -> int:
        """(k, A* k) as an exact integer."""
        m = self.n - 1
        return int(sum(k[a] * self.a_star[a][b] * k[b] for a in range(m) for b in range(m)))


def _leading_minors_positive(m) -> bool:
    mat = sympy.Matrix(m)
    return all(mat[:i, :i].det() > 0 for i in range(1, mat.rows + 1))


def lattice_form(n: int) -> LatticeForm:
    if n < 2:
        raise ValueError("the lattice forms need n >= 2")
    X = tuple(tuple(Fraction(int(a == b)) - Fraction(1, n) for b in range(n)) for a in range(n))
    a_star = tuple(tuple(n * X[a][b] for b in range(n - 1)) for a in range(n - 1))
    a_root = tuple(tuple(Fraction(int(a == b) + 1) for b in range(n - 1)) for a in range(n - 1))
    if not _leading_minors_positive(a_star):
        raise ArithmeticError("A* is not positive definite")
    if sympy.Matrix(a_star) * sympy.Matrix(a_root) != n * sympy.eye(n - 1):
        raise ArithmeticError("A* A != n I")
    return LatticeForm(n, X, a_star, a_root)


# -- the theta series Theta^(1) -------------------------------------------------

@dataclass
class ThetaSeries:
    """Truncated series sum_k c(k) mu_1^k1 ... mu_{n-1}^k_{n-1}, c(k) = p^e(k), |k|_inf <= K."""

    n: int
    cutoff: int
    exponents: dict = dc_field(default_factory=dict)  # k -> integer power of p

    def coefficient(self, field: Field, k):
        return field.p ** self.exponents[tuple(k)]


def theta_coefficients(n: int, cutoff: int) -> ThetaSeries:
    """c(k) = q^{((k, A* k) + (1, k))/n} = p^{(k, A* k) + (1, k)}, normalized by c(0) = 1."""
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    form = lattice_form(n)
    ser = ThetaSeries(n, cutoff)
    for k in product(range(-cutoff, cutoff + 1), repeat=n - 1):
        ser.exponents[k] = form.quad(k) + sum(k)
    for k, e in ser.exponents.items():
        if Fraction(e, n) != Fraction(form.quad(k) + sum(k), n):
            raise ArithmeticError(f"stored exponent differs from the closed form at {k}")
    if ser.exponents[(0,) * (n - 1)] != 0:
        raise ArithmeticError("c(0) != 1")
    return ser


def check_recursion(series: ThetaSeries, field: Field | None = None) -> Check:
    """c(k + e_a) = q^{1 + (2/n) sum_b A*_ab k_b} c(k) at every site where both are stored."""
    n = series.n
    field = field or Field(n, sl=True)
    form = lattice_form(n)
    checked = skipped = 0
    for k in series.exponents:
        for a in range(n - 1):
            up = list(k)
            up[a] += 1
            up = tuple(up)
            if up not in series.exponents:
                skipped += 1
                continue
            lin = sum(form.a_star[a][b] * k[b] for b in range(n - 1))
            # q^{1 + 2 lin / n} = p^{n + 2 lin}
            factor = field.p ** int(n + 2 * lin)
            if series.coefficient(field, up) != factor * series.coefficient(field, k):
                return Check(False, (k, a + 1), f"recursion fails at k={k}, direction {a + 1}")
            checked += 1
    return Check(True, {"checked": checked, "boundary_skipped": skipped},
                 f"recursion holds at {checked} sites ({skipped} boundary sites skipped)")


def _series_poly(series: ThetaSeries, field: Field) -> dict:
    """The truncated series as {exponent vector of mu_1..mu_{n-1}: coefficient}."""
    return {k: series.coefficient(field, k) for k in series.exponents}


def check_sl_evolution_theta1(series: ThetaSeries, alphas=None, field: Field | None = None) -> Check:
    """q mu_a Theta(nabla^a mu) = Theta(mu) as a formal series inside the cutoff box.

    Works on monomials directly: nabla^a rescales mu^k by q^{2 (X k)_a}, and for
    a = n the factor q mu_n is rewritten as prod_{b<n} mu_b^-1 using prod mu = q^-1.
    """
    n = series.n
    field = field or Field(n, sl=True)
    form = lattice_form(n)
    alphas = range(1, n + 1) if alphas is None else alphas
    theta = _series_poly(series, field)
    K = series.cutoff
    for a in alphas:
        if not 1 <= a <= n:
            raise IndexError(f"spectral index {a} out of range 1..{n}")
        shifted: dict = {}
        for k, c in theta.items():
            # exponent of p in prod_b (q^{2 X_ab})^{k_b}
            e = sum(2 * n * form.X[a - 1][b] * k[b] for b in range(n - 1))
            if a < n:
                kk = list(k)
                kk[a - 1] += 1
                e += n  # the factor q
            else:
                kk = [x - 1 for x in k]  # q mu_n = prod_{b<n} mu_b^-1
            shifted[tuple(kk)] = c * field.p ** int(e)
        for k, c in shifted.items():
            if max(abs(x) for x in k) > K:
                continue
            if theta[k] != c:
                return Check(False, (a, k), f"Sl-evolution fails for alpha={a} at mu^{k}")
    return Check(True, detail=f"q mu_a Theta(nabla^a mu) = Theta(mu) inside |k| <= {K}")


def check_weyl_symmetry(n: int, cutoff: int) -> Check:
    """(k, A* k) is invariant under permutations of the coordinates of k."""
    form = lattice_form(n)
    for k in product(range(-cutoff, cutoff + 1), repeat=n - 1):
        base = form.quad(k)
        for perm in set(permutations(k)):
            if form.quad(perm) != base:
                return Check(False, k, f"(k, A* k) changes under permutation of {k}")
    return Check(True, detail="(k, A* k) is permutation invariant")


# -- the Gaussian solution Theta^(2) ---------------------------------------------

@dataclass
class GaussianExponent:
    """log Theta^(2) / (pi i) as a sympy expression in z_1..z_{n-1} and tau."""

    n: int
    z: tuple
    tau: sympy.Symbol
    expr: sympy.Expr

    def quadratic_matrix(self) -> sympy.Matrix:
        """M with expr = (z, M z)."""
        m = self.n - 1
        poly = sympy.Poly(sympy.expand(self.expr * self.tau), *self.z)
        M = sympy.zeros(m, m)
        for a in range(m):
            for b in range(m):
                mono = [0] * m
                mono[a] += 1
                mono[b] += 1
                c = poly.coeff_monomial(tuple(mono))
                M[a, b] = c / self.tau if a == b else c / (2 * self.tau)
        return M


def _symbols(n: int):
    z = sympy.symbols(f"z1:{n}")
    tau = sympy.Symbol("tau", nonzero=True)
    return z, tau


def _eliminate(z):
    """(z_1, ..., z_n) with z_n = -(z_1 + ... + z_{n-1})."""
    return list(z) + [-sum(z)]


def gaussian_theta2(n: int) -> GaussianExponent:
    """-(1/(2 tau)) sum_{b=1..n} z_b^2 with z_n eliminated; asserted equal to -(z, Omega^-1 z)."""
    if n < 2:
        raise ValueError("n >= 2 required")
    z, tau = _symbols(n)
    full = _eliminate(z)
    expr = sympy.expand(-sum(x ** 2 for x in full) / (2 * tau))
    form = lattice_form(n)
    omega_inv = sympy.Matrix(form.a_root) / (2 * tau)
    zv = sympy.Matrix(z)
    other = sympy.expand(-(zv.T * omega_inv * zv)[0, 0])
    if sympy.simplify(expr - other) != 0:
        raise ArithmeticError("the two forms of the Gaussian exponent differ")
    g = GaussianExponent(n, z, tau, expr)
    if sympy.simplify(g.quadratic_matrix() + omega_inv) != sympy.zeros(n - 1, n - 1):
        raise ArithmeticError("quadratic part differs from -Omega^-1")
    return g


def check_sl_evolution_theta2(n: int, sign: int = 1) -> Check:
    """Exact exponent identity behind q mu_a Theta^(2)(nabla^a z) = Theta^(2)(z).

    With q = e^{2 pi i tau} and q^{1/n} mu_a = e^{2 pi i z_a}, nabla^a shifts
    z_b -> z_b + 2 tau X_ab and q mu_a contributes 2 tau (1 - 1/n) + 2 z_a to the
    exponent divided by pi i.  ``sign = -1`` flips the shift (a negative control).
    """
    g = gaussian_theta2(n)
    z, tau = g.z, g.tau
    form = lattice_form(n)
    full = _eliminate(z)
    for a in range(n):
        subs = {z[b]: z[b] + sign * 2 * tau * sympy.Rational(form.X[a][b].numerator,
                                                             form.X[a][b].denominator)
                for b in range(n - 1)}
        shifted = g.expr.subs(subs, simultaneous=True)
        q_mu = 2 * tau * (1 - sympy.Rational(1, n)) + 2 * full[a]
        diff = sympy.simplify(sympy.expand(shifted + q_mu - g.expr))
        if diff != 0:
            return Check(False, a + 1, f"exponent mismatch for alpha={a + 1}: {diff}")
    return Check(True, detail=f"Gaussian exponent solves the evolution equations at n={n}")


# -- the modular relation (floating point) ------------------------------------------

def riemann_theta(z: np.ndarray, omega: np.ndarray, cutoff: int) -> complex:
    """sum over |k|_inf <= cutoff of exp(pi i (k, Omega k) + 2 pi i (k, z))."""
    m = len(z)
    grid = np.array(list(product(range(-cutoff, cutoff + 1), repeat=m)), dtype=float)
    phase = np.einsum("ka,ab,kb->k", grid, omega, grid) / 2 + grid @ z
    terms = np.exp(2j * np.pi * phase)
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def theta_cutoff(omega: np.ndarray, target: float = 1e-16) -> int:
    """Smallest K with exp(-pi lambda_min(Im Omega) K^2) < target."""
    lam = float(np.linalg.eigvalsh(np.imag(omega)).min())
    if lam <= 0:
        raise ValueError("Im Omega must be positive definite")
    return max(2, math.ceil(math.sqrt(-math.log(target) / (math.pi * lam))))


@dataclass
class ModularResult:
    relative_error: float
    cutoff: int
    tail_change: float
    lhs: complex
    rhs: complex


def modular_check(n: int, tau: complex, z, cutoff: int | None = None) -> ModularResult:
    """|Theta^(2)(z) / RHS - 1| with RHS = n^-1/2 (2 tau/i)^{(n-1)/2} theta(z, Omega)/theta(Omega^-1 z, -Omega^-1).

    Both theta sums are truncated to the same cube; ``tail_change`` is the
    change of the ratio when that cube is doubled.
    """
    if tau.imag <= 0:
        raise ValueError("the theta series need Im tau > 0")
    form = lattice_form(n)
    m = n - 1
    a_star = np.array([[float(x) for x in row] for row in form.a_star])
    a_root = np.array([[float(x) for x in row] for row in form.a_root])
    omega = 2 * tau / n * a_star
    omega_inv = a_root / (2 * tau)
    if not np.allclose(omega @ omega_inv, np.eye(m)):
        raise ArithmeticError("Omega Omega^-1 != I")
    z = np.asarray(z, dtype=complex)
    if z.shape != (m,):
        raise ValueError(f"need {m} independent z values")
    K = cutoff or max(theta_cutoff(omega), theta_cutoff(-omega_inv))
    lhs = cmath.exp(-1j * math.pi * (z @ omega_inv @ z))

    def rhs_at(k: int) -> complex:
        num = riemann_theta(z, omega, k)
        den = riemann_theta(omega_inv @ z, -omega_inv, k)
        return n ** -0.5 * (2 * tau / 1j) ** (m / 2) * num / den

    rhs = rhs_at(K)
    tail = abs(rhs_at(2 * K) / rhs - 1)
    return ModularResult(abs(lhs / rhs - 1), K, tail, lhs, rhs)


# -- n = 2: Jacobi triple product ----------------------------------------------------

def jacobi_series(order: int) -> dict:
    """sum_k q^{k(k+1)/2} mu^k truncated at q-degree `order`: {(q_deg, mu_deg): coeff}."""
    out = {}
    k = 0
    while True:
        hit = False
        for kk in {k, -k}:
            d = kk * (kk + 1) // 2
            if d <= order:
                out[(d, kk)] = 1
                hit = True
        if not hit and k > 0:
            break
        k += 1
    return out


def _mul_trunc(a: dict, b: dict, order: int) -> dict:
    out: dict = {}
    for (da, ma), ca in a.items():
        for (db, mb), cb in b.items():
            d = da + db
            if d > order:
                continue
            key = (d, ma + mb)
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def triple_product_series(order: int) -> dict:
    """prod_{m>=1} (1 - q^m)(1 + q^m mu)(1 + q^{m-1}/mu), exact to q-degree `order`."""
    acc = {(0, 0): 1}
    for m in range(1, order + 2):
        for factor in ({(0, 0): 1, (m, 0): -1}, {(0, 0): 1, (m, 1): 1},
                       {(0, 0): 1, (m - 1, -1): 1}):
            acc = _mul_trunc(acc, factor, order)
    return acc


def jacobi_check_exact(order: int = 20) -> Check:
    lhs, rhs = jacobi_series(order), triple_product_series(order)
    if lhs != rhs:
        bad = sorted(set(lhs) ^ set(rhs) | {k for k in lhs if k in rhs and lhs[k] != rhs[k]})
        return Check(False, bad[0], f"coefficients differ at (q^{bad[0][0]}, mu^{bad[0][1]})")
    return Check(True, detail=f"series and triple product agree through q^{order}")


def jacobi_check(K: int, q: float, points: int = 64, factors: int = 400) -> float:
    """max_{|j| <= K} |[mu^j] prod(...) - q^{j(j+1)/2}|, the product's Laurent
    coefficients taken by FFT on the unit circle."""
    if not abs(q) < 1:
        raise ValueError("need |q| < 1")
    if points <= 2 * K:
        raise ValueError("too few sample points for the requested order")
    t = np.arange(points) / points
    mu = np.exp(2j * np.pi * t)
    vals = np.ones(points, dtype=complex)
    for m in range(1, factors + 1):
        vals *= (1 - q ** m) * (1 + q ** m * mu) * (1 + q ** (m - 1) / mu)
    coeffs = np.fft.fft(vals) / points
    worst = 0.0
    for j in range(-K, K + 1):
        worst = max(worst, abs(coeffs[j % points] - q ** (j * (j + 1) / 2)))
    return float(worst)


# -- GL evolution -------------------------------------------------------------------

def check_gl_consistency(n: int) -> dict:
    """Facts used to reduce the GL evolution equations to the SL ones."""
    out = {}
    form = lattice_form(n)
    col = [sum(form.X[a][b] for a in range(n)) for b in range(n)]
    out["prod_a nabla^a = id"] = Check(all(c == 0 for c in col), col,
                                       "column sums of X vanish")
    f = Field(n)
    g_sl = Field(n, sl=True)
    # the z-rescaling (q gamma^-n)^{2/n} and the consistency factor q^2 gamma^-2n
    shift = g_sl.q ** 2 * g_sl.gamma ** (-2 * n)
    out["gamma = q^{1/n}: z-shift trivial"] = Check(shift == g_sl.one, None,
                                                    "q^2 gamma^-2n = 1 at gamma = p")
    generic = f.q ** 2 * f.gamma ** (-2 * n)
    out["generic gamma: z-shift nontrivial"] = Check(generic != f.one, f.to_text(generic),
                                                     "z-dependence is then constrained")
    # GL shift with gamma = p equals the SL shift q^{2 X_ab}
    ok = True
    for a in range(n):
        for b in range(n):
            gl = g_sl.q ** (2 * int(a == b)) * g_sl.gamma ** -2
            sl = g_sl.p ** int(2 * n * form.X[a][b])
            ok = ok and gl == sl
    out["GL shift at gamma = p is the SL shift"] = Check(ok, None, "q^{2 delta} gamma^-2 = q^{2X}")
    return out
