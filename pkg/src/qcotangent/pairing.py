"""Pairing of the RTT generators T with words in the RE generators L.

The basic pairing is <T_1, L_2> = eta^-2 q^{n - 1/n} R_12^2 with eta = q^{1/n}.
It extends to words through the coproduct of T, so <T, u v> is the matrix
product <T, u> <T, v>.  Elementary symmetric functions a_i are expanded into
words without using any relation, paired letter by letter, and compared with
the closed form for <T, a_i>.
"""
from __future__ import annotations

from .hdalgebra import HDSystem, elementary_symmetric, e_sym
from .ncalgebra import NcAlgebra, NcExpr, generator_matrix
from .rmatrix import Check, RMatrixContext, drinfeld_jimbo
from .scalars import Field
from .tensor import TensorOp, identity

__all__ = ["pair_t_l", "pair_slices", "pair_t_word", "pair_t_expr", "pair_t_ai",
           "pair_ta_closed_form", "mu_pairing_exponents", "verify_mu_pairing",
           "verify_mu_pairing_rescaled", "free_re_system"]


def _require_standard(ctx: RMatrixContext):
    if ctx.R != drinfeld_jimbo(ctx.field):
        raise ValueError("the pairing is normalized for the Drinfeld-Jimbo R-matrix only")
    if not ctx.field.sl:
        raise ValueError("the pairing needs the SL normalization eta = q^{1/n} (sl=True field)")


def pair_t_l(ctx: RMatrixContext) -> TensorOp:
    """<T_1, L_2> = q^{n - 3/n} R^2 as an operator on two legs (T on leg 1, L on leg 2)."""
    _require_standard(ctx)
    f, n = ctx.field, ctx.n
    # eta^-2 q^{n - 1/n} = p^{n^2 - 3}
    return (ctx.R @ ctx.R).scale(f.p ** (n * n - 3))


def pair_slices(ctx: RMatrixContext) -> dict:
    """(k, l) -> the n x n matrix <T, L^k_l>."""
    key = "pair_slices"
    if key in ctx.cache:
        return ctx.cache[key]
    big = pair_t_l(ctx)
    n = ctx.n
    out = {}
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            ent = {}
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    v = big.entry((i, k), (j, l))
                    if v != 0:
                        ent[(i - 1, j - 1)] = v
            out[(k, l)] = TensorOp(n, 1, ent, ctx.field.one)
    ctx.cache[key] = out
    return out


def pair_t_word(ctx: RMatrixContext, word) -> TensorOp:
    """<T, L^{k1}_{l1} ... L^{km}_{lm}> = <T, L^{k1}_{l1}> ... <T, L^{km}_{lm}>."""
    slices = pair_slices(ctx)
    acc = identity(ctx.n, 1, ctx.field.one)
    for kl in word:
        acc = acc @ slices[tuple(kl)]
    return acc


def pair_t_expr(ctx: RMatrixContext, x: NcExpr) -> TensorOp:
    """Linear extension of pair_t_word to an expression in the L generators."""
    gens = x.alg.gens
    acc = TensorOp(ctx.n, 1, {}, ctx.field.one)
    for w, c in x.terms.items():
        word = []
        for g in w:
            gen = gens[g]
            if gen.family != "L":
                raise ValueError("only words in L can be paired with T")
            word.append((gen.i, gen.j))
        acc = acc + pair_t_word(ctx, word).scale(c)
    return acc


def free_re_system(ctx: RMatrixContext) -> HDSystem:
    """L generators without relations, so that a_i expands to raw words."""
    alg = NcAlgebra(ctx.field, ("L",), name="free")
    return HDSystem(ctx, alg, L=generator_matrix(alg, "L"))


def pair_ta_closed_form(field: Field, i: int):
    """q^{-3i/n} n_q^-1 binom(n, i)_q (n_q + q^{n+1} - q^{n-2i+1})."""
    n, q = field.n, field.q
    return field.p ** (-3 * i) / field.qint(n) * field.qbinomial(n, i) \
        * (field.qint(n) + q ** (n + 1) - q ** (n - 2 * i + 1))


def pair_t_ai(ctx: RMatrixContext, i: int, system: HDSystem | None = None) -> TensorOp:
    """<T, a_i> from the word expansion of a_i; must be the closed form times I."""
    if not 0 <= i <= ctx.n:
        raise ValueError(f"need 0 <= i <= n, got {i}")
    system = system or free_re_system(ctx)
    res = pair_t_expr(ctx, elementary_symmetric(system, i))
    off = [k for k in res.entries if k[0] != k[1]]
    if off:
        raise ArithmeticError(f"<T, a_{i}> is not diagonal")
    expected = pair_ta_closed_form(ctx.field, i)
    if res != identity(ctx.n, 1, ctx.field.one).scale(expected):
        raise ArithmeticError(f"<T, a_{i}> differs from the closed form")
    return res


def mu_pairing_exponents(n: int) -> list:
    """Exponents of p in <T, mu_a> = q^{2a + 2 delta_an - n - 3/n - 1}."""
    return [n * (2 * a + 2 * int(a == n) - n - 1) - 3 for a in range(1, n + 1)]


def verify_mu_pairing(field: Field) -> dict:
    """e_i(s_1..s_n) with s_a = <T, mu_a> equals the scalar in <T, a_i> for every i."""
    s = [field.p ** e for e in mu_pairing_exponents(field.n)]
    out = {}
    for i in range(1, field.n + 1):
        lhs = e_sym(field, i, s)
        rhs = pair_ta_closed_form(field, i)
        out[f"e_{i}(<T, mu>) = <T, a_{i}>"] = Check(lhs == rhs, None if lhs == rhs else
                                                     field.to_text(lhs - rhs))
    return out


def verify_mu_pairing_rescaled(field: Field) -> dict:
    """With s~_a = q^{2a - n - 1}: e_i(s~) = binom(n, i)_q."""
    n = field.n
    s = [field.q ** (2 * a - n - 1) for a in range(1, n + 1)]
    out = {}
    for i in range(1, n + 1):
        lhs = e_sym(field, i, s)
        out[f"e_{i}(s~) = binom({n},{i})_q"] = Check(lhs == field.qbinomial(n, i))
    return out
