"""Concrete R-matrices and the operator data attached to a skew-invertible R.

The skew inverse Psi is found by solving Tr_2 R_12 Psi_23 = P_13 as one
linear system; D = Tr_2 Psi_12 and C = Tr_1 Psi_12 weight the R-trace.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .scalars import Field
from .tensor import (
    TensorOp, decode, embed, identity, inverse, partial_trace,
    partial_trace_many, permutation, solve,
)

__all__ = [
    "Check", "RMatrixContext", "drinfeld_jimbo", "twist", "twist_operator",
    "check_ybe", "check_hecke", "skew_inverse", "d_matrix", "c_matrix",
    "r_trace", "o_matrix", "sl_partner", "sl_partner_diagonal", "NotSkewInvertible",
    "check_dmat1", "check_dmat3", "check_dmat4", "check_cd", "check_aa", "check_da",
    "check_cyclic",
]


class NotSkewInvertible(ValueError):
    pass


@dataclass
class Check:
    """Outcome of an exact check; ``witness`` is the first failing entry."""

    ok: bool
    witness: Any = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def _diff_check(lhs: TensorOp, rhs: TensorOp, what: str) -> Check:
    d = lhs.first_difference(rhs)
    if d is None:
        return Check(True, detail=what)
    return Check(False, witness=d, detail=f"{what}: mismatch at row {d[0]}, col {d[1]}")


def drinfeld_jimbo(field: Field, n: int | None = None) -> TensorOp:
    """R = sum_ij q^{delta_ij} E_ij (x) E_ji + (q - q^-1) sum_{i<j} E_ii (x) E_jj."""
    n = field.n if n is None else n
    if n < 2:
        raise ValueError("the Drinfeld-Jimbo matrix needs n >= 2")
    q = field.q
    ent = {}
    for i in range(n):
        for j in range(n):
            # E_ij (x) E_ji maps e_j (x) e_i to e_i (x) e_j
            ent[(i * n + j, j * n + i)] = q if i == j else field.one
    w = q - 1 / q
    for i in range(n):
        for j in range(i + 1, n):
            ent[(i * n + j, i * n + j)] = w
    return TensorOp(n, 2, ent, field.one)


def twist_operator(field: Field, f: Sequence[Sequence]) -> TensorOp:
    n = len(f)
    return TensorOp(n, 2, {(i * n + j, i * n + j): field(f[i][j]) for i in range(n) for j in range(n)},
                    field.one)


def twist(r: TensorOp, f: Sequence[Sequence], field: Field) -> TensorOp:
    """R^f = F R F^-1 with F = sum f_ij E_ii (x) E_jj."""
    for row in f:
        for v in row:
            if field(v) == 0:
                raise ValueError("twist parameters must be nonzero")
    F = twist_operator(field, f)
    out = F @ r @ inverse(F)
    if not check_ybe(out):
        raise ValueError("twisted matrix fails the braid relation")
    return out


def check_ybe(r: TensorOp) -> Check:
    """R_1 R_2 R_1 = R_2 R_1 R_2 on three legs."""
    r1 = embed(r, (1, 2), 3)
    r2 = embed(r, (2, 3), 3)
    return _diff_check(r1 @ r2 @ r1, r2 @ r1 @ r2, "braid relation")


def check_hecke(r: TensorOp, q) -> Check:
    """(R - q I)(R + q^-1 I) = 0."""
    i = identity(r.dim, 2, r.one)
    prod = (r - i.scale(q)) @ (r + i.scale(1 / q))
    zero = TensorOp(r.dim, 2, {}, r.one)
    return _diff_check(prod, zero, "Hecke condition")


def skew_inverse(r: TensorOp) -> TensorOp:
    """Solve Tr_2 R_12 Psi_23 = P_13 for Psi and check Tr_2 Psi_12 R_23 = P_13."""
    n = r.dim
    N = n ** 4

    def idx(a, b, c, d):
        return ((a * n + b) * n + c) * n + d

    # equation (i,k,j,l):  sum_{m,s} R[(i,m),(j,s)] Psi[(s,k),(m,l)] = d_il d_kj
    mat = {}
    for (row, col), v in r.entries.items():
        i, m = divmod(row, n)
        j, s = divmod(col, n)
        for k in range(n):
            for l in range(n):
                key = (idx(i, k, j, l), idx(s, k, m, l))
                mat[key] = mat[key] + v if key in mat else v
    rhs = {idx(i, k, k, i): r.one for i in range(n) for k in range(n)}
    try:
        sol = solve(mat, rhs, N, N, r.one)
    except ValueError as exc:
        raise NotSkewInvertible("not skew invertible") from exc
    ent = {}
    for u, v in sol.items():
        s, k, m, l = decode(u, n, 4)
        ent[((s * n + k), (m * n + l))] = v
    psi = TensorOp(n, 2, ent, r.one)
    lhs = partial_trace(embed(psi, (1, 2), 3) @ embed(r, (2, 3), 3), 2)
    if lhs != permutation(n, r.one):
        raise NotSkewInvertible("second skew-inverse relation fails")
    return psi


def d_matrix(psi: TensorOp) -> TensorOp:
    return partial_trace(psi, 2)


def c_matrix(psi: TensorOp) -> TensorOp:
    return partial_trace(psi, 1)


class RMatrixContext:
    """A skew-invertible R-matrix on V (x) V together with Psi, D, C.

    The braid relation is checked on construction.  Antisymmetrizers and
    other derived operators are cached per context by :mod:`hecke`.
    """

    def __init__(self, field: Field, r: TensorOp | None = None, name: str = "R", q=None):
        self.field = field
        self.n = field.n
        self.dim = field.n
        self.R = drinfeld_jimbo(field) if r is None else r
        self.name = name
        self._q = q
        ybe = check_ybe(self.R)
        if not ybe:
            raise ValueError(f"{name} is not an R-matrix: {ybe.detail}")
        self.psi = skew_inverse(self.R)
        self.D = d_matrix(self.psi)
        self.C = c_matrix(self.psi)
        self.P = permutation(self.dim, field.one)
        self.cache: dict = {}

    @property
    def q(self):
        """Hecke parameter: R - R^-1 = (q - 1/q) I."""
        return self.field.q if self._q is None else self._q

    def I(self, legs: int = 1) -> TensorOp:
        return identity(self.dim, legs, self.field.one)

    @property
    def Rinv(self) -> TensorOp:
        if "Rinv" not in self.cache:
            self.cache["Rinv"] = inverse(self.R)
        return self.cache["Rinv"]

    def R_at(self, i: int, legs: int, power: int = 1) -> TensorOp:
        """R_i^{power} on V^{(x)legs}."""
        key = ("R_at", i, legs, power)
        if key not in self.cache:
            base = self.R if power == 1 else (self.Rinv if power == -1 else self.R ** power)
            self.cache[key] = embed(base, (i, i + 1), legs)
        return self.cache[key]

    def D_at(self, i: int, legs: int) -> TensorOp:
        return embed(self.D, (i,), legs)

    def __repr__(self):
        return f"RMatrixContext({self.name}, {self.field.label})"


def r_trace(ctx: RMatrixContext, y: TensorOp, leg: int | Sequence[int] = 1) -> TensorOp:
    """Tr_(i)(D_i Y); several legs are traced one after another, highest first."""
    legs = [leg] if isinstance(leg, int) else sorted(leg, reverse=True)
    for l in legs:
        y = partial_trace(embed(ctx.D, (l,), y.legs) @ y, l)
    return y


def o_matrix(ctx: RMatrixContext):
    """(O, O^-1) with O_1 = n_q Tr_{2..n+1}(P_1...P_n A^(n)), O^-1_1 = n_q Tr(A^(n) P_n...P_1)."""
    from .hecke import antisymmetrizer

    n = ctx.n
    k = n + 1
    a = embed(antisymmetrizer(ctx, n), tuple(range(1, n + 1)), k)
    chain = identity(ctx.dim, k, ctx.field.one)
    for i in range(1, n + 1):
        chain = chain @ embed(ctx.P, (i, i + 1), k)
    chain_rev = identity(ctx.dim, k, ctx.field.one)
    for i in range(n, 0, -1):
        chain_rev = chain_rev @ embed(ctx.P, (i, i + 1), k)
    nq = ctx.field.qint(n)
    o = partial_trace_many(chain @ a, range(2, k + 1)).scale(nq)
    oinv = partial_trace_many(a @ chain_rev, range(2, k + 1)).scale(nq)
    if o @ oinv != ctx.I():
        raise ArithmeticError("O and its stated inverse do not multiply to I")
    return o, oinv


def _proportional_to_identity(x: TensorOp):
    """Return c if x = c I, else None."""
    if any(i != j for (i, j) in x.entries):
        return None
    vals = [x[(i, i)] for i in range(x.side)]
    c = vals[0]
    return c if all(v == c for v in vals) else None


def sl_partner(ctx: RMatrixContext, N: TensorOp) -> TensorOp:
    """R~ = N_1 R N_1^-1 for N with R N_1 N_2 = N_1 N_2 R and N^n proportional to O_R."""
    n = ctx.n
    n1 = embed(N, (1,), 2)
    n2 = embed(N, (2,), 2)
    if ctx.R @ n1 @ n2 != n1 @ n2 @ ctx.R:
        raise ValueError("N_1 N_2 does not commute with R")
    o, oinv = o_matrix(ctx)
    if _proportional_to_identity((N ** n) @ oinv) is None:
        raise ValueError("N^n is not proportional to O_R")
    rt = n1 @ ctx.R @ inverse(n1)
    if rt != inverse(n2) @ ctx.R @ n2:
        raise ArithmeticError("N_1 R N_1^-1 differs from N_2^-1 R N_2")
    o2, _ = o_matrix(RMatrixContext(ctx.field, rt, name=f"{ctx.name}~"))
    if _proportional_to_identity(o2) is None:
        raise ArithmeticError("O of the partner is not proportional to I")
    return rt


def sl_partner_diagonal(ctx: RMatrixContext) -> TensorOp:
    """Diagonal N with N_ii = (O_ii / O_11)^{1/n}, taken exactly in the field.

    Only N^n proportional to O is needed, so the common sign of O drops out
    and no roots of unity are introduced.
    """
    o, _ = o_matrix(ctx)
    if any(i != j for (i, j) in o.entries):
        raise ValueError("O_R is not diagonal")
    o11 = o[(0, 0)]
    ent = {(i, i): ctx.field.nth_root(o[(i, i)] / o11, ctx.n) for i in range(ctx.dim)}
    return TensorOp(ctx.dim, 1, ent, ctx.field.one)


# -- identities satisfied by D, C and the R-trace ----------------------------

def check_dmat1(ctx: RMatrixContext) -> Check:
    """Tr_2 R_12 D_2 = I_1 and Tr_1 C_1 R_12 = I_2."""
    a = partial_trace(ctx.R @ ctx.D_at(2, 2), 2)
    c = _diff_check(a, ctx.I(), "Tr_2 R D_2 = I")
    if not c:
        return c
    b = partial_trace(embed(ctx.C, (1,), 2) @ ctx.R, 1)
    return _diff_check(b, ctx.I(), "Tr_1 C_1 R = I")


def check_dmat3(ctx: RMatrixContext) -> Check:
    """R D_1 D_2 = D_1 D_2 R and the same for C."""
    for m, nm in ((ctx.D, "D"), (ctx.C, "C")):
        mm = embed(m, (1,), 2) @ embed(m, (2,), 2)
        c = _diff_check(ctx.R @ mm, mm @ ctx.R, f"R {nm}_1 {nm}_2 = {nm}_1 {nm}_2 R")
        if not c:
            return c
    # D_1 I_2 = Tr_3 D_3 R_2^{e} P_12 R_2^{-e}
    for e in (1, -1):
        x = ctx.R_at(2, 3, e) @ embed(ctx.P, (1, 2), 3) @ ctx.R_at(2, 3, -e)
        lhs = partial_trace(ctx.D_at(3, 3) @ x, 3)
        c = _diff_check(lhs, embed(ctx.D, (1,), 2), f"Tr_3 D_3 R_2^{e} P_12 R_2^{-e} = D_1")
        if not c:
            return c
    return Check(True, detail="D and C commute with R")


def check_dmat4(ctx: RMatrixContext, y: TensorOp) -> Check:
    """R-trace over leg 2 of R^e Y_1 R^-e equals I_1 Tr_R(Y), e = +-1."""
    tr = r_trace(ctx, y, 1)
    target = ctx.I().scale(tr[(0, 0)]) if tr.entries else TensorOp(ctx.dim, 1, {}, ctx.field.one)
    y1 = embed(y, (1,), 2)
    for e in (1, -1):
        lhs = r_trace(ctx, ctx.R_at(1, 2, e) @ y1 @ ctx.R_at(1, 2, -e), 2)
        c = _diff_check(lhs, target, f"Tr_R(2) R^{e} Y_1 R^{-e} = Tr_R Y")
        if not c:
            return c
    return Check(True, detail="R-trace is R-conjugation invariant")


def check_cd(ctx: RMatrixContext) -> Check:
    """D C = C D = q^{-2n} I."""
    target = ctx.I().scale(ctx.q ** (-2 * ctx.n))
    c = _diff_check(ctx.D @ ctx.C, target, "D C = q^-2n I")
    return c if not c else _diff_check(ctx.C @ ctx.D, target, "C D = q^-2n I")


def check_aa(ctx: RMatrixContext) -> Check:
    """Tr_R(k) A^(k) = q^-n (n+1-k)_q / k_q A^(k-1) for 1 <= k <= n."""
    from .hecke import antisymmetrizer

    f = ctx.field
    for k in range(1, ctx.n + 1):
        lhs = r_trace(ctx, antisymmetrizer(ctx, k), k)
        coeff = ctx.q ** (-ctx.n) * f.qint(ctx.n + 1 - k) / f.qint(k)
        if k == 1:
            target = TensorOp(ctx.dim, 0, {(0, 0): coeff}, f.one)
            ok = lhs.entries.get((0, 0), 0) == coeff
            if not ok:
                return Check(False, (lhs.entries.get((0, 0)), coeff), "Tr_R I")
            continue
        c = _diff_check(lhs, antisymmetrizer(ctx, k - 1).scale(coeff), f"traced A^({k})")
        if not c:
            return c
    return Check(True, detail="R-traces of antisymmetrizers")


def check_da(ctx: RMatrixContext) -> Check:
    """A^(n) D_1 ... D_n = q^{-n^2} A^(n)."""
    from .hecke import antisymmetrizer

    n = ctx.n
    a = antisymmetrizer(ctx, n)
    dd = identity(ctx.dim, n, ctx.field.one)
    for i in range(1, n + 1):
        dd = dd @ ctx.D_at(i, n)
    return _diff_check(a @ dd, a.scale(ctx.q ** (-n * n)), "A^(n) D_1..D_n = q^-n^2 A^(n)")


def check_cyclic(ctx: RMatrixContext, x: TensorOp, y: TensorOp) -> Check:
    """Tr_R(1..k)(X Y) = Tr_R(1..k)(Y X)."""
    legs = list(range(1, x.legs + 1))
    a = r_trace(ctx, x @ y, legs)
    b = r_trace(ctx, y @ x, legs)
    return _diff_check(a, b, "cyclicity of the R-trace")
