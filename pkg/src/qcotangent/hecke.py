"""Hecke-algebra images: antisymmetrizers, symmetrizers, Jucys-Murphy elements,
the reversal operators Upsilon, and the companion matrix *R = P R^-1 P.
"""
from __future__ import annotations

from .rmatrix import Check, RMatrixContext, _diff_check, check_hecke, r_trace, skew_inverse, \
    d_matrix, c_matrix
from .tensor import TensorOp, embed, identity, inverse, rank

__all__ = [
    "antisymmetrizer", "symmetrizer", "hecke_tower", "shift_up", "check_glqn",
    "jucys_murphy", "upsilon", "star_r", "star_antisymmetrizer", "check_idempotent",
    "check_star_identities", "check_theta_j",
]


def shift_up(x: TensorOp, by: int = 1) -> TensorOp:
    """X^{up by}: the same operator moved to legs by+1 .. by+k of a longer chain."""
    return embed(x, tuple(range(by + 1, by + x.legs + 1)), x.legs + by)


def _widen(x: TensorOp, legs: int) -> TensorOp:
    return x if x.legs == legs else embed(x, tuple(range(1, x.legs + 1)), legs)


def hecke_tower(r: TensorOp, k: int, t, field, shifted: bool = False) -> TensorOp:
    """Antisymmetrizer of a Hecke matrix with eigenvalues t, -1/t.

    Uses A^(k) = (k-1)_t/k_t A' (t^{k-1}/(k-1)_t I - R_j) A' where either
    A' = A^(k-1) and j = k-1, or (shifted form) A' = A^(k-1) moved up one leg
    and j = 1.
    """
    dim = r.dim
    a = identity(dim, 1, field.one)
    for m in range(2, k + 1):
        c_outer = field.qint(m - 1, t) / field.qint(m, t)
        c_inner = t ** (m - 1) / field.qint(m - 1, t)
        if shifted:
            prev = shift_up(a, 1)
            rj = embed(r, (1, 2), m)
        else:
            prev = _widen(a, m)
            rj = embed(r, (m - 1, m), m)
        mid = identity(dim, m, field.one).scale(c_inner) - rj
        a = (prev @ mid @ prev).scale(c_outer)
    return a


def antisymmetrizer(ctx: RMatrixContext, k: int) -> TensorOp:
    """A^(k) built by both recursions; a mismatch is a hard error."""
    key = ("A", k)
    if key in ctx.cache:
        return ctx.cache[key]
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        a = ctx.I()
    else:
        a = hecke_tower(ctx.R, k, ctx.q, ctx.field)
        b = hecke_tower(ctx.R, k, ctx.q, ctx.field, shifted=True)
        if a != b:
            raise ArithmeticError(f"the two antisymmetrizer recursions disagree at k={k}")
        if a @ a != a:
            raise ArithmeticError(f"A^({k}) is not idempotent")
    ctx.cache[key] = a
    return a


def symmetrizer(ctx: RMatrixContext, k: int) -> TensorOp:
    """S^(k): the antisymmetrizer recursion with q replaced by -1/q."""
    key = ("S", k)
    if key in ctx.cache:
        return ctx.cache[key]
    t = -1 / ctx.q
    if k == 1:
        s = ctx.I()
    else:
        s = hecke_tower(ctx.R, k, t, ctx.field)
        if s != hecke_tower(ctx.R, k, t, ctx.field, shifted=True):
            raise ArithmeticError(f"the two symmetrizer recursions disagree at k={k}")
        if s @ s != s:
            raise ArithmeticError(f"S^({k}) is not idempotent")
    ctx.cache[key] = s
    return s


def check_idempotent(ctx: RMatrixContext, k: int) -> Check:
    """A^(k) R_i = R_i A^(k) = -q^-1 A^(k) for all i < k."""
    a = antisymmetrizer(ctx, k)
    target = a.scale(-1 / ctx.q)
    for i in range(1, k):
        ri = embed(ctx.R, (i, i + 1), k)
        for lhs in (a @ ri, ri @ a):
            c = _diff_check(lhs, target, f"A^({k}) R_{i} = -q^-1 A^({k})")
            if not c:
                return c
    return Check(True, detail=f"A^({k}) absorbs R_i")


def check_glqn(ctx: RMatrixContext) -> Check:
    """A^(n+1) = 0 and rank A^(n) = 1."""
    h = check_hecke(ctx.R, ctx.q)
    if not h:
        return Check(False, h.witness, "Hecke precondition fails")
    n = ctx.n
    top = antisymmetrizer(ctx, n + 1)
    if not top.is_zero():
        return Check(False, next(iter(top.entries)), f"A^({n + 1}) is nonzero")
    rk = rank(antisymmetrizer(ctx, n))
    if rk != 1:
        return Check(False, rk, f"rank A^({n}) = {rk}")
    return Check(True, detail=f"A^({n + 1}) = 0, rank A^({n}) = 1")


def jucys_murphy(ctx: RMatrixContext, k: int):
    """J_1 = I, J_{i+1} = R_i J_i R_i on k legs; returns ([J_1..J_k], Z_k)."""
    js = [identity(ctx.dim, k, ctx.field.one)]
    for i in range(1, k):
        ri = ctx.R_at(i, k)
        js.append(ri @ js[-1] @ ri)
    for a in range(k):
        for b in range(a + 1, k):
            if js[a] @ js[b] != js[b] @ js[a]:
                raise ArithmeticError(f"J_{a + 1} and J_{b + 1} do not commute")
    z = identity(ctx.dim, k, ctx.field.one)
    for j in js:
        z = z @ j
    return js, z


def upsilon(x: TensorOp, k: int, one=1) -> TensorOp:
    """Upsilon^(1) = 1, Upsilon^(m+1) = (X_1 ... X_m) Upsilon^(m)."""
    u = identity(x.dim, 1, one)
    for m in range(1, k):
        chain = identity(x.dim, m + 1, one)
        for i in range(1, m + 1):
            chain = chain @ embed(x, (i, i + 1), m + 1)
        u = chain @ _widen(u, m + 1)
    return u


def upsilon_right(x: TensorOp, k: int, one=1) -> TensorOp:
    """The same operator from Upsilon^(m+1) = Upsilon^(m) (X_m ... X_1)."""
    u = identity(x.dim, 1, one)
    for m in range(1, k):
        chain = identity(x.dim, m + 1, one)
        for i in range(m, 0, -1):
            chain = chain @ embed(x, (i, i + 1), m + 1)
        u = _widen(u, m + 1) @ chain
    return u


def star_r(ctx: RMatrixContext) -> TensorOp:
    """*R = P R^-1 P, checked Hecke with q replaced by 1/q."""
    if "starR" in ctx.cache:
        return ctx.cache["starR"]
    s = ctx.P @ ctx.Rinv @ ctx.P
    h = check_hecke(s, 1 / ctx.q)
    if not h:
        raise ArithmeticError("*R is not of Hecke type")
    ctx.cache["starR"] = s
    return s


def star_context(ctx: RMatrixContext) -> RMatrixContext:
    if "starctx" not in ctx.cache:
        ctx.cache["starctx"] = RMatrixContext(ctx.field, star_r(ctx), name=f"*{ctx.name}",
                                                 q=1 / ctx.q)
    return ctx.cache["starctx"]


def star_antisymmetrizer(ctx: RMatrixContext, k: int) -> TensorOp:
    """*A^(k) = Upsilon_P A^(k) Upsilon_P, cross-checked against the recursion for *R."""
    key = ("starA", k)
    if key in ctx.cache:
        return ctx.cache[key]
    up = upsilon(ctx.P, k, ctx.field.one)
    a = up @ antisymmetrizer(ctx, k) @ up
    direct = hecke_tower(star_r(ctx), k, 1 / ctx.q, ctx.field) if k > 1 else ctx.I()
    if a != direct:
        raise ArithmeticError(f"*A^({k}) disagrees with the direct recursion")
    s = star_r(ctx)
    for i in range(1, k):
        if embed(s, (i, i + 1), k) @ a != a.scale(-ctx.q):
            raise ArithmeticError(f"*R_{i} *A^({k}) != -q *A^({k})")
    ctx.cache[key] = a
    return a


def check_theta_j(ctx: RMatrixContext, i: int) -> Check:
    """R-trace over legs i+1..2i of Upsilon_R^(2i) = (Upsilon_R^(i))^4 = (J_1..J_i)^2."""
    u2 = upsilon(ctx.R, 2 * i, ctx.field.one)
    lhs = r_trace(ctx, u2, list(range(i + 1, 2 * i + 1)))
    ui = upsilon(ctx.R, i, ctx.field.one)
    mid = ui @ ui @ ui @ ui
    js, z = jucys_murphy(ctx, i)
    rhs = z @ z
    c = _diff_check(lhs, mid, f"traced Upsilon^({2 * i}) = (Upsilon^({i}))^4")
    if not c:
        return c
    return _diff_check(mid, rhs, f"(Upsilon^({i}))^4 = (J_1..J_{i})^2")


def check_star_identities(ctx: RMatrixContext, max_i: int, m_test: TensorOp | None = None) -> dict:
    """Operator identities around *R and Upsilon; returns {name: Check}."""
    out = {}
    f = ctx.field
    s = star_r(ctx)
    sc = star_context(ctx)
    out["D(*R) = D^-1"] = _diff_check(sc.D, inverse(ctx.D), "D of *R")
    out["C(*R) = C^-1"] = _diff_check(sc.C, inverse(ctx.C), "C of *R")
    w = f.q - 1 / f.q
    out["*R = PRP - (q - 1/q) I"] = _diff_check(
        s, ctx.P @ ctx.R @ ctx.P - identity(ctx.dim, 2, f.one).scale(w), "*R Hecke form")
    for k in range(1, ctx.n + 1):
        try:
            star_antisymmetrizer(ctx, k)
            out[f"*A^({k}) two routes, *R_i *A = -q *A"] = Check(True)
        except ArithmeticError as exc:
            out[f"*A^({k}) two routes, *R_i *A = -q *A"] = Check(False, detail=str(exc))
    for i in range(1, max_i + 1):
        out[f"Theta-J i={i}"] = check_theta_j(ctx, i)
    k = 3
    uR = upsilon(ctx.R, k, f.one)
    uP = upsilon(ctx.P, k, f.one)
    out["Upsilon recursions agree"] = _diff_check(uR, upsilon_right(ctx.R, k, f.one), "Upsilon")
    out["Upsilon_P^2 = I"] = _diff_check(uP @ uP, identity(ctx.dim, k, f.one), "Upsilon_P^2")
    prp = ctx.P @ ctx.R @ ctx.P
    for i in range(1, k):
        out[f"R_{i} Upsilon_R = Upsilon_R R_{k - i}"] = _diff_check(
            ctx.R_at(i, k) @ uR, uR @ ctx.R_at(k - i, k), "reflection")
        out[f"R_{i} Upsilon_P = Upsilon_P (PRP)_{k - i}"] = _diff_check(
            ctx.R_at(i, k) @ uP, uP @ embed(prp, (k - i, k - i + 1), k), "P reflection")
    if m_test is not None:
        for i in range(1, k + 1):
            out[f"M_{i} Upsilon_P = Upsilon_P M_{k - i + 1}"] = _diff_check(
                embed(m_test, (i,), k) @ uP, uP @ embed(m_test, (k - i + 1,), k), "M reflection")
    return out
