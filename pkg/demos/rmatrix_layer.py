"""Walk through the numeric R-matrix layer at n = 2 with symbolic q."""
from __future__ import annotations

from qcotangent import hecke
from qcotangent import rmatrix as rm
from qcotangent.scalars import Field


def show(name, op, field):
    print(f"{name}:")
    for row in op.to_rows():
        print("   ", "  ".join(field.to_text(v) if v != 0 else "0" for v in row))


def main():
    f = Field(2)
    ctx = rm.RMatrixContext(f)
    print("scalars live in Q(p) with q = p^2\n")
    show("R", ctx.R, f)
    print("braid relation:", rm.check_ybe(ctx.R).ok, "  Hecke:", rm.check_hecke(ctx.R, f.q).ok)
    show("D = Tr_2 Psi", ctx.D, f)
    show("C = Tr_1 Psi", ctx.C, f)
    o, _ = rm.o_matrix(ctx)
    show("O", o, f)
    a2 = hecke.antisymmetrizer(ctx, 2)
    print("A^(3) vanishes:", hecke.antisymmetrizer(ctx, 3).is_zero(),
          "  A^(2) idempotent:", a2 @ a2 == a2)
    tw = rm.twist(ctx.R, [[1, f.p], [f.p ** 3, 2]], f)
    tctx = rm.RMatrixContext(f, tw, name="R^f")
    show("twisted R^f", tw, f)
    print("twisted D equals D:", tctx.D == ctx.D, "  C D = q^-4 I:", rm.check_cd(tctx).ok)


if __name__ == "__main__":
    main()
