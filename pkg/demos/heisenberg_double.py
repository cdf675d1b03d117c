"""Reduce a few identities in the reflection-equation and Heisenberg-double algebras at n = 2."""
from __future__ import annotations

from qcotangent import hdalgebra as hda
from qcotangent import rmatrix as rm
from qcotangent.scalars import Field


def main():
    ctx = rm.RMatrixContext(Field(2))
    re = hda.build_re_presentation(ctx)
    print(f"reflection equation algebra: {len(re.alg.rules)} rewriting rules, "
          f"overlaps resolved: {re.alg.overlap_check().ok}")
    print("first rules:")
    for line in re.alg.dump_rules().splitlines()[:4]:
        print("   ", line)
    a1, a2 = hda.elementary_symmetric(re, 1), hda.elementary_symmetric(re, 2)
    print("a_1 =", a1.to_text())
    print("a_2 =", a2.to_text())
    print("a_2 central:", hda.verify_centrality(re, a2).status)
    print("Cayley-Hamilton L^2 - q a_1 L + q^2 a_2 = 0:", hda.verify_ch(re).status)
    print("L^1_2 central (expected refuted):", hda.verify_centrality(re, re.alg.gen("L", 1, 2)).status)

    hd = hda.build_hd_presentation(ctx)
    print(f"\nHeisenberg double: {len(hd.alg.rules)} rules")
    print("det_R T =", hda.det_r(hd).to_text())
    for name, v in hda.verify_det_relations(hd).items():
        print(f"   {v.status:10s} {name}")
    for i in (1, 2):
        print(f"   {hda.verify_tsigma(hd, i).status:10s} exchange of T with a_{i}")


if __name__ == "__main__":
    main()
