"""Command-line verification runner.

    python -m qcotangent verify --suite re --n 2 --mode exact
    python -m qcotangent verify --suite all --n 2 --json report.json

Each suite is a list of named checks.  In ``rational`` mode the symbolic
parameters are replaced by seeded random rationals (three points) and a check
is verified only if it holds at every point.  Reports are deterministic for a
fixed (suite, n, mode, seed); timings are only included with ``--timing``.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import __version__
from . import dynamical as dyn
from . import evolution as evo
from . import hdalgebra as hda
from . import hecke
from . import pairing
from . import rmatrix as rm
from .ncalgebra import RewriteError, Verdict
from .scalars import Field, random_points
from .tensor import TensorOp

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
POINTS_PER_CHECK = 3
PRNG = "python random.Random (Mersenne Twister)"


@dataclass
class Config:
    n: int
    mode: str
    seed: int
    cutoff: int | None
    tau: complex | None
    z: list | None = None


@dataclass
class Item:
    id: str
    anchor: str
    run: Callable[[], object]


# -- verdict normalisation ---------------------------------------------------------

def _normalize(outcome) -> list:
    """A check may return Check, Verdict, bool, or a dict of those; flatten to (suffix, status, detail)."""
    if isinstance(outcome, dict):
        out = []
        for k, v in outcome.items():
            for suffix, status, detail in _normalize(v):
                out.append((f"{k}{'/' + suffix if suffix else ''}", status, detail))
        return out
    if isinstance(outcome, Verdict):
        return [("", outcome.status, outcome.detail or "")]
    if isinstance(outcome, rm.Check):
        return [("", "verified" if outcome.ok else "refuted", outcome.detail or "")]
    if isinstance(outcome, bool):
        return [("", "verified" if outcome else "refuted", "")]
    raise TypeError(f"unexpected check outcome {outcome!r}")


def _execute(item: Item) -> list:
    try:
        return _normalize(item.run())
    except RewriteError as exc:
        return [("", "inconclusive", str(exc))]
    except ArithmeticError as exc:
        return [("", "refuted", str(exc))]


# -- field construction --------------------------------------------------------------

def _field(n: int, point: dict | None, sl: bool = False, keep_mu: bool = False) -> Field:
    if point is None:
        return Field(n, sl=sl)
    vals = {k: v for k, v in point.items() if not (sl and k == "g")}
    if keep_mu:
        vals = {k: v for k, v in vals.items() if not k.startswith("m")}
    return Field(n, sl=sl, values=vals)


def _generic_matrix(field: Field, n: int) -> TensorOp:
    ent = {(i, j): field(Fraction(3 * i + 5 * j + 2, 7 + i + j)) for i in range(n) for j in range(n)}
    return TensorOp(n, 1, ent, field.one)


# -- suites ------------------------------------------------------------------------------

def suite_rmatrix(cfg: Config, point) -> list:
    n = cfg.n
    f = _field(n, point)
    fs = _field(n, point, sl=True)
    items = []
    contexts = [(f"R({n})", lambda: rm.RMatrixContext(f))]
    if n == 2:
        t = fs.p ** 2 if point is None else fs(Fraction(7, 3))
        contexts.append(("R^f(2)", lambda: rm.RMatrixContext(
            fs, rm.twist(rm.drinfeld_jimbo(fs), [[1, t], [1 / t, 1]], fs), name="R^f")))
    for label, make in contexts:
        cache = {}

        def ctx(make=make, cache=cache):
            if "c" not in cache:
                cache["c"] = make()
            return cache["c"]

        items += [
            Item(f"rmatrix/{label}/braid", "braid relation R1 R2 R1 = R2 R1 R2",
                 lambda ctx=ctx: rm.check_ybe(ctx().R)),
            Item(f"rmatrix/{label}/hecke", "Hecke condition (R - q)(R + 1/q) = 0",
                 lambda ctx=ctx: rm.check_hecke(ctx().R, ctx().q)),
            Item(f"rmatrix/{label}/skew-inverse", "Tr_2 R_12 Psi_23 = P_13 = Tr_2 Psi_12 R_23",
                 lambda ctx=ctx: rm.Check(ctx().psi is not None, detail="solved and verified")),
            Item(f"rmatrix/{label}/trace-unit", "Tr_2 R D_2 = I, Tr_1 C_1 R = I",
                 lambda ctx=ctx: rm.check_dmat1(ctx())),
            Item(f"rmatrix/{label}/DC-invariance", "R commutes with D_1 D_2 and C_1 C_2",
                 lambda ctx=ctx: rm.check_dmat3(ctx())),
            Item(f"rmatrix/{label}/trace-conjugation", "R-trace of R Y_1 R^-1 over leg 2",
                 lambda ctx=ctx: rm.check_dmat4(ctx(), _generic_matrix(ctx().field, n))),
            Item(f"rmatrix/{label}/CD", "C D = q^-2n I", lambda ctx=ctx: rm.check_cd(ctx())),
            Item(f"rmatrix/{label}/trace-antisymmetrizer", "R-trace of A^(k) reduces A^(k-1)",
                 lambda ctx=ctx: rm.check_aa(ctx())),
            Item(f"rmatrix/{label}/DA", "A^(n) D_1..D_n = q^-n^2 A^(n)",
                 lambda ctx=ctx: rm.check_da(ctx())),
        ]
    base = lambda: rm.RMatrixContext(f)
    if n == 2:
        items.append(Item("rmatrix/R(2)/D-value", "D = diag(q^-3, q^-1)", lambda: rm.Check(
            base().D == TensorOp(2, 1, {(0, 0): f.q ** -3, (1, 1): f.q ** -1}, f.one))))
    items.append(Item(f"rmatrix/R({n})/O-value", "O = (-1)^{n+1} I", lambda: rm.Check(
        rm.o_matrix(base())[0] == rm.RMatrixContext(f).I().scale((-1) ** (n + 1)))))
    return items


def suite_hecke(cfg: Config, point) -> list:
    n = cfg.n
    f = _field(n, point)
    holder = {}

    def ctx():
        if "c" not in holder:
            holder["c"] = rm.RMatrixContext(f)
        return holder["c"]

    items = [Item("hecke/glqn", "A^(n+1) = 0 and rank A^(n) = 1", lambda: hecke.check_glqn(ctx()))]
    for k in range(2, n + 1):
        items.append(Item(f"hecke/absorb-{k}", "A^(k) R_i = -1/q A^(k)",
                          lambda k=k: hecke.check_idempotent(ctx(), k)))
    items.append(Item("hecke/symmetrizer", "S^(2) idempotent, two recursions",
                      lambda: rm.Check(hecke.symmetrizer(ctx(), 2) is not None)))
    items.append(Item("hecke/jucys-murphy", "J_i commute",
                      lambda: rm.Check(hecke.jucys_murphy(ctx(), 3) is not None)))
    items.append(Item("hecke/star-R", "*R identities, Upsilon reflections, traced Upsilon",
                      lambda: hecke.check_star_identities(ctx(), 2, _generic_matrix(f, n))))
    return items


def suite_re(cfg: Config, point) -> list:
    n = cfg.n
    f = _field(n, point)
    holder = {}

    def hd():
        if "h" not in holder:
            holder["h"] = hda.build_re_presentation(rm.RMatrixContext(f))
        return holder["h"]

    items = [Item("re/overlaps", "rewriting system closed under overlaps",
                  lambda: rm.Check(hd().alg.overlap_check().ok))]
    for i in range(1, n + 1):
        items.append(Item(f"re/chn-{i}", "Cayley-Hamilton-Newton identity",
                          lambda i=i: hda.verify_chn(hd(), i)))
        items.append(Item(f"re/newton-{i}", "Newton relation", lambda i=i: hda.verify_newton(hd(), i)))
        items.append(Item(f"re/central-a{i}", "a_i central",
                          lambda i=i: hda.verify_centrality(hd(), hda.elementary_symmetric(hd(), i))))
        items.append(Item(f"re/central-p{i}", "p_i central",
                          lambda i=i: hda.verify_centrality(hd(), hda.power_sum(hd(), i))))
        if i > 1:
            items.append(Item(f"re/power-sum-{i}", "p_i = ch(R_{i-1}..R_1)",
                              lambda i=i: hda.verify_power_sum_as_ch(hd(), i)))
    items.append(Item("re/cayley-hamilton", "Cayley-Hamilton identity and L^-1",
                      lambda: hda.verify_ch(hd())))
    for k in (2, 3):
        items.append(Item(f"re/copies-{k}", "L_1bar..L_kbar = L_kunder..L_1under",
                          lambda k=k: hda.verify_lll(hd(), k)))
    return items


def suite_hd(cfg: Config, point) -> list:
    n = cfg.n
    f = _field(n, point)
    fs = _field(n, point, sl=True)
    holder = {}

    def hd():
        if "h" not in holder:
            holder["h"] = hda.build_hd_presentation(rm.RMatrixContext(f))
        return holder["h"]

    def hd_sl():
        if "s" not in holder:
            holder["s"] = hda.build_hd_presentation(rm.RMatrixContext(fs), sl_quotient=True)
        return holder["s"]

    items = []
    for i in range(1, n + 1):
        items.append(Item(f"hd/T-a{i}", "exchange of T with a_i", lambda i=i: hda.verify_tsigma(hd(), i)))
        items.append(Item(f"hd/T-p{i}", "exchange of T with p_i", lambda i=i: hda.verify_tp(hd(), i)))
    items.append(Item("hd/copies", "Jucys-Murphy dressed copies of L",
                      lambda: hda.verify_copy_identities(hd(), 3)))
    items.append(Item("hd/det", "quantum determinant relations", lambda: hda.verify_det_relations(hd())))
    if n == 2:
        items.append(Item("hd/inverse-T", "adj(T) T = T adj(T) = det_R T",
                          lambda: hda.verify_inverse_t(hd())))
    items.append(Item("hd/sl-det-LT", "det_R(LT) = 1 when a_n = 1/q and det_R T = 1",
                      lambda: hda.verify_sl_evolution_det(hd_sl())))
    return items


def suite_spectral(cfg: Config, point) -> list:
    n = cfg.n
    if n != 2:
        raise UsageError("the spectral suite runs at n = 2")
    f = _field(n, point, keep_mu=True)
    holder = {}

    def hd():
        if "h" not in holder:
            holder["h"] = hda.build_hd_presentation(rm.RMatrixContext(f), spectral=True)
        return holder["h"]

    return [
        Item("spectral/overlaps", "spectral rewriting system closed under overlaps",
             lambda: rm.Check(hd().alg.overlap_check().ok)),
        Item("spectral/resolution", "projector resolution of unity, L P = q mu P",
             lambda: hda.verify_resolution(hd())),
        Item("spectral/T-mu", "exchange of P^a T with mu", lambda: hda.verify_t_mu(hd())),
        Item("spectral/det-mu", "exchange of det_R T with mu", lambda: hda.verify_det_mu(hd())),
        Item("spectral/W", "quadratic relations of W^a = P^a T", lambda: hda.verify_w_relations(hd())),
        Item("spectral/dynamical-projections", "S and A projections with R^S, R^A",
             lambda: hda.verify_dynamical_projections(hd())),
        Item("spectral/PTS", "P^a T S^b = delta_ab P^a T", lambda: hda.verify_pts(hd())),
        Item("spectral/quantum-plane", "dynamical quadratic relations of Lambda",
             lambda: hda.verify_quantum_plane_lambda(hd())),
    ]


def suite_left(cfg: Config, point) -> list:
    n = cfg.n
    if n != 2:
        raise UsageError("the left-sector suite runs at n = 2")
    fs = _field(n, point, sl=True)
    fsm = _field(n, point, sl=True, keep_mu=True)
    holder = {}

    def hd(spectral=False):
        key = "s" if spectral else "h"
        if key not in holder:
            holder[key] = hda.build_hd_presentation(
                rm.RMatrixContext(fsm if spectral else fs), spectral=spectral)
        return holder[key]

    return [
        Item("left/M", "relations of M = T^-1 L T", lambda: hda.verify_left_sector(hd())),
        Item("left/M-spectral", "factorized Cayley-Hamilton for M",
             lambda: hda.verify_left_sector(hd(True))),
        Item("left/star-R", "*R identities, Upsilon reflections, traced Upsilon",
             lambda: hecke.check_star_identities(rm.RMatrixContext(fs), 2, _generic_matrix(fs, n))),
    ]


def suite_dybe(cfg: Config, point) -> list:
    n = cfg.n
    f = _field(n, point)
    items = []
    for kind, make in (("S", dyn.rs_matrix), ("A", dyn.ra_matrix)):
        items.append(Item(f"dybe/R{kind}", f"dynamical Yang-Baxter equation for R^{kind}",
                          lambda make=make: dyn.check_dybe(make(f))))
    for m in range(2, 5):
        items.append(Item(f"dybe/phi-sum-{m}", "sum_b phi_ab = 1",
                          lambda m=m: dyn.check_phi_sum(_field(m, None))))
    return items


def suite_evolution(cfg: Config, point) -> list:
    n = cfg.n
    K = cfg.cutoff if cfg.cutoff is not None else (8 if n == 2 else 4)
    holder = {}

    def ser():
        if "s" not in holder:
            holder["s"] = evo.theta_coefficients(n, K)
        return holder["s"]

    return [
        Item(f"evolution/recursion-K{K}", "theta coefficient recursion",
             lambda: evo.check_recursion(ser())),
        Item(f"evolution/theta1-K{K}", "theta series solves the evolution equations",
             lambda: evo.check_sl_evolution_theta1(ser())),
        Item("evolution/theta2", "Gaussian solves the evolution equations",
             lambda: evo.check_sl_evolution_theta2(n)),
        Item("evolution/weyl", "(k, A* k) permutation invariant", lambda: evo.check_weyl_symmetry(n, 3)),
        Item("evolution/gl", "GL evolution reduces to SL", lambda: evo.check_gl_consistency(n)),
    ]


def suite_modular(cfg: Config, point) -> list:
    n = cfg.n
    tau = cfg.tau if cfg.tau is not None else (0.8j if n == 2 else 1j)
    z = cfg.z if cfg.z is not None else [0.1 + 0.05j, -0.07 + 0.02j, 0.03 - 0.04j][: n - 1]
    if len(z) != n - 1:
        raise UsageError(f"--z needs n - 1 = {n - 1} values")

    def modular():
        r = evo.modular_check(n, tau, z, cfg.cutoff)
        ok = r.relative_error < 1e-8 and r.tail_change < 1e-12
        return rm.Check(ok, None, f"K={r.cutoff} relative error {r.relative_error:.1e}, "
                                  f"tail change {r.tail_change:.1e}")

    def jacobi_float():
        d = evo.jacobi_check(10, 0.3)
        return rm.Check(d < 1e-12, None, f"max discrepancy {d:.1e}")

    return [
        Item("modular/theta-gaussian", "Gaussian = ratio of theta functions", modular),
        Item("modular/jacobi-exact", "Jacobi triple product through q^20",
             lambda: evo.jacobi_check_exact(20)),
        Item("modular/jacobi-float", "Jacobi triple product at q = 0.3", jacobi_float),
    ]


def suite_pairing(cfg: Config, point) -> list:
    n = cfg.n
    fs = _field(n, point, sl=True)
    holder = {}

    def ctx():
        if "c" not in holder:
            holder["c"] = rm.RMatrixContext(fs)
        return holder["c"]

    items = []
    for i in range(1, n + 1):
        items.append(Item(f"pairing/T-a{i}", "<T, a_i> closed form",
                          lambda i=i: rm.Check(pairing.pair_t_ai(ctx(), i) is not None)))
    items.append(Item("pairing/T-an", "<T, a_n> = 1/q I", lambda: rm.Check(
        pairing.pair_t_ai(ctx(), n) == ctx().I().scale(1 / fs.q))))
    items.append(Item("pairing/mu", "e_i(<T, mu>) = <T, a_i>", lambda: pairing.verify_mu_pairing(fs)))
    items.append(Item("pairing/mu-rescaled", "e_i(rescaled) = q-binomial",
                      lambda: pairing.verify_mu_pairing_rescaled(fs)))
    items.append(Item("pairing/RE", "pairing annihilates the reflection equation", lambda: rm.Check(
        all(pairing.pair_t_expr(ctx(), r).is_zero()
            for r in hda._re_relations(ctx(), pairing.free_re_system(ctx()).L)))))
    return items


SUITES = {
    "rmatrix": suite_rmatrix,
    "hecke": suite_hecke,
    "re": suite_re,
    "hd": suite_hd,
    "spectral": suite_spectral,
    "left": suite_left,
    "dybe": suite_dybe,
    "evolution": suite_evolution,
    "modular": suite_modular,
    "pairing": suite_pairing,
}
# suites whose checks are symbolic in p (rational mode substitutes points)
PARAMETRIC = {"rmatrix", "hecke", "re", "hd", "spectral", "left", "dybe", "pairing"}
N2_ONLY = {"spectral", "left"}


class UsageError(ValueError):
    pass


def _points(cfg: Config) -> list:
    return [{k: Fraction(v) for k, v in pt.items()}
            for pt in random_points(cfg.n, False, POINTS_PER_CHECK, cfg.seed)]


def run_suite(name: str, cfg: Config, timing: bool = False) -> list:
    builder = SUITES[name]
    records: dict = {}
    rational = cfg.mode == "rational" and name in PARAMETRIC
    points = _points(cfg) if rational else [None]
    for pt in points:
        for item in builder(cfg, pt):
            t0 = time.perf_counter()
            results = _execute(item)
            ms = round((time.perf_counter() - t0) * 1000, 1)
            for suffix, status, detail in results:
                cid = f"{item.id}/{suffix}" if suffix else item.id
                rec = records.setdefault(cid, {"id": cid, "anchor": item.anchor, "verdict": "verified",
                                               "millis": 0.0 if timing else None, "detail": detail})
                if timing:
                    rec["millis"] = round(rec["millis"] + ms, 1)
                if status != "verified" and rec["verdict"] == "verified":
                    rec["verdict"] = status
                    rec["detail"] = detail
                if pt is not None:
                    rec.setdefault("points", []).append({k: str(v) for k, v in sorted(pt.items())})
    return list(records.values())


def build_report(suites: list, cfg: Config, timing: bool = False) -> dict:
    checks = []
    for s in suites:
        if cfg.n != 2 and s in N2_ONLY:
            continue
        checks += run_suite(s, cfg, timing)
    config = {"n": cfg.n, "mode": cfg.mode, "seed": cfg.seed, "suites": suites}
    if cfg.mode == "rational":
        config["prng"] = PRNG
        config["points_per_check"] = POINTS_PER_CHECK
    if cfg.cutoff is not None:
        config["cutoff"] = cfg.cutoff
    if cfg.tau is not None:
        config["tau"] = [cfg.tau.real, cfg.tau.imag]
    if cfg.z is not None:
        config["z"] = [[w.real, w.imag] for w in cfg.z]
    return {"version": __version__, "config": config, "checks": checks}


def exit_code(report: dict) -> int:
    verdicts = {c["verdict"] for c in report["checks"]}
    if "refuted" in verdicts:
        return EXIT_FAIL
    if "inconclusive" in verdicts:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _parse_complex(text: str) -> complex:
    try:
        re_, im = (float(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected RE,IM") from exc
    return complex(re_, im)


def _parse_tau(text: str) -> complex:
    tau = _parse_complex(text)
    if tau.imag <= 0:
        raise argparse.ArgumentTypeError("--tau needs a positive imaginary part")
    return tau


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcotangent", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", default="all", choices=sorted(SUITES) + ["all"])
    v.add_argument("--n", type=int, default=2, choices=[2, 3])
    v.add_argument("--mode", default="exact", choices=["exact", "rational"])
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cutoff", type=int, default=None)
    v.add_argument("--tau", type=_parse_tau, default=None)
    v.add_argument("--z", type=_parse_complex, action="append", default=None, metavar="RE,IM",
                   help="theta argument component (repeat n - 1 times)")
    v.add_argument("--json", "--out", dest="json_path", default=None, help="write the report here")
    v.add_argument("--timing", action="store_true", help="record wall time per check")
    sub.add_parser("suites", help="list suite names")
    return parser


def main(argv: list | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "suites":
        print("\n".join(sorted(SUITES)))
        return EXIT_OK
    if args.cutoff is not None and args.cutoff < 0:
        print("error: --cutoff must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    cfg = Config(args.n, args.mode, args.seed, args.cutoff, args.tau, args.z)
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite in N2_ONLY and args.n != 2:
        print(f"error: suite {args.suite} runs at n = 2 only", file=sys.stderr)
        return EXIT_USAGE
    try:
        report = build_report(suites, cfg, args.timing)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = json.dumps(report, indent=2, sort_keys=False)
    if args.json_path:
        with open(args.json_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    for c in report["checks"]:
        print(f"{c['verdict'].upper():12s} {c['id']}", file=sys.stderr)
    return exit_code(report)


def main_entry() -> None:
    sys.exit(main())
