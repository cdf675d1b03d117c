"""The two evolution operators: lattice theta series and Gaussian, and the relation between them."""
from __future__ import annotations

from qcotangent import evolution as evo


def main():
    for n, K in ((2, 8), (3, 4)):
        ser = evo.theta_coefficients(n, K)
        rec = evo.check_recursion(ser)
        print(f"n={n}: {len(ser.exponents)} coefficients, recursion {rec.ok} "
              f"({rec.witness['checked']} sites), evolution equations {evo.check_sl_evolution_theta1(ser).ok}")
        print(f"      Gaussian exponent solves them: {evo.check_sl_evolution_theta2(n).ok}")
    for n, tau in ((2, 0.8j), (3, 1j)):
        r = evo.modular_check(n, tau, [0.1 + 0.05j, -0.07 + 0.02j][: n - 1])
        print(f"modular relation n={n}, tau={tau}: cutoff {r.cutoff}, "
              f"relative error {r.relative_error:.1e}, tail change {r.tail_change:.1e}")
    print("Jacobi triple product through q^20:", evo.jacobi_check_exact(20).ok)
    print(f"float discrepancy at q = 0.3: {evo.jacobi_check(10, 0.3):.1e}")


if __name__ == "__main__":
    main()
