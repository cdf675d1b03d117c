"""Exact verification of R-matrix identities for Heisenberg double algebras.

Modules, bottom up: scalars and tensor (exact arithmetic), rmatrix and hecke
(numeric R-matrix layer), ncalgebra and hdalgebra (noncommutative rewriting
for the reflection equation, RTT and Heisenberg double algebras), dynamical,
evolution, pairing, and the cli runner.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .rmatrix import Check, RMatrixContext, drinfeld_jimbo, twist  # noqa: E402
from .scalars import Field, Scalar  # noqa: E402

__all__ = ["Check", "Field", "RMatrixContext", "Scalar", "__version__", "drinfeld_jimbo", "twist"]
