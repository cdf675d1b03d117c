"""Linear operators on V^{(x)k} with leg bookkeeping.

A :class:`TensorOp` stores the nonzero entries of a dim**legs square matrix in
a dict keyed by (row, col).  Rows and columns are big-endian digit strings:
leg 1 is the most significant digit.  Entries can be exact scalars or
noncommutative expressions; products always multiply the left factor's entry
on the left, so operator identities over noncommuting entries keep their
order.
"""
from __future__ import annotations

from itertools import product
from typing import Callable, Iterable, Sequence

__all__ = [
    "TensorOp", "encode", "decode", "identity", "permutation", "matrix_unit",
    "embed", "embed_at", "embed_pair", "partial_trace", "kron",
    "solve", "rank", "inverse",
]


def encode(digits: Sequence[int], dim: int) -> int:
    idx = 0
    for d in digits:
        idx = idx * dim + d
    return idx


def decode(index: int, dim: int, legs: int) -> tuple:
    out = [0] * legs
    for pos in range(legs - 1, -1, -1):
        index, out[pos] = divmod(index, dim)
    return tuple(out)


def _nonzero(v) -> bool:
    return not (v == 0)


class TensorOp:
    """Square operator on V^{(x)legs}, dim = dim V."""

    __slots__ = ("dim", "legs", "entries", "one")

    def __init__(self, dim: int, legs: int, entries: dict, one=1):
        self.dim = dim
        self.legs = legs
        self.entries = {k: v for k, v in entries.items() if _nonzero(v)}
        self.one = one

    @property
    def side(self) -> int:
        return self.dim ** self.legs

    def _check(self, other: "TensorOp"):
        if not isinstance(other, TensorOp):
            raise TypeError("expected a TensorOp")
        if (self.dim, self.legs) != (other.dim, other.legs):
            raise ValueError(f"shape mismatch: dim/legs {self.dim}/{self.legs} vs "
                             f"{other.dim}/{other.legs}")

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def __matmul__(self, other: "TensorOp") -> "TensorOp":
        self._check(other)
        by_row: dict = {}
        for (k, j), b in other.entries.items():
            by_row.setdefault(k, []).append((j, b))
        acc: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                key = (i, j)
                t = a * b
                acc[key] = acc[key] + t if key in acc else t
        return TensorOp(self.dim, self.legs, acc, self.one)

    def __add__(self, other: "TensorOp") -> "TensorOp":
        self._check(other)
        acc = dict(self.entries)
        for k, v in other.entries.items():
            acc[k] = acc[k] + v if k in acc else v
        return TensorOp(self.dim, self.legs, acc, self.one)

    def __neg__(self):
        return TensorOp(self.dim, self.legs, {k: -v for k, v in self.entries.items()}, self.one)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorOp":
        """c * X, with c multiplied on the left of every entry."""
        return TensorOp(self.dim, self.legs, {k: c * v for k, v in self.entries.items()}, self.one)

    def rscale(self, c) -> "TensorOp":
        """X * c, with c multiplied on the right of every entry."""
        return TensorOp(self.dim, self.legs, {k: v * c for k, v in self.entries.items()}, self.one)

    def __mul__(self, c):
        if isinstance(c, TensorOp):
            return NotImplemented
        return self.rscale(c)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, k: int) -> "TensorOp":
        if k < 0:
            return inverse(self) ** (-k)
        out = identity(self.dim, self.legs, self.one)
        for _ in range(k):
            out = out @ self
        return out

    def __eq__(self, other):
        if not isinstance(other, TensorOp):
            return NotImplemented
        return self.first_difference(other) is None

    def first_difference(self, other: "TensorOp"):
        """None if equal, else (row digits, col digits, lhs, rhs) of the first mismatch."""
        self._check(other)
        for key in sorted(set(self.entries) | set(other.entries)):
            a, b = self[key], other[key]
            if _nonzero(a - b):
                return (decode(key[0], self.dim, self.legs),
                        decode(key[1], self.dim, self.legs), a, b)
        return None

    def is_zero(self) -> bool:
        return not self.entries

    def map(self, f: Callable) -> "TensorOp":
        return TensorOp(self.dim, self.legs, {k: f(v) for k, v in self.entries.items()}, self.one)

    def transpose(self) -> "TensorOp":
        return TensorOp(self.dim, self.legs, {(j, i): v for (i, j), v in self.entries.items()},
                        self.one)

    def trace(self):
        acc = None
        for (i, j), v in self.entries.items():
            if i == j:
                acc = v if acc is None else acc + v
        return 0 if acc is None else acc

    def entry(self, row: Sequence[int], col: Sequence[int]):
        """Entry at 1-based digit strings, e.g. entry((1, 2), (2, 1))."""
        r = encode([d - 1 for d in row], self.dim)
        c = encode([d - 1 for d in col], self.dim)
        return self[(r, c)]

    def to_rows(self) -> list:
        n = self.side
        return [[self[(i, j)] for j in range(n)] for i in range(n)]

    def __repr__(self):
        return f"TensorOp(dim={self.dim}, legs={self.legs}, nnz={len(self.entries)})"


# -- constructors ------------------------------------------------------------

def identity(dim: int, legs: int, one=1) -> TensorOp:
    return TensorOp(dim, legs, {(i, i): one for i in range(dim ** legs)}, one)


def matrix_unit(dim: int, i: int, j: int, one=1) -> TensorOp:
    """E_ij on one leg, 1-based."""
    return TensorOp(dim, 1, {(i - 1, j - 1): one}, one)


def permutation(dim: int, one=1) -> TensorOp:
    """Flip P on V(x)V."""
    ent = {}
    for a in range(dim):
        for b in range(dim):
            ent[(a * dim + b, b * dim + a)] = one
    return TensorOp(dim, 2, ent, one)


def from_rows(rows: Sequence[Sequence], dim: int, one=1) -> TensorOp:
    n = len(rows)
    legs = 0
    while dim ** legs < n:
        legs += 1
    if dim ** legs != n:
        raise ValueError("matrix side is not a power of dim")
    return TensorOp(dim, legs, {(i, j): rows[i][j] for i in range(n) for j in range(n)}, one)


def kron(a: TensorOp, b: TensorOp) -> TensorOp:
    if a.dim != b.dim:
        raise ValueError("kron needs equal dim")
    sb = b.side
    ent = {}
    for (i, j), x in a.entries.items():
        for (k, l), y in b.entries.items():
            ent[(i * sb + k, j * sb + l)] = x * y
    return TensorOp(a.dim, a.legs + b.legs, ent, a.one)


# -- leg placement -----------------------------------------------------------

def embed(x: TensorOp, positions: Sequence[int], total: int) -> TensorOp:
    """Place x on the given (1-based, distinct) legs of V^{(x)total}.

    x's leg j acts on leg positions[j]; identity elsewhere.
    """
    positions = list(positions)
    if len(positions) != x.legs:
        raise ValueError("need one position per leg of x")
    if len(set(positions)) != len(positions):
        raise ValueError("positions must be distinct")
    if any(not 1 <= p <= total for p in positions):
        raise ValueError(f"positions {positions} out of range 1..{total}")
    dim = x.dim
    rest = [l for l in range(total) if l + 1 not in positions]
    pos0 = [p - 1 for p in positions]
    weights = [dim ** (total - 1 - l) for l in range(total)]
    xe = [(decode(r, dim, x.legs), decode(c, dim, x.legs), v) for (r, c), v in x.entries.items()]
    ent = {}
    for other in product(range(dim), repeat=len(rest)):
        base = sum(d * weights[l] for d, l in zip(other, rest))
        for rd, cd, v in xe:
            r = base + sum(d * weights[l] for d, l in zip(rd, pos0))
            c = base + sum(d * weights[l] for d, l in zip(cd, pos0))
            ent[(r, c)] = v
    return TensorOp(dim, total, ent, x.one)


def embed_at(x: TensorOp, i: int, total: int) -> TensorOp:
    """X_i = I^{(x)(i-1)} (x) X (x) I^{(x)(total-i-1)} for a 2-leg X."""
    if x.legs != 2:
        raise ValueError("embed_at expects a 2-leg operator")
    if not 1 <= i <= total - 1:
        raise ValueError(f"position {i} out of range 1..{total - 1}")
    return embed(x, (i, i + 1), total)


def embed_pair(x: TensorOp, i: int, j: int, total: int) -> TensorOp:
    """X_ij: x acting in component spaces i and j (in that order)."""
    if i == j:
        raise ValueError("embed_pair needs i != j")
    return embed(x, (i, j), total)


def partial_trace(x: TensorOp, leg: int) -> TensorOp:
    """Trace over one leg (1-based)."""
    if not 1 <= leg <= x.legs:
        raise ValueError(f"leg {leg} out of range 1..{x.legs}")
    dim, k = x.dim, x.legs
    hi = dim ** (k - leg)
    acc = {}
    for (r, c), v in x.entries.items():
        r_hi, r_rem = divmod(r, hi * dim)
        r_leg, r_lo = divmod(r_rem, hi)
        c_hi, c_rem = divmod(c, hi * dim)
        c_leg, c_lo = divmod(c_rem, hi)
        if r_leg != c_leg:
            continue
        key = (r_hi * hi + r_lo, c_hi * hi + c_lo)
        acc[key] = acc[key] + v if key in acc else v
    return TensorOp(dim, k - 1, acc, x.one)


def partial_trace_many(x: TensorOp, legs: Iterable[int]) -> TensorOp:
    for leg in sorted(legs, reverse=True):
        x = partial_trace(x, leg)
    return x


# -- exact linear algebra over a field ---------------------------------------

def _eliminate(rows: list, ncols: int):
    """Gauss-Jordan on sparse rows (dict col -> value); returns (rows, pivots)."""
    pivots = []
    r = 0
    rows = [dict(row) for row in rows]
    for col in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            v = rows[i].get(col)
            if v is not None and _nonzero(v):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = 1 / prow[col]
        prow = {k: v * inv for k, v in prow.items()}
        rows[r] = prow
        for i in range(len(rows)):
            if i == r:
                continue
            f = rows[i].get(col)
            if f is None or not _nonzero(f):
                continue
            row = rows[i]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if _nonzero(nv):
                    row[k] = nv
                else:
                    row.pop(k, None)
        pivots.append(col)
        r += 1
    return rows[:r], pivots


def rank(x: TensorOp) -> int:
    rows = {}
    for (i, j), v in x.entries.items():
        rows.setdefault(i, {})[j] = v
    _, piv = _eliminate(list(rows.values()), x.side)
    return len(piv)


def solve(matrix: dict, rhs: dict, nrows: int, ncols: int, one=1):
    """Solve M u = b exactly.  matrix: {(i,j): v}, rhs: {i: v}.

    Returns {j: u_j} or raises ValueError when M is singular or the system is
    inconsistent.
    """
    rows = [dict() for _ in range(nrows)]
    for (i, j), v in matrix.items():
        if _nonzero(v):
            rows[i][j] = v
    for i, v in rhs.items():
        if _nonzero(v):
            rows[i][ncols] = v
    red, piv = _eliminate(rows, ncols + 1)
    if ncols in piv:
        raise ValueError("inconsistent linear system")
    if len(piv) < ncols:
        raise ValueError("singular linear system")
    return {col: red[k].get(ncols, 0) for k, col in enumerate(piv)}


def inverse(x: TensorOp) -> TensorOp:
    n = x.side
    rows = [dict() for _ in range(n)]
    for (i, j), v in x.entries.items():
        rows[i][j] = v
    for i in range(n):
        rows[i][n + i] = x.one
    red, piv = _eliminate(rows, n)
    if len(piv) < n:
        raise ValueError("operator is singular")
    ent = {}
    for k, col in enumerate(piv):
        for j, v in red[k].items():
            if j >= n:
                ent[(col, j - n)] = v
    return TensorOp(x.dim, x.legs, ent, x.one)
