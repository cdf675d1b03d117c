"""Exact scalars: the field Q(p, g, mu_1..mu_n) with p = q**(1/n).

Elements are reduced fractions of multivariate polynomials with rational
coefficients (python-flint ``fmpq_mpoly``).  The denominator is kept monic in
the degree-lex order, which makes the pair (num, den) canonical, so equality
is structural.

Any subset of the variables can be pinned to rational values.  When every
variable is pinned the field hands out plain ``flint.fmpq`` numbers instead of
``Scalar`` objects; the rest of the package only relies on the arithmetic
operators, so both kinds of element flow through the same code.
"""
from __future__ import annotations

import ast
import random
from fractions import Fraction
from typing import Iterable, Sequence

import flint

__all__ = ["Field", "Scalar", "random_points"]


def _to_fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, int):
        return flint.fmpq(x)
    raise TypeError(f"cannot coerce {x!r} to a rational")


class Scalar:
    """Reduced fraction num/den over a :class:`Field` with a polynomial ring."""

    __slots__ = ("num", "den", "field")

    def __init__(self, num, den, field: "Field", normalize: bool = True):
        if normalize:
            if den.is_zero():
                raise ZeroDivisionError("zero denominator")
            if num.is_zero():
                den = field._one_poly
            elif not den.is_constant():
                g = num.gcd(den)
                if not g.is_one():
                    num = num / g
                    den = den / g
            lc = den.leading_coefficient()
            if lc != 1:
                num = num / lc
                den = den / lc
        self.num = num
        self.den = den
        self.field = field

    # -- coercion -----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction, flint.fmpq)):
            c = self.field.ctx.from_dict({self.field._zero_exp: _to_fmpq(other)})
            return Scalar(c, self.field._one_poly, self.field, normalize=False)
        return None

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Scalar(self.num + o.num, self.den, self.field)
        return Scalar(self.num * o.den + o.num * self.den, self.den * o.den, self.field)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den, self.field, normalize=False)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return Scalar(self.num * o.num, self.den, self.field, normalize=False)
        return Scalar(self.num * o.num, self.den * o.den, self.field)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        return Scalar(self.den, self.num, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Scalar(self.num ** k, self.den ** k, self.field, normalize=False)

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __bool__(self):
        return not self.num.is_zero()

    def __hash__(self):
        return hash((tuple(sorted(self.num.to_dict().items())),
                     tuple(sorted(self.den.to_dict().items()))))

    # -- inspection ---------------------------------------------------
    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def depends_on(self, names: Iterable[str]) -> bool:
        idx = [self.field.names.index(nm) for nm in names if nm in self.field.names]
        if not idx:
            return False
        for poly in (self.num, self.den):
            for e in poly.to_dict():
                if any(e[i] for i in idx):
                    return True
        return False

    def to_text(self) -> str:
        return self.field.to_text(self)

    def __repr__(self):
        return self.to_text()


class Field:
    """The scalar field of a session at fixed rank ``n``.

    Parameters
    ----------
    n : rank; ``q = p**n``.
    sl : if true, gamma is identified with p (so gamma**n = q), otherwise
        gamma is an independent variable ``g``.
    values : optional mapping from variable names (``p``, ``g``, ``m1``..)
        to rationals; those variables are evaluated instead of kept symbolic.
    """

    def __init__(self, n: int, sl: bool = False, values: dict | None = None):
        if n < 1:
            raise ValueError("rank must be positive")
        self.n = n
        self.sl = sl
        all_names = ["p"] + ([] if sl else ["g"]) + [f"m{a}" for a in range(1, n + 1)]
        values = dict(values or {})
        unknown = set(values) - set(all_names)
        if unknown:
            raise ValueError(f"unknown variables {sorted(unknown)}")
        self.values = {k: _to_fmpq(v) for k, v in values.items()}
        self.names = [nm for nm in all_names if nm not in self.values]
        self.numeric = not self.names
        if not self.numeric:
            self.ctx = flint.fmpq_mpoly_ctx.get(tuple(self.names), "deglex")
            self._zero_exp = (0,) * len(self.names)
            self._one_poly = self.ctx.from_dict({self._zero_exp: 1})
        self._gens = {}
        for nm in all_names:
            if nm in self.values:
                self._gens[nm] = self.from_rational(self.values[nm])
            else:
                i = self.names.index(nm)
                e = [0] * len(self.names)
                e[i] = 1
                self._gens[nm] = Scalar(self.ctx.from_dict({tuple(e): 1}), self._one_poly,
                                        self, normalize=False)
        self.p = self._gens["p"]
        self.gamma = self.p if sl else self._gens["g"]
        self.q = self.p ** n
        self.one = self.from_rational(1)
        self.zero = self.from_rational(0)

    # -- element construction -----------------------------------------
    def from_rational(self, x):
        x = _to_fmpq(x)
        if self.numeric:
            return x
        return Scalar(self.ctx.from_dict({self._zero_exp: x}), self._one_poly, self,
                      normalize=False)

    def __call__(self, x):
        if isinstance(x, Scalar):
            if x.field is not self:
                raise ValueError("scalar from a different field")
            return x
        return self.from_rational(x)

    def mu(self, alpha: int):
        """Spectral variable mu_alpha, 1-based."""
        if not 1 <= alpha <= self.n:
            raise IndexError(f"spectral index {alpha} out of range 1..{self.n}")
        return self._gens[f"m{alpha}"]

    @property
    def mus(self) -> list:
        return [self.mu(a) for a in range(1, self.n + 1)]

    def is_symbolic(self, name: str) -> bool:
        return name in self.names

    @property
    def label(self) -> str:
        kind = "SL" if self.sl else "GL"
        pinned = ",".join(f"{k}={v}" for k, v in sorted(self.values.items()))
        return f"n={self.n} {kind}" + (f" [{pinned}]" if pinned else "")

    # -- q-numbers ----------------------------------------------------
    def qint(self, i: int, t=None):
        """i_t = (t^i - t^-i)/(t - t^-1), default t = q; 0 for i = 0."""
        t = self.q if t is None else t
        if i == 0:
            return self.zero
        sign = 1
        if i < 0:
            i, sign = -i, -1
        acc = self.zero
        for j in range(i):
            acc = acc + t ** (i - 1 - 2 * j)
        return acc if sign > 0 else -acc

    def qfactorial(self, i: int, t=None):
        acc = self.one
        for j in range(1, i + 1):
            acc = acc * self.qint(j, t)
        return acc

    def qbinomial(self, n: int, k: int, t=None):
        if not 0 <= k <= n:
            raise ValueError(f"q-binomial needs 0 <= k <= n, got n={n}, k={k}")
        return self.qfactorial(n, t) / (self.qfactorial(k, t) * self.qfactorial(n - k, t))

    # -- monomial helpers and the spectral shift ----------------------
    def as_monomial(self, x):
        """Split x into (rational coefficient, exponent tuple) if x is a Laurent monomial."""
        if self.numeric:
            return _to_fmpq(x), ()
        nd, dd = x.num.to_dict(), x.den.to_dict()
        if len(nd) != 1 or len(dd) != 1:
            raise ValueError(f"{x.to_text()} is not a monomial")
        (en, cn), = nd.items()
        (ed, cd), = dd.items()
        return cn / cd, tuple(a - b for a, b in zip(en, ed))

    def monomial(self, coeff, exps: Sequence[int]):
        if self.numeric:
            return _to_fmpq(coeff)
        pos = tuple(max(e, 0) for e in exps)
        neg = tuple(max(-e, 0) for e in exps)
        return Scalar(self.ctx.from_dict({pos: _to_fmpq(coeff)}),
                      self.ctx.from_dict({neg: 1}), self, normalize=False)

    def nth_root(self, x, k: int):
        """Exact k-th root of a Laurent monomial whose exponents are divisible by k."""
        c, e = self.as_monomial(x)
        if any(v % k for v in e):
            raise ValueError(f"no exact {k}-th root of {self.to_text(x)} in this field")
        num, den = c.p, c.q
        rn, rd = _int_root(int(num), k), _int_root(int(den), k)
        if rn is None or rd is None:
            raise ValueError(f"coefficient {c} has no rational {k}-th root")
        return self.monomial(flint.fmpq(rn, rd), tuple(v // k for v in e))

    def scale_mu(self, x, factors: Sequence):
        """Substitute mu_b -> factors[b-1] * mu_b; factors are Laurent monomials."""
        if self.numeric or not isinstance(x, Scalar):
            raise ValueError("spectral shift needs symbolic spectral variables")
        mons = []
        for b, f in enumerate(factors, start=1):
            nm = f"m{b}"
            if nm not in self.names:
                raise ValueError("spectral shift needs symbolic spectral variables")
            mons.append((self.names.index(nm), self.as_monomial(f)))
        num = self._scale_poly(x.num, mons)
        den = self._scale_poly(x.den, mons)
        return num / den

    def _scale_poly(self, poly, mons):
        d = {}
        for e, c in poly.to_dict().items():
            e = list(e)
            for idx, (fc, fe) in mons:
                k = e[idx]
                if k:
                    c = c * fc ** k
                    for j, v in enumerate(fe):
                        e[j] += v * k
            d[tuple(e)] = c
        shift = [min(0, min(e[j] for e in d)) for j in range(len(self.names))]
        out = {tuple(v - s for v, s in zip(e, shift)): c for e, c in d.items()}
        return Scalar(self.ctx.from_dict(out), self._one_poly, self, normalize=False) \
            * self.monomial(1, shift)

    def evaluate(self, x, values: dict):
        """Evaluate x at rational values for all symbolic variables."""
        if self.numeric:
            return _to_fmpq(x)
        args = [_to_fmpq(values[nm]) for nm in self.names]
        num = x.num(*args)
        den = x.den(*args)
        if den == 0:
            raise ZeroDivisionError("evaluation point hits a pole")
        return num / den

    # -- text form ----------------------------------------------------
    def to_text(self, x) -> str:
        """Canonical text: a Laurent polynomial or '(N)/(D)'."""
        if self.numeric or not isinstance(x, Scalar):
            return str(_to_fmpq(x))
        dd = x.den.to_dict()
        if len(dd) == 1:
            (ed, cd), = dd.items()
            terms = {tuple(a - b for a, b in zip(e, ed)): c / cd
                     for e, c in x.num.to_dict().items()}
            return _poly_text(terms, self.names)
        return "(" + _poly_text(x.num.to_dict(), self.names) + ")/(" + \
            _poly_text(dd, self.names) + ")"

    def parse(self, text: str):
        """Inverse of :meth:`to_text` (accepts any +,-,*,/,^ expression)."""
        tree = ast.parse(text.replace("^", "**"), mode="eval")
        return self._eval_ast(tree.body)

    def _eval_ast(self, node):
        if isinstance(node, ast.BinOp):
            a, b = self._eval_ast(node.left), self._eval_ast(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
            if isinstance(node.op, ast.Pow):
                if not isinstance(b, int):
                    raise ValueError("exponent must be an integer literal")
                return a ** b
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            v = self._eval_ast(node.operand)
            return -v
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id == "q":
                return self.q
            if node.id in self._gens:
                return self._gens[node.id]
        raise ValueError(f"cannot parse scalar expression near {ast.dump(node)}")


def _int_root(v: int, k: int):
    if v < 0:
        if k % 2 == 0:
            return None
        r = _int_root(-v, k)
        return None if r is None else -r
    r = round(v ** (1.0 / k)) if v else 0
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** k == v:
            return c
    return None


def _poly_text(terms: dict, names: Sequence[str]) -> str:
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms, key=lambda e: (-sum(e), tuple(-v for v in e))):
        c = terms[e]
        mono = "*".join(nm if v == 1 else f"{nm}^{v}" for nm, v in zip(names, e) if v)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def random_points(n: int, sl: bool, count: int, seed: int, keep_mu: bool = False):
    """Random rational evaluation points for fast mode.

    Numerators and denominators are drawn from a seeded ``random.Random``
    (Mersenne Twister); denominators are distinct primes so that the points
    avoid accidental coincidences such as mu_a = mu_b or p = +-1.
    """
    rng = random.Random(seed)
    primes = [101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167]
    names = ["p"] + ([] if sl else ["g"]) + ([] if keep_mu else [f"m{a}" for a in range(1, n + 1)])
    out = []
    for _ in range(count):
        dens = rng.sample(primes, len(names))
        pt = {}
        for nm, d in zip(names, dens):
            num = rng.randrange(2 * d, 9 * d)
            pt[nm] = Fraction(num, d)
        out.append(pt)
    return out
