"""Noncommutative polynomials in matrix generators and oriented rewriting.

Words are tuples of generator ids.  Generators are ordered L-entries first,
then T-entries, each family lex in (row, col); words are compared by length
and then lexicographically (deg-lex).  Every rule rewrites a word to a
combination of strictly smaller words, so reduction terminates.

Coefficients always sit to the left of a word.  In a spectral algebra the
coefficients may depend on the spectral variables mu, which commute with L
but not with T:  T^i_j f(mu) = sum_b f(shift_b mu) (P^b)^i_k T^k_j.  That
exchange is applied whenever a coefficient has to travel leftwards past a
T-letter, so normal forms keep the shape  coefficient * L-word * T-word.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, NamedTuple, Sequence

from .scalars import Scalar
from .tensor import TensorOp

__all__ = [
    "Gen", "NcAlgebra", "NcExpr", "RewriteError", "Verdict", "OverlapReport",
    "generator_matrix", "check_identity", "check_matrix_identity",
]

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class RewriteError(RuntimeError):
    pass


class Gen(NamedTuple):
    family: str
    i: int
    j: int

    def __str__(self):
        return f"{self.family}{self.i}{self.j}"


class NcExpr:
    """Finite combination of words with left coefficients, bound to an algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "NcAlgebra", terms: dict | None = None):
        self.alg = alg
        self.terms = terms if terms is not None else {}

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if isinstance(other, NcExpr):
            out = dict(self.terms)
            _accumulate(out, other.terms.items())
            return NcExpr(self.alg, out)
        if other == 0:
            return self
        return self + self.alg.scalar(other)

    __radd__ = __add__

    def __neg__(self):
        return NcExpr(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, NcExpr):
            return self.alg.mul(self, other)
        return self.alg.mul(self, self.alg.scalar(other))

    def __rmul__(self, other):
        # scalar on the left: no exchange needed
        if other == 0:
            return NcExpr(self.alg, {})
        return NcExpr(self.alg, {w: other * c for w, c in self.terms.items() if not (other * c == 0)})

    def __eq__(self, other):
        if isinstance(other, NcExpr):
            return (self - other).is_zero()
        if other == 0:
            return self.is_zero()
        return (self - other).is_zero()

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __pow__(self, k: int):
        out = self.alg.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def leading_word(self):
        return max(self.terms, key=self.alg.word_key) if self.terms else None

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=self.alg.word_key, reverse=True):
            c = self.terms[w]
            ct = c.to_text() if isinstance(c, Scalar) else str(c)
            parts.append(f"({ct})*{self.alg.word_text(w)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"NcExpr[{self.to_text()}]"


def _accumulate(out: dict, items: Iterable):
    for w, c in items:
        if w in out:
            v = out[w] + c
            if v == 0:
                del out[w]
            else:
                out[w] = v
        elif not (c == 0):
            out[w] = c


@dataclass
class Rule:
    lead: tuple
    tail: dict
    origin: str = ""


@dataclass
class OverlapReport:
    checked: int = 0
    unresolved: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.unresolved


@dataclass
class Verdict:
    status: str  # "verified" | "refuted" | "inconclusive"
    witness: object = None
    detail: str = ""

    def __bool__(self):
        return self.status == "verified"


class NcAlgebra:
    """Generators, rewriting rules and the product with normal forms.

    Parameters
    ----------
    field : scalar field.
    families : generator families, e.g. ("L",), ("T",), ("L", "T").
    """

    def __init__(self, field, families: Sequence[str] = ("L",), name: str = ""):
        self.field = field
        self.n = field.n
        self.name = name
        self.families = tuple(families)
        self.gens: list[Gen] = []
        for fam in self.families:
            for i in range(1, self.n + 1):
                for j in range(1, self.n + 1):
                    self.gens.append(Gen(fam, i, j))
        self.index = {g: k for k, g in enumerate(self.gens)}
        self.rules: dict[tuple, Rule] = {}
        self.lead_lengths: list[int] = []
        self._nf_cache: dict = {}
        self._append_cache: dict = {}
        self.projectors = None  # spectral: {beta: {(i, k): {word: coeff}}}
        self._overlap: OverlapReport | None = None
        self.step_budget = 10 ** 8
        self._steps = 0

    # -- naming -------------------------------------------------------
    def gen(self, family: str, i: int, j: int) -> NcExpr:
        return NcExpr(self, {(self.index[Gen(family, i, j)],): self.field.one})

    def scalar(self, c) -> NcExpr:
        c = self.field(c)
        return NcExpr(self, {(): c} if not (c == 0) else {})

    def zero(self) -> NcExpr:
        return NcExpr(self, {})

    def word_key(self, w: tuple):
        return (len(w), w)

    def word_text(self, w: tuple) -> str:
        return "*".join(str(self.gens[g]) for g in w) if w else "1"

    def is_t(self, g: int) -> bool:
        return self.gens[g].family == "T"

    def expr(self, terms: dict) -> NcExpr:
        return NcExpr(self, {w: c for w, c in terms.items() if not (c == 0)})

    # -- coefficient exchange -----------------------------------------
    @property
    def spectral(self) -> bool:
        return self.projectors is not None

    def _mu_dependent(self, c) -> bool:
        return isinstance(c, Scalar) and c.depends_on([f"m{a}" for a in range(1, self.n + 1)])

    def shift(self, c, beta: int):
        """c with mu_a -> q^{2 delta_ab} gamma^-2 mu_a."""
        f = self.field
        g2 = f.gamma ** -2
        factors = [g2 * (f.q ** 2 if a == beta else f.one) for a in range(1, self.n + 1)]
        return f.scale_mu(c, factors)

    def move(self, word: tuple, c) -> list:
        """Write word * c as a list of (coefficient, word) pairs."""
        if not self.spectral or not self._mu_dependent(c):
            return [(c, word)]
        k = len(word) - 1
        while k >= 0 and not self.is_t(word[k]):
            k -= 1
        if k < 0:
            return [(c, word)]
        before, t, after = word[:k], self.gens[word[k]], word[k + 1:]
        out = []
        for beta in range(1, self.n + 1):
            cb = self.shift(c, beta)
            pb = self.projectors[beta]
            for kk in range(1, self.n + 1):
                tk = self.index[Gen("T", kk, t.j)]
                for lw, pc in pb.get((t.i, kk), {}).items():
                    for c3, w3 in self.move(before, cb * pc):
                        out.append((c3, w3 + lw + (tk,) + after))
        return out

    # -- normal forms -------------------------------------------------
    def set_rules(self, rules: Iterable[Rule]):
        self.rules = {r.lead: r for r in rules}
        self.lead_lengths = sorted({len(l) for l in self.rules}, reverse=True)
        self.clear_cache()

    def clear_cache(self):
        self._nf_cache.clear()
        self._append_cache.clear()
        self._overlap = None

    def _find(self, w: tuple):
        """Leftmost reducible position: (start, lead length) or None."""
        for s in range(len(w)):
            for L in self.lead_lengths:
                if s + L <= len(w) and w[s:s + L] in self.rules:
                    return s, L
        return None

    def nf_word(self, w: tuple) -> dict:
        if w in self._nf_cache:
            return self._nf_cache[w]
        if not self.rules:
            res = {w: self.field.one}
        elif len(w) <= 1:
            res = self._reduce_at(w, self._find(w))
        else:
            res = {}
            for u, c in self.nf_word(w[:-1]).items():
                _accumulate(res, ((v, c * d) for v, d in self._append(u, w[-1]).items()))
        self._nf_cache[w] = res
        return res

    def _append(self, u: tuple, x: int) -> dict:
        """Normal form of u*x for a normal word u."""
        key = (u, x)
        if key in self._append_cache:
            return self._append_cache[key]
        w = u + (x,)
        hit = None
        for L in self.lead_lengths:
            if L <= len(w) and w[len(w) - L:] in self.rules:
                hit = (len(w) - L, L)  # largest L = leftmost start
                break
        res = self._reduce_at(w, hit)
        self._append_cache[key] = res
        return res

    def _reduce_at(self, w: tuple, hit) -> dict:
        if hit is None:
            return {w: self.field.one}
        self._steps += 1
        if self._steps > self.step_budget:
            raise RewriteError("reduction budget exceeded")
        s, L = hit
        prefix, suffix = w[:s], w[s + L:]
        res = {}
        for tw, c in self.rules[w[s:s + L]].tail.items():
            for c2, p2 in self.move(prefix, c):
                _accumulate(res, ((v, c2 * d) for v, d in self.nf_word(p2 + tw + suffix).items()))
        return res

    def reduce_terms(self, items: Iterable) -> dict:
        out = {}
        for w, c in items:
            _accumulate(out, ((v, c * d) for v, d in self.nf_word(w).items()))
        return out

    def normal_form(self, x: NcExpr) -> NcExpr:
        return NcExpr(self, self.reduce_terms(x.terms.items()))

    def mul(self, a: NcExpr, b: NcExpr) -> NcExpr:
        items = []
        for u, c in a.terms.items():
            for v, d in b.terms.items():
                for e, u2 in self.move(u, d):
                    items.append((u2 + v, c * e))
        return NcExpr(self, self.reduce_terms(items))

    # -- rule construction --------------------------------------------
    def add_relations(self, relations: Sequence[NcExpr], origin: str = ""):
        """Orient relations (expressions equal to zero) into rules.

        The relations are reduced by the current rules and row-reduced
        together with columns in decreasing word order; each pivot word
        becomes a leading word.  Rules whose leading word contains a newer
        leading word are turned back into relations and re-oriented.
        """
        pending = [(r, origin) for r in relations]
        rules = dict(self.rules)
        while pending:
            self.set_rules(rules.values())
            reduced = []
            for r, org in pending:
                t = self.reduce_terms(r.terms.items())
                if t:
                    reduced.append((t, org))
            if not reduced:
                break
            new = _row_reduce(reduced, self.word_key)
            for lead, tail, org in new:
                rules[lead] = Rule(lead, tail, org)
            pending = []
            leads = set(rules)
            for lead in list(rules):
                for L in range(1, len(lead)):
                    if any(lead[s:s + L] in leads for s in range(len(lead) - L + 1)):
                        r = rules.pop(lead)
                        rel = dict(r.tail)
                        rel = {w: -c for w, c in rel.items()}
                        rel[lead] = self.field.one
                        pending.append((NcExpr(self, rel), r.origin))
                        break
        self.set_rules(rules.values())

    def dump_rules(self) -> str:
        """One rule per line: 'WORD -> coeff*WORD + ...'."""
        lines = []
        for lead in sorted(self.rules, key=self.word_key):
            tail = NcExpr(self, self.rules[lead].tail)
            rhs = tail.to_text()
            lines.append(f"{self.word_text(lead)} -> {rhs}")
        return "\n".join(lines)

    # -- diagnostics ----------------------------------------------------
    def overlap_check(self, max_degree: int = 3) -> OverlapReport:
        """Resolve every ambiguity of degree <= max_degree.

        Checks overlaps of two leading words, and in a spectral algebra the
        ambiguities created by moving a mu-dependent coefficient past T.
        """
        if self._overlap is not None and max_degree == 3:
            return self._overlap
        rep = OverlapReport()
        leads = list(self.rules)
        for a in leads:
            for b in leads:
                for k in range(1, min(len(a), len(b))):
                    if a[len(a) - k:] != b[:k]:
                        continue
                    w = a + b[k:]
                    if len(w) > max_degree:
                        continue
                    r1 = self.reduce_terms((tw + b[k:], c) for tw, c in self.rules[a].tail.items())
                    items = []
                    for tw, c in self.rules[b].tail.items():
                        for c2, p2 in self.move(a[:len(a) - k], c):
                            items.append((p2 + tw, c2))
                    r2 = self.reduce_terms(items)
                    rep.checked += 1
                    d = dict(r1)
                    _accumulate(d, ((x, -y) for x, y in r2.items()))
                    if d:
                        rep.unresolved.append((self.word_text(w), NcExpr(self, d).to_text()))
        if self.spectral:
            tgens = [g for g in range(len(self.gens)) if self.is_t(g)]
            for lead, rule in self.rules.items():
                if len(lead) + 1 > max_degree:
                    continue
                if any(self._mu_dependent(c) for c in rule.tail.values()):
                    for t in tgens:
                        r1 = self.nf_word((t,) + lead)
                        items = []
                        for tw, c in rule.tail.items():
                            for c2, p2 in self.move((t,), c):
                                items.append((p2 + tw, c2))
                        r2 = self.reduce_terms(items)
                        rep.checked += 1
                        d = dict(r1)
                        _accumulate(d, ((x, -y) for x, y in r2.items()))
                        if d:
                            rep.unresolved.append((self.word_text((t,) + lead) + " (mu)",
                                                   NcExpr(self, d).to_text()))
                if any(self.is_t(g) for g in lead):
                    for a in range(1, self.n + 1):
                        mu = self.field.mu(a)
                        r1 = self.reduce_terms((w2, c2) for c2, w2 in self.move(lead, mu))
                        items = []
                        for tw, c in rule.tail.items():
                            for c2, w2 in self.move(tw, mu):
                                items.append((w2, c * c2))
                        r2 = self.reduce_terms(items)
                        rep.checked += 1
                        d = dict(r1)
                        _accumulate(d, ((x, -y) for x, y in r2.items()))
                        if d:
                            rep.unresolved.append((self.word_text(lead) + f"*mu{a}",
                                                   NcExpr(self, d).to_text()))
        if max_degree == 3:
            self._overlap = rep
        return rep

    def matrix(self, family: str) -> TensorOp:
        return generator_matrix(self, family)


def _row_reduce(rows: list, key: Callable) -> list:
    """Gauss-Jordan on relations given as {word: coeff}; returns (lead, tail, origin)."""
    words = set()
    for r, _ in rows:
        words.update(r)
    order = sorted(words, key=key, reverse=True)
    col = {w: k for k, w in enumerate(order)}
    work = [({col[w]: c for w, c in r.items()}, org) for r, org in rows]
    pivots = []
    for cidx in range(len(order)):
        piv = None
        for k in range(len(pivots), len(work)):
            if cidx in work[k][0]:
                piv = k
                break
        if piv is None:
            continue
        r = len(pivots)
        work[r], work[piv] = work[piv], work[r]
        prow, org = work[r]
        inv = 1 / prow[cidx]
        prow = {k: v * inv for k, v in prow.items()}
        work[r] = (prow, org)
        for k in range(len(work)):
            if k == r or cidx not in work[k][0]:
                continue
            row = work[k][0]
            f = row[cidx]
            for kk, v in prow.items():
                nv = row.get(kk, 0) - f * v
                if nv == 0:
                    row.pop(kk, None)
                else:
                    row[kk] = nv
        pivots.append(cidx)
    out = []
    for k, cidx in enumerate(pivots):
        row, org = work[k]
        tail = {order[kk]: -v for kk, v in row.items() if kk != cidx}
        out.append((order[cidx], tail, org))
    return out


def generator_matrix(alg: NcAlgebra, family: str) -> TensorOp:
    """The n x n matrix of generators of one family as a 1-leg operator."""
    n = alg.n
    ent = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            ent[(i - 1, j - 1)] = alg.gen(family, i, j)
    return TensorOp(n, 1, ent, alg.scalar(1))


def check_identity(lhs, rhs, alg: NcAlgebra) -> Verdict:
    """verified if lhs - rhs reduces to 0; otherwise refuted or inconclusive."""
    d = alg.normal_form(lhs - rhs) if isinstance(lhs - rhs, NcExpr) else lhs - rhs
    if d == 0:
        return Verdict("verified")
    rep = alg.overlap_check()
    status = "refuted" if rep.ok else "inconclusive"
    return Verdict(status, witness=d.to_text() if isinstance(d, NcExpr) else d,
                   detail="nonzero normal form")


def check_matrix_identity(lhs: TensorOp, rhs: TensorOp, alg: NcAlgebra) -> Verdict:
    """Entrywise check_identity for operators with NcExpr entries."""
    keys = sorted(set(lhs.entries) | set(rhs.entries))
    for key in keys:
        a = lhs.entries.get(key, alg.zero())
        b = rhs.entries.get(key, alg.zero())
        if not isinstance(a, NcExpr):
            a = alg.scalar(a)
        if not isinstance(b, NcExpr):
            b = alg.scalar(b)
        v = check_identity(a, b, alg)
        if not v:
            v.detail = f"entry {key}: {v.detail}"
            return v
    return Verdict("verified")
